#include "sovplan/assignment.hpp"

#include "sovplan/error.hpp"

namespace sovplan {

std::vector<ManufacturerId> Combo::members() const {
  std::vector<ManufacturerId> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<ManufacturerId>(std::countr_zero(b)));
  return out;
}

std::string Combo::to_string() const {
  std::string s = "{";
  bool first = true;
  for (ManufacturerId m : members()) {
    if (!first) s += ',';
    s += std::to_string(m);
    first = false;
  }
  return s + "}";
}

std::string Combo::to_word(std::uint32_t num_manufacturers) const {
  std::string s;
  for (ManufacturerId m = 0; m < num_manufacturers; ++m) s += contains(m) ? '1' : '0';
  return s;
}

Assignment::Assignment(std::vector<ManufacturerId> by_node, std::uint32_t num_manufacturers)
    : by_node_(std::move(by_node)), num_manufacturers_(num_manufacturers) {
  if (num_manufacturers_ < 1 || num_manufacturers_ > kMaxManufacturers) {
    throw InputError("assignment: number of manufacturers must be in [1," + std::to_string(kMaxManufacturers) +
                     "], got " + std::to_string(num_manufacturers_));
  }
  for (std::size_t n = 0; n < by_node_.size(); ++n) {
    if (by_node_[n] >= num_manufacturers_) {
      throw InputError("assignment: node " + std::to_string(n) + " has manufacturer " + std::to_string(by_node_[n]) +
                       " >= " + std::to_string(num_manufacturers_));
    }
  }
}

Assignment Assignment::uniform(std::size_t num_nodes, std::uint32_t num_manufacturers, ManufacturerId value) {
  return Assignment(std::vector<ManufacturerId>(num_nodes, value), num_manufacturers);
}

ManufacturerId Assignment::at(NodeId node) const {
  if (node >= by_node_.size()) throw InputError("assignment: node " + std::to_string(node) + " is not assigned");
  return by_node_[node];
}

void Assignment::set(NodeId node, ManufacturerId m) {
  if (node >= by_node_.size()) throw InputError("assignment: node " + std::to_string(node) + " out of range");
  if (m >= num_manufacturers_) throw InputError("assignment: manufacturer " + std::to_string(m) + " out of range");
  by_node_[node] = m;
}

Assignment Assignment::relabeled(std::span<const ManufacturerId> perm) const {
  if (perm.size() != num_manufacturers_) throw InputError("assignment: permutation size mismatch");
  std::vector<ManufacturerId> out(by_node_.size());
  for (std::size_t n = 0; n < by_node_.size(); ++n) out[n] = perm[by_node_[n]];
  return Assignment(std::move(out), num_manufacturers_);
}

std::vector<std::vector<NodeId>> Assignment::classes() const {
  std::vector<std::vector<NodeId>> out(num_manufacturers_);
  for (NodeId n = 0; n < by_node_.size(); ++n) out[by_node_[n]].push_back(n);
  return out;
}

Combo Assignment::used() const {
  Combo c;
  for (ManufacturerId m : by_node_) c.insert(m);
  return c;
}

}  // namespace sovplan
