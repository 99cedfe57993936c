#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sovplan/topology.hpp"

namespace sovplan {

using ManufacturerId = std::uint32_t;

/// Upper limit on |M|; combos are bitmasks and rewards share the
/// denominator lcm(1..|M|).
inline constexpr std::uint32_t kMaxManufacturers = 16;

/// Set of manufacturers present on a path, as a bitmask (bit m = x_m).
class Combo {
 public:
  constexpr Combo() = default;
  constexpr explicit Combo(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr std::uint32_t size() const { return static_cast<std::uint32_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(ManufacturerId m) const { return (bits_ >> m) & 1u; }
  constexpr void insert(ManufacturerId m) { bits_ |= (1u << m); }
  constexpr bool is_subset_of(Combo other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<ManufacturerId> members() const;
  /// "{0,2}"
  std::string to_string() const;
  /// Bit word x_0 x_1 ... x_{M-1}, e.g. "011" for {1,2} with M = 3.
  std::string to_word(std::uint32_t num_manufacturers) const;

  friend constexpr bool operator==(Combo, Combo) = default;
  friend constexpr auto operator<=>(Combo, Combo) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Total map node -> manufacturer in [0, |M|).
class Assignment {
 public:
  Assignment() = default;
  /// Throws InputError if |M| is outside [1, kMaxManufacturers] or any
  /// value is out of range.
  Assignment(std::vector<ManufacturerId> by_node, std::uint32_t num_manufacturers);

  static Assignment uniform(std::size_t num_nodes, std::uint32_t num_manufacturers, ManufacturerId value = 0);

  std::size_t num_nodes() const { return by_node_.size(); }
  std::uint32_t num_manufacturers() const { return num_manufacturers_; }
  ManufacturerId operator[](NodeId node) const { return by_node_[node]; }
  ManufacturerId at(NodeId node) const;
  std::span<const ManufacturerId> values() const { return by_node_; }

  void set(NodeId node, ManufacturerId m);

  /// Applies `perm` to every label: node n gets perm[a[n]].
  Assignment relabeled(std::span<const ManufacturerId> perm) const;
  /// Nodes grouped by manufacturer, ascending ids within each class.
  std::vector<std::vector<NodeId>> classes() const;
  Combo used() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  /// Lexicographic by node values.
  friend std::strong_ordering operator<=>(const Assignment& a, const Assignment& b) {
    return a.by_node_ <=> b.by_node_;
  }

 private:
  std::vector<ManufacturerId> by_node_;
  std::uint32_t num_manufacturers_ = 1;
};

}  // namespace sovplan
