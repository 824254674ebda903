#pragma once

// Hypercube geometry: node addresses, neighbor relation and Hamming distance.
//
// Bit j of a node address is the coordinate along dimension j, so two nodes are
// neighbors in dimension j exactly when their addresses differ in bit j alone.

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace cuberoute {

inline constexpr int kMaxDimension = 30;

struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Set of dimension indices stored as a bit mask; iteration is ascending.
class DimensionSet {
 public:
  constexpr DimensionSet() = default;
  constexpr explicit DimensionSet(std::uint32_t mask) : mask_(mask) {}

  constexpr bool contains(int j) const { return (mask_ >> j) & 1U; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint32_t mask() const { return mask_; }

  constexpr void insert(int j) { mask_ |= 1U << j; }
  constexpr void erase(int j) { mask_ &= ~(1U << j); }

  /// Lowest member, or -1 when empty.
  constexpr int lowest() const { return mask_ == 0 ? -1 : std::countr_zero(mask_); }

  std::vector<int> to_vector() const;

  friend constexpr bool operator==(DimensionSet, DimensionSet) = default;
  friend constexpr DimensionSet operator&(DimensionSet a, DimensionSet b) {
    return DimensionSet(a.mask_ & b.mask_);
  }
  friend constexpr DimensionSet operator|(DimensionSet a, DimensionSet b) {
    return DimensionSet(a.mask_ | b.mask_);
  }

 private:
  std::uint32_t mask_ = 0;
};

class Hypercube {
 public:
  /// Throws std::invalid_argument unless 1 <= dimension <= kMaxDimension.
  explicit Hypercube(int dimension);

  int dimension() const { return dimension_; }
  std::uint32_t node_count() const { return std::uint32_t{1} << dimension_; }
  bool contains(NodeId x) const { return x.value < node_count(); }

  /// Throws std::out_of_range when x is not an address of this cube.
  void require_node(NodeId x) const;

  /// All n dimensions.
  DimensionSet all_dimensions() const { return DimensionSet(node_count() - 1U); }

  int hamming_distance(NodeId x, NodeId y) const;

  /// x with bit j flipped. Throws std::out_of_range for j outside [0, n).
  NodeId neighbor_in_dim(NodeId x, int j) const;

  /// Element j is the neighbor across dimension j.
  std::vector<NodeId> neighbors(NodeId x) const;

  /// Dimensions whose traversal moves c one hop closer to t.
  DimensionSet towards_destination(NodeId c, NodeId t) const;

  friend bool operator==(const Hypercube&, const Hypercube&) = default;

 private:
  int dimension_;
};

// Unchecked forms used on hot paths once inputs are validated.
constexpr int hamming(NodeId x, NodeId y) { return std::popcount(x.value ^ y.value); }
constexpr NodeId flip(NodeId x, int j) { return NodeId(x.value ^ (std::uint32_t{1} << j)); }

}  // namespace cuberoute
