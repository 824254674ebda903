#include "cuberoute/topology.hpp"

#include <stdexcept>
#include <string>

namespace cuberoute {

std::vector<int> DimensionSet::to_vector() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

Hypercube::Hypercube(int dimension) : dimension_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw std::invalid_argument("hypercube dimension must be in [1, " +
                                std::to_string(kMaxDimension) + "], got " +
                                std::to_string(dimension));
  }
}

void Hypercube::require_node(NodeId x) const {
  if (!contains(x)) {
    throw std::out_of_range("node " + std::to_string(x.value) + " is outside a " +
                            std::to_string(dimension_) + "-cube");
  }
}

int Hypercube::hamming_distance(NodeId x, NodeId y) const {
  require_node(x);
  require_node(y);
  return hamming(x, y);
}

NodeId Hypercube::neighbor_in_dim(NodeId x, int j) const {
  require_node(x);
  if (j < 0 || j >= dimension_) {
    throw std::out_of_range("dimension index " + std::to_string(j) + " outside [0, " +
                            std::to_string(dimension_) + ")");
  }
  return flip(x, j);
}

std::vector<NodeId> Hypercube::neighbors(NodeId x) const {
  require_node(x);
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(dimension_));
  for (int j = 0; j < dimension_; ++j) out.push_back(flip(x, j));
  return out;
}

DimensionSet Hypercube::towards_destination(NodeId c, NodeId t) const {
  require_node(c);
  require_node(t);
  return DimensionSet(c.value ^ t.value);
}

}  // namespace cuberoute
