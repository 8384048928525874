#pragma once

#include <cstddef>
#include <vector>

namespace grassland {

// Visiting order of the restored areas by id. The base station is implicit
// at both ends of the tour.
struct Route {
  std::vector<int> order;

  std::size_t size() const { return order.size(); }
  bool operator==(const Route&) const = default;
};

// True when order is a permutation of {1..n}.
bool is_permutation_of_ids(const Route& route, std::size_t n);

}  // namespace grassland
