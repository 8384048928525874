#include "grassland/routing.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "grassland/errors.hpp"

namespace grassland {

Route greedy_initial_route(const Instance& instance) {
  const std::size_t n = instance.size();
  std::vector<bool> visited(n, false);
  Route route;
  route.order.reserve(n);
  Point here = instance.base;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (visited[i]) continue;
      const double d = distance(here, instance.areas[i].position());
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    visited[best] = true;
    route.order.push_back(static_cast<int>(best) + 1);
    here = instance.areas[best].position();
  }
  return route;
}

Route identity_route(std::size_t n) {
  Route r;
  r.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.order[i] = static_cast<int>(i) + 1;
  return r;
}

double tour_length(const Instance& instance, const Route& route) {
  double total = 0.0;
  Point prev = instance.base;
  for (int id : route.order) {
    const Point here = instance.area(id).position();
    total += distance(prev, here);
    prev = here;
  }
  return total + distance(prev, instance.base);
}

namespace {

void check_segment(const Route& route, std::size_t i, std::size_t j, const char* op) {
  if (!(i < j && j < route.size())) {
    throw IndexError(std::string(op) + ": requires 0 <= i < j < N, got i=" + std::to_string(i) +
                     " j=" + std::to_string(j) + " N=" + std::to_string(route.size()));
  }
}

Route reversed_segment(const Route& route, std::size_t i, std::size_t j) {
  Route out = route;
  std::reverse(out.order.begin() + static_cast<std::ptrdiff_t>(i), out.order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  return out;
}

// Two distinct positions i < j drawn uniformly.
std::pair<std::size_t, std::size_t> random_pair(std::size_t n, Rng& rng) {
  std::size_t i = rng.uniform_index(n);
  std::size_t j = rng.uniform_index(n - 1);
  if (j >= i) ++j;
  return {std::min(i, j), std::max(i, j)};
}

}  // namespace

Route two_opt(const Route& route, std::size_t i, std::size_t j) {
  check_segment(route, i, j, "two_opt");
  return reversed_segment(route, i, j);
}

Route inversion(const Route& route, std::size_t i, std::size_t j) {
  check_segment(route, i, j, "inversion");
  return reversed_segment(route, i, j);
}

Route swap(const Route& route, std::size_t i, std::size_t j) {
  if (i >= route.size() || j >= route.size()) {
    throw IndexError("swap: index out of range for route of size " + std::to_string(route.size()));
  }
  Route out = route;
  std::swap(out.order[i], out.order[j]);
  return out;
}

Route or_opt(const Route& route, std::size_t seg_start, std::size_t seg_len, std::size_t insert_pos) {
  const std::size_t n = route.size();
  if (seg_len != 1 && seg_len != 2) throw IndexError("or_opt: segment length must be 1 or 2");
  if (seg_start + seg_len > n) throw IndexError("or_opt: segment exceeds the route");
  if (insert_pos > n - seg_len) throw IndexError("or_opt: insert position out of range");

  std::vector<int> segment(route.order.begin() + static_cast<std::ptrdiff_t>(seg_start),
                           route.order.begin() + static_cast<std::ptrdiff_t>(seg_start + seg_len));
  std::vector<int> rest;
  rest.reserve(n - seg_len);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < seg_start || k >= seg_start + seg_len) rest.push_back(route.order[k]);
  }
  Route out;
  out.order.reserve(n);
  out.order.insert(out.order.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(insert_pos));
  out.order.insert(out.order.end(), segment.begin(), segment.end());
  out.order.insert(out.order.end(), rest.begin() + static_cast<std::ptrdiff_t>(insert_pos), rest.end());
  return out;
}

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::two_opt: return "2-opt";
    case MoveKind::or_opt: return "or-opt";
    case MoveKind::swap: return "swap";
    case MoveKind::inversion: return "inversion";
  }
  return "?";
}

std::array<int, 4> neighborhood_split(int size) {
  if (size < 1) throw ParameterError("neighborhood size must be at least 1");
  const int each = size / 4;
  return {each + size % 4, each, each, each};
}

Route random_move(const Route& route, MoveKind kind, Rng& rng) {
  const std::size_t n = route.size();
  if (n < 2) return route;
  switch (kind) {
    case MoveKind::two_opt: {
      auto [i, j] = random_pair(n, rng);
      return two_opt(route, i, j);
    }
    case MoveKind::inversion: {
      auto [i, j] = random_pair(n, rng);
      return inversion(route, i, j);
    }
    case MoveKind::swap: {
      auto [i, j] = random_pair(n, rng);
      return swap(route, i, j);
    }
    case MoveKind::or_opt: {
      const std::size_t len = (n >= 3 && rng.uniform_index(2) == 1) ? 2 : 1;
      const std::size_t start = rng.uniform_index(n - len + 1);
      // Insert positions other than the origin: n - len of them.
      std::size_t pos = rng.uniform_index(n - len);
      if (pos >= start) ++pos;
      return or_opt(route, start, len, pos);
    }
  }
  return route;
}

std::vector<Route> sample_neighborhood(const Route& route, int size, Rng& rng) {
  const auto split = neighborhood_split(size);
  std::vector<Route> out;
  out.reserve(static_cast<std::size_t>(size));
  for (std::size_t op = 0; op < kAllMoves.size(); ++op) {
    for (int c = 0; c < split[op]; ++c) out.push_back(random_move(route, kAllMoves[op], rng));
  }
  return out;
}

std::vector<Route> full_neighborhood(const Route& route) {
  const std::size_t n = route.size();
  std::vector<Route> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back(two_opt(route, i, j));
      out.push_back(swap(route, i, j));
    }
  }
  for (std::size_t len = 1; len <= 2 && len < n; ++len) {
    for (std::size_t s = 0; s + len <= n; ++s) {
      for (std::size_t p = 0; p + len <= n; ++p) {
        if (p != s) out.push_back(or_opt(route, s, len, p));
      }
    }
  }
  return out;
}

Route shortest_route_search(const Instance& instance, int neighborhood_size, int generations, Rng& rng) {
  Route current = greedy_initial_route(instance);
  double current_len = tour_length(instance, current);
  for (int gen = 0; gen < generations; ++gen) {
    const auto candidates = sample_neighborhood(current, neighborhood_size, rng);
    const Route* best = nullptr;
    double best_len = current_len;
    for (const auto& c : candidates) {
      const double len = tour_length(instance, c);
      if (len < best_len - 1e-9 * current_len) {
        best_len = len;
        best = &c;
      }
    }
    if (best != nullptr) {
      current = *best;
      current_len = best_len;
    }
  }
  // Converge: best-improvement over the complete neighbourhood.
  for (;;) {
    const auto candidates = full_neighborhood(current);
    const Route* best = nullptr;
    double best_len = current_len;
    for (const auto& c : candidates) {
      const double len = tour_length(instance, c);
      // Ignore rounding-level gains such as a reversed tour.
      if (len < best_len - 1e-9 * current_len) {
        best_len = len;
        best = &c;
      }
    }
    if (best == nullptr) break;
    current = *best;
    current_len = best_len;
  }
  return current;
}

}  // namespace grassland
