#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "grassland/instance.hpp"
#include "grassland/random.hpp"
#include "grassland/route.hpp"

namespace grassland {

// Nearest-neighbour tour from the base; ties go to the smaller id.
Route greedy_initial_route(const Instance& instance);

// Identity order 1..N.
Route identity_route(std::size_t n);

// Closed tour length including both base legs.
double tour_length(const Instance& instance, const Route& route);

// Move operators. All positions are 0-based indices into route.order and
// never address the implicit base endpoints. Each throws IndexError when
// its indices are out of range.

// Reverse the segment [i, j]; requires 0 <= i < j < N.
Route two_opt(const Route& route, std::size_t i, std::size_t j);

// Remove the segment of length seg_len (1 or 2) starting at seg_start and
// reinsert it so that it starts at insert_pos in the resulting route.
// insert_pos ranges over [0, N - seg_len]; insert_pos == seg_start is the
// identity.
Route or_opt(const Route& route, std::size_t seg_start, std::size_t seg_len, std::size_t insert_pos);

// Exchange the entries at i and j; i == j is the identity.
Route swap(const Route& route, std::size_t i, std::size_t j);

// Reverse the segment [i, j]; requires 0 <= i < j < N. Same algebra as
// two_opt but drawn as its own neighbourhood stream.
Route inversion(const Route& route, std::size_t i, std::size_t j);

enum class MoveKind { two_opt, or_opt, swap, inversion };

inline constexpr std::array<MoveKind, 4> kAllMoves = {MoveKind::two_opt, MoveKind::or_opt, MoveKind::swap,
                                                      MoveKind::inversion};

std::string_view to_string(MoveKind kind);

// Number of candidates drawn per operator for a neighbourhood of the given
// size: an equal split with the remainder going to 2-opt.
std::array<int, 4> neighborhood_split(int size);

// Apply one operator with uniformly random legal indices. Routes too short
// for the operator come back unchanged.
Route random_move(const Route& route, MoveKind kind, Rng& rng);

// Draw `size` candidate routes: the 2-opt block first, then or-opt, swap and
// inversion, each with independent random indices.
std::vector<Route> sample_neighborhood(const Route& route, int size, Rng& rng);

// Every route reachable by one application of any operator (duplicates
// included, the input itself excluded).
std::vector<Route> full_neighborhood(const Route& route);

// Distance-only route search used by the noncooperative pipelines: sampled
// best-improvement generations followed by a deterministic full-neighbourhood
// descent to a local optimum in tour length.
Route shortest_route_search(const Instance& instance, int neighborhood_size, int generations, Rng& rng);

}  // namespace grassland
