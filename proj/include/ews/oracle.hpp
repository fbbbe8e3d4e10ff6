#pragma once

// Exhaustive negamax used as ground truth: no table, no ordering, no
// heuristics. Refuses positions too large to enumerate. Go lines can run
// long under superko, so Go is searched with increasing depth bounds until
// the bounded result is exact.

#include <stdexcept>
#include <type_traits>

#include "ews/game.hpp"
#include "ews/go.hpp"
#include "ews/hex.hpp"

namespace ews {

class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hex: at most 14 empty cells (3x3 from anywhere, 4x4 after two plies).
inline bool oracle_permits(const HexState& s) { return std::popcount(s.empty_cells()) <= 14; }
/// Go: boards of at most 6 points (2x2, 2x3).
inline bool oracle_permits(const GoState& s) { return s.cells() <= 6; }

namespace detail {
template <GameState G>
Outcome negamax(G& state, std::uint64_t& nodes) {
  ++nodes;
  if (const auto t = state.terminal_status()) return *t;
  MoveList moves;
  state.legal_moves(moves);
  for (Move m : moves) {
    state.play(m);
    const Outcome child = negamax(state, nodes);
    state.undo();
    if (child == Outcome::Loss) return Outcome::Win;
  }
  return Outcome::Loss;
}
/// Depth-bounded negamax; Unknown when the bound cuts a line short.
template <GameState G>
Outcome bounded_negamax(G& state, int depth, std::uint64_t& nodes) {
  ++nodes;
  if (const auto t = state.terminal_status()) return *t;
  if (depth == 0) return Outcome::Unknown;
  MoveList moves;
  state.legal_moves(moves);
  bool all_lost = true;
  for (Move m : moves) {
    state.play(m);
    const Outcome child = bounded_negamax(state, depth - 1, nodes);
    state.undo();
    if (child == Outcome::Loss) return Outcome::Win;
    if (child == Outcome::Unknown) all_lost = false;
  }
  return all_lost ? Outcome::Loss : Outcome::Unknown;
}

}  // namespace detail

/// Exact outcome for the player to move.
template <GameState G>
Outcome oracle_negamax(G state, std::uint64_t* nodes = nullptr) {
  if (!oracle_permits(state)) throw OracleRefused("oracle: position too large for exhaustive search");
  std::uint64_t count = 0;
  Outcome o;
  if constexpr (std::is_same_v<G, GoState>) {
    o = Outcome::Unknown;
    for (int depth = 1; o == Outcome::Unknown; ++depth) o = detail::bounded_negamax(state, depth, count);
  } else {
    o = detail::negamax(state, count);
  }
  if (nodes) *nodes = count;
  return o;
}

}  // namespace ews
