#pragma once

// Algorithm dispatch shared by the CLI, the bench runner and the tests.

#include <chrono>
#include <variant>

#include "ews/alphabeta.hpp"
#include "ews/config.hpp"
#include "ews/ews_solver.hpp"
#include "ews/oracle.hpp"
#include "ews/position.hpp"

namespace ews {

template <GameState G>
SolveReport solve(const G& state, SolverConfig config) {
  if constexpr (!Transposable<G>) config.transpositions = false;
  switch (config.algorithm) {
    case Algorithm::AlphaBeta:
      return AlphaBetaSolver<G>(config).solve(state);
    case Algorithm::Oracle: {
      const auto start = std::chrono::steady_clock::now();
      SolveReport r;
      r.config = config;
      r.root_to_move = state.to_move();
      r.outcome = oracle_negamax(state, &r.nodes);
      r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
    default:
      return EwsSolver<G>(config).solve(state);
  }
}

inline SolveReport solve(const AnyState& state, const SolverConfig& config) {
  return std::visit([&](const auto& s) { return solve(s, config); }, state);
}

template <GameState G>
SolveReport solve_ews(const G& state, SolverConfig config) {
  config.algorithm = Algorithm::Ews;
  return solve(state, config);
}

/// EW-win is the minimum child EW-loss and children are ordered by EW-loss.
template <GameState G>
SolveReport solve_ews_wr(const G& state, SolverConfig config) {
  config.algorithm = Algorithm::EwsWr;
  return solve(state, config);
}

/// Children ordered by UCT instead of Expected Work.
template <GameState G>
SolveReport solve_ews_ps(const G& state, SolverConfig config) {
  config.algorithm = Algorithm::EwsPs;
  return solve(state, config);
}

template <GameState G>
SolveReport solve_alphabeta(const G& state, SolverConfig config) {
  config.algorithm = Algorithm::AlphaBeta;
  return solve(state, config);
}

}  // namespace ews
