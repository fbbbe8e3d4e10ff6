#pragma once

// Iterative-deepening boolean negamax. Values are Win, Loss, or Unknown (the
// depth frontier was reached). Enhancements: solved-position table (games
// that support one), previous-iteration best move first, two killer moves
// per ply, and (for Hex) a table of positions already left unproven at some
// depth so they are not re-searched to that depth again.

#include <array>
#include <chrono>
#include <unordered_map>
#include <vector>

#include "ews/config.hpp"
#include "ews/game.hpp"
#include "ews/ttable.hpp"

namespace ews {

template <GameState G>
class AlphaBetaSolver {
 public:
  explicit AlphaBetaSolver(SolverConfig config) : config_(std::move(config)) { config_.validate(); }

  SolveReport solve(G state) {
    if (state.terminal_status()) throw ContractViolation("ab: root position is terminal");
    start_ = std::chrono::steady_clock::now();
    nodes_ = 0;
    aborted_ = false;
    best_.clear();
    unproven_.assign(Transposable<G> ? std::size_t{1} << kUnprovenLog2 : 1, {});
    if constexpr (Transposable<G>) {
      table_.reset();
      if (config_.transpositions) table_.emplace(config_.tt_log2_capacity);
    }

    Outcome result = Outcome::Unknown;
    // Depth bound: Hex games end within `cells` plies; Go games are bounded
    // by superko, and deeper iterations stop at the node or time limit.
    const int max_depth = 64 * state.cells();
    for (int depth = 1; depth <= max_depth && result == Outcome::Unknown && !aborted_; ++depth) {
      killers_.assign(depth + 1, {Move::pass(), Move::pass()});
      result = search(state, depth, 0);
      if (aborted_) result = Outcome::Unknown;
    }

    SolveReport report;
    report.root_to_move = state.to_move();
    report.outcome = result;
    report.nodes = nodes_;
    report.config = config_;
    if constexpr (Transposable<G>) {
      if (table_) {
        report.tt_hits = table_->hits();
        report.tt_stores = table_->stores();
      }
    }
    if (result == Outcome::Win) {
      const auto it = best_.find(state.position_hash());
      if (it != best_.end()) report.principal_variation.push_back(it->second);
    }
    report.elapsed_s = seconds();
    return report;
  }

 private:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  Outcome search(G& state, int depth, int ply) {
    ++nodes_;
    if (nodes_ >= config_.node_limit || ((nodes_ & 1023) == 0 && seconds() > config_.time_limit_s)) {
      aborted_ = true;
      return Outcome::Unknown;
    }
    if constexpr (Transposable<G>) {
      if (table_)
        if (const auto hit = table_->probe(state)) return hit->outcome;
    }
    if (depth == 0) return Outcome::Unknown;
    // Go outcomes depend on the history (superko), which the hash omits.
    constexpr bool kUseUnproven = Transposable<G>;
    const std::uint64_t key = kUseUnproven ? state.canonical_hash() : 0;
    Unproven& slot = unproven_[key & ((std::size_t{1} << kUnprovenLog2) - 1)];
    if (kUseUnproven && slot.key == key && slot.depth >= depth) return Outcome::Unknown;

    MoveList moves;
    state.legal_moves(moves);
    if (config_.symmetry) state.symmetry_reduce_siblings(moves);
    order(moves, state.position_hash(), ply);

    bool all_lost = true;
    std::optional<Move> first_open;
    for (Move m : moves) {
      state.play(m);
      const auto terminal = state.terminal_status();
      const Outcome child = terminal ? *terminal : search(state, depth - 1, ply + 1);
      state.undo();
      if (aborted_) return Outcome::Unknown;

      if (child == Outcome::Loss) {
        best_[state.position_hash()] = m;
        remember_killer(m, ply);
        store(state, Outcome::Win, m);
        return Outcome::Win;
      }
      if (child == Outcome::Unknown) {
        all_lost = false;
        if (!first_open) first_open = m;
      }
    }
    if (all_lost) {
      store(state, Outcome::Loss, Move::pass());
      return Outcome::Loss;
    }
    best_[state.position_hash()] = *first_open;
    if (kUseUnproven) slot = {key, depth};
    return Outcome::Unknown;
  }

  /// Previous best move, then killers, then base order.
  void order(MoveList& moves, std::uint64_t hash, int ply) const {
    int front = 0;
    auto promote = [&](Move m) {
      for (int i = front; i < moves.size(); ++i)
        if (moves[i] == m) {
          for (int j = i; j > front; --j) moves[j] = moves[j - 1];
          moves[front++] = m;
          return;
        }
    };
    if (const auto it = best_.find(hash); it != best_.end()) promote(it->second);
    if (ply < static_cast<int>(killers_.size()))
      for (Move k : killers_[ply])
        if (!k.is_pass()) promote(k);
  }

  void remember_killer(Move m, int ply) {
    if (m.is_pass() || ply >= static_cast<int>(killers_.size())) return;
    auto& slot = killers_[ply];
    if (slot[0] == m) return;
    slot[1] = slot[0];
    slot[0] = m;
  }

  void store(const G& state, Outcome outcome, Move m) {
    if constexpr (Transposable<G>) {
      if (table_) table_->store(state, outcome, m);
    }
  }

  // A stale or colliding entry can only postpone a proof to a deeper
  // iteration, never change an outcome.
  struct Unproven {
    std::uint64_t key = 0;
    int depth = 0;
  };
  static constexpr int kUnprovenLog2 = 20;

  SolverConfig config_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::unordered_map<std::uint64_t, Move> best_;
  std::vector<std::array<Move, 2>> killers_;
  std::vector<Unproven> unproven_;
  std::optional<TableFor_t<G>> table_;
};

}  // namespace ews
