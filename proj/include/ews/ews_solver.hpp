#pragma once

// Expected Work Search. Each iteration descends the first-ordered child of
// every node to an unexpanded leaf, expands it (one rollout per new child),
// and on the way back removes solved children, re-sorts, and recomputes win
// rates and Expected Work.

#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>

#include "ews/config.hpp"
#include "ews/expected_work.hpp"
#include "ews/game.hpp"
#include "ews/ttable.hpp"

namespace ews {

/// Random playout from `state`, which is restored before returning. After
/// `cap` moves the game is adjudicated as it stands.
template <GameState G, class Rng>
RolloutResult rollout(G& state, Rng& rng, int cap) {
  if constexpr (requires { state.random_playout(rng); }) {
    if (cap >= state.branching_factor()) return state.random_playout(rng);
  }
  RolloutResult r;
  MoveList moves;
  int played = 0;
  for (;;) {
    if (const auto t = state.terminal_status()) {
      r.winner = *winner_of(*t, state.to_move());
      break;
    }
    if (played >= cap) {
      r.winner = state.adjudicate();
      break;
    }
    r.branching_sum += state.branching_factor();
    state.rollout_candidates(moves);
    state.play(moves[pick_index(rng, moves.size())]);
    ++played;
  }
  r.length = played;
  while (played-- > 0) state.undo();
  return r;
}

template <GameState G>
class EwsSolver {
 public:
  explicit EwsSolver(SolverConfig config) : config_(std::move(config)), policy_(config_.policy()) {
    config_.validate();
  }

  SolveReport solve(G state) {
    if (state.terminal_status()) throw ContractViolation("ews: root position is terminal");
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    rng_.seed(config_.seed);
    expansions_ = rollouts_ = 0;
    audit_ = {};
    cap_ = config_.rollout_cap > 0 ? config_.rollout_cap : 4 * state.cells();
    if constexpr (Transposable<G>) {
      table_.reset();
      if (config_.transpositions) table_.emplace(config_.tt_log2_capacity);
    }

    SearchNode root;
    tally_ = {};
    Result r = expand(root, state);
    while (!r.solved) {
      if (expansions_ >= config_.node_limit) break;
      if ((expansions_ & 1023) == 0 && elapsed() > config_.time_limit_s) break;
      tally_ = {};
      r = select_backpropagate(root, state);
    }

    SolveReport report;
    report.root_to_move = state.to_move();
    report.outcome = !r.solved ? Outcome::Unknown : r.winning ? Outcome::Win : Outcome::Loss;
    report.nodes = expansions_;
    report.rollouts = rollouts_;
    report.config = config_;
    report.audit = audit_;
    if constexpr (Transposable<G>) {
      if (table_) {
        report.tt_hits = table_->hits();
        report.tt_stores = table_->stores();
      }
    }
    report.principal_variation = principal_variation(state, r);
    report.elapsed_s = elapsed();
    return report;
  }

 private:
  struct Result {
    bool solved = false;
    bool winning = false;
    Move best;
  };

  /// Rollout winners collected during one iteration.
  struct Tally {
    std::uint32_t rollouts = 0;
    std::uint32_t first_wins = 0;

    void credit(SearchNode& node, Player to_move) const {
      node.visits += rollouts;
      node.wins += to_move == Player::First ? first_wins : rollouts - first_wins;
    }
  };

  Result select_backpropagate(SearchNode& node, G& state) {
    SearchNode& child = node.children.front();
    state.play(child.move);
    Result r;
    if (const auto known = child.expanded ? probe(state) : std::nullopt)
      r = {true, *known == Outcome::Win, Move::pass()};
    else
      r = child.expanded ? select_backpropagate(child, state) : expand(child, state);
    state.undo();

    if (r.solved && r.winning) {
      node.children.erase(node.children.begin());
      if (node.children.empty()) {
        store(state, Outcome::Loss, Move::pass());
        return {true, false, Move::pass()};
      }
    } else if (r.solved) {
      const Move m = child.move;
      store(state, Outcome::Win, m);
      return {true, true, m};
    }
    update(node, state.to_move());
    return {};
  }

  Result expand(SearchNode& node, G& state) {
    node.expanded = true;
    ++expansions_;

    MoveList moves;
    state.legal_moves(moves);
    if (config_.symmetry) state.symmetry_reduce_siblings(moves);

    // Terminal moves and stored successors first: either can solve the node
    // before any rollout is spent.
    std::array<bool, kMaxCells + 1> skip{};
    int fresh = 0;
    for (int i = 0; i < moves.size(); ++i) {
      state.play(moves[i]);
      std::optional<Outcome> known = state.terminal_status();
      if (!known) known = probe(state);
      state.undo();
      if (known == Outcome::Loss) {
        store(state, Outcome::Win, moves[i]);
        return {true, true, moves[i]};
      }
      skip[i] = known.has_value();
      if (!skip[i]) ++fresh;
    }

    node.children.reserve(fresh);
    for (int i = 0; i < moves.size(); ++i) {
      if (skip[i]) continue;
      state.play(moves[i]);
      SearchNode child;
      child.move = moves[i];
      const RolloutResult sim = rollout(state, rng_, cap_);
      ++rollouts_;
      child.ew_loss = child.ew_win = sim.branching_sum;
      child.visits += 1;
      if (sim.winner == state.to_move()) child.wins += 1;
      tally_.rollouts += 1;
      if (sim.winner == Player::First) tally_.first_wins += 1;
      state.undo();
      node.children.push_back(std::move(child));
    }

    if (node.children.empty()) {
      store(state, Outcome::Loss, Move::pass());
      return {true, false, Move::pass()};
    }
    update(node, state.to_move());
    return {};
  }

  /// Re-sort children, refresh the win-rate counters, recompute both EWs.
  void update(SearchNode& node, Player to_move) {
    reorder(node.children, node.visits, policy_);
    tally_.credit(node, to_move);
    const std::span<const SearchNode> kids(node.children);
    if (config_.conjecture) {
      const double ew = to_move == *config_.conjecture ? ew_win(kids, policy_) : ews::ew_loss(kids);
      node.ew_loss = node.ew_win = ew;
    } else {
      node.ew_loss = ews::ew_loss(kids);
      node.ew_win = ew_win(kids, policy_);
    }
    if (config_.audit) audit(node);
  }

  void audit(const SearchNode& node) {
    ++audit_.checks;
    const auto& kids = node.children;
    if (!config_.conjecture) {
      long double loss = 0;
      long double win = policy_.win_rule == WinRule::Minimum ? kids.front().ew_loss : 0;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        loss += kids[i].ew_win;
        if (policy_.win_rule == WinRule::Minimum) {
          win = std::min<long double>(win, kids[i].ew_loss);
        } else {
          long double reach = 1;
          for (std::size_t j = 0; j < i; ++j)
            reach *= policy_.zero_win_rates ? 0.0L : static_cast<long double>(kids[j].wins) / kids[j].visits;
          win += kids[i].ew_loss * reach;
        }
      }
      auto residual = [](double stored, long double exact) {
        return static_cast<double>(std::fabs(stored - exact) / std::max<long double>(1, std::fabs(stored)));
      };
      const double worst = std::max(residual(node.ew_loss, loss), residual(node.ew_win, win));
      audit_.max_relative_residual = std::max(audit_.max_relative_residual, worst);
      if (worst > 1e-9) ++audit_.residual_violations;
    }
    for (std::size_t i = 1; i < kids.size(); ++i) {
      const bool ok = policy_.order_rule == OrderRule::Uct
                          ? uct_value(kids[i - 1].win_rate(), kids[i - 1].visits, node.visits - tally_.rollouts, policy_.uct_c) >=
                                uct_value(kids[i].win_rate(), kids[i].visits, node.visits - tally_.rollouts, policy_.uct_c)
                          : order_key(kids[i - 1], policy_.zero_win_rates) <= order_key(kids[i], policy_.zero_win_rates);
      if (!ok) {
        ++audit_.order_violations;
        break;
      }
    }
  }

  void store(const G& state, Outcome outcome, Move winning_move) {
    if constexpr (Transposable<G>) {
      if (table_) table_->store(state, outcome, winning_move);
    }
  }

  std::optional<Outcome> probe(const G& state) {
    if constexpr (Transposable<G>) {
      if (table_)
        if (const auto hit = table_->probe(state)) return hit->outcome;
    }
    return std::nullopt;
  }

  std::vector<Move> principal_variation(const G& root, const Result& r) {
    std::vector<Move> pv;
    if (!r.solved) return pv;
    if (r.winning) pv.push_back(r.best);
    if constexpr (Transposable<G>) {
      if (!table_) return pv;
      G s = root;
      if (!pv.empty()) s.play(pv.front());
      MoveList moves;
      while (!s.terminal_status() && static_cast<int>(pv.size()) < s.cells()) {
        std::optional<Move> next;
        if (const auto hit = table_->probe(s); hit && hit->winning_move) {
          next = hit->winning_move;
        } else {
          // Losing side: any reply whose successor is a stored win.
          s.legal_moves(moves);
          for (Move m : moves) {
            s.play(m);
            const auto reply = table_->probe(s);
            const bool terminal = s.terminal_status().has_value();
            s.undo();
            if (terminal || (reply && reply->outcome == Outcome::Win)) {
              next = m;
              break;
            }
          }
        }
        if (!next) break;
        pv.push_back(*next);
        s.play(*next);
      }
    }
    return pv;
  }

  SolverConfig config_;
  VariantPolicy policy_;
  std::mt19937_64 rng_;
  int cap_ = 0;
  std::uint64_t expansions_ = 0;
  std::uint64_t rollouts_ = 0;
  Tally tally_;
  BackpropAudit audit_;
  std::optional<TableFor_t<G>> table_;
};

}  // namespace ews
