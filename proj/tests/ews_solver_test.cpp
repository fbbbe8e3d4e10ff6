#include <random>

#include "doctest.h"
#include "ews/oracle.hpp"
#include "ews/solve.hpp"
#include "support.hpp"

using namespace ews;

namespace {

SolverConfig config(Algorithm a, std::uint64_t seed = 1) {
  SolverConfig c;
  c.algorithm = a;
  c.seed = seed;
  c.tt_log2_capacity = 16;
  return c;
}

/// Every 3x3 position reachable in at most two plies.
std::vector<HexState> hex3_shallow() {
  std::vector<HexState> out{HexState(3)};
  for (int a = 0; a < 9; ++a) {
    HexState s(3);
    s.play(Move(a));
    out.push_back(s);
    for (int b = 0; b < 9; ++b) {
      if (b == a) continue;
      s.play(Move(b));
      out.push_back(s);
      s.undo();
    }
  }
  return out;
}

}  // namespace

TEST_CASE("ews family agrees with the oracle on shallow 3x3 hex") {
  const auto positions = hex3_shallow();
  CHECK(positions.size() == 82);
  for (Algorithm a : {Algorithm::Ews, Algorithm::EwsWr, Algorithm::EwsPs}) {
    for (const auto& p : positions) {
      const SolveReport r = solve(p, config(a));
      CHECK(r.outcome == oracle_negamax(p));
    }
  }
}

TEST_CASE("ews agrees with the oracle on random 4x4 hex") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 12; ++i) {
    HexState s(4);
    test::random_walk(s, rng, 3 + static_cast<int>(rng() % 4));
    if (s.terminal_status()) continue;
    CHECK(solve(s, config(Algorithm::Ews, i + 1)).outcome == oracle_negamax(s));
  }
}

TEST_CASE("ews solves small go against the oracle") {
  // 2x3 takes the oracle half a minute; the acceptance suite covers it.
  for (auto [w, h] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    GoState s(w, h, Komi::from_points(0.5));
    const Outcome truth = oracle_negamax(s);
    for (Algorithm a : {Algorithm::Ews, Algorithm::EwsWr, Algorithm::EwsPs}) {
      const SolveReport r = solve(s, config(a));
      CHECK(r.outcome == truth);
      CHECK(r.tt_hits == 0);
      CHECK(r.tt_stores == 0);
    }
  }
}

TEST_CASE("empty 3x3 and 4x4 hex are first player wins") {
  for (int n : {1, 2, 3, 4}) {
    const SolveReport r = solve(HexState(n), config(Algorithm::Ews));
    CHECK(r.winner() == Player::First);
    CHECK(r.outcome == Outcome::Win);
  }
}

TEST_CASE("ews principal variation starts with a winning move") {
  const SolveReport r = solve(HexState(3), config(Algorithm::Ews));
  REQUIRE_FALSE(r.principal_variation.empty());
  HexState s(3);
  s.play(r.principal_variation.front());
  CHECK(oracle_negamax(s) == Outcome::Loss);
  // The line is legal and ends in a First win.
  HexState line(3);
  for (Move m : r.principal_variation) line.play(m);
  CHECK(line.winner() == Player::First);
}

TEST_CASE("solves are deterministic for a seed") {
  for (Algorithm a : {Algorithm::Ews, Algorithm::EwsWr, Algorithm::EwsPs}) {
    const SolveReport x = solve(HexState(4), config(a, 7));
    const SolveReport y = solve(HexState(4), config(a, 7));
    CHECK(x.outcome == y.outcome);
    CHECK(x.nodes == y.nodes);
    CHECK(x.rollouts == y.rollouts);
    CHECK(x.tt_hits == y.tt_hits);
    CHECK(x.principal_variation == y.principal_variation);
  }
}

TEST_CASE("min rule equals weighted sum with zero win rates") {
  std::mt19937_64 rng(55);
  int compared = 0;
  while (compared < 100) {
    HexState s(3);
    test::random_walk(s, rng, static_cast<int>(rng() % 3));
    if (s.terminal_status()) continue;
    SolverConfig min_rule = config(Algorithm::EwsWr, rng());
    SolverConfig zero_wr = min_rule;
    zero_wr.policy_override = VariantPolicy{WinRule::WeightedSum, OrderRule::ExpectedWork, true};
    const SolveReport a = solve(s, min_rule);
    const SolveReport b = solve(s, zero_wr);
    CHECK(a.outcome == b.outcome);
    CHECK(a.nodes == b.nodes);
    CHECK(a.rollouts == b.rollouts);
    ++compared;
  }
}

TEST_CASE("audit finds no residuals or order violations") {
  for (Algorithm a : {Algorithm::Ews, Algorithm::EwsWr, Algorithm::EwsPs}) {
    SolverConfig c = config(a);
    c.audit = true;
    const SolveReport r = solve(HexState(4), c);
    CHECK(r.solved());
    CHECK(r.audit.checks > 1000);
    CHECK(r.audit.residual_violations == 0);
    CHECK(r.audit.order_violations == 0);
    CHECK(r.audit.max_relative_residual <= 1e-9);
  }
  SolverConfig conj = config(Algorithm::Ews);
  conj.audit = true;
  conj.conjecture = Player::First;
  const SolveReport r = solve(HexState(3), conj);
  CHECK(r.winner() == Player::First);
  CHECK(r.audit.order_violations == 0);
}

TEST_CASE("ablations still solve") {
  SolverConfig c = config(Algorithm::Ews);
  c.transpositions = false;
  CHECK(solve(HexState(4), c).winner() == Player::First);
  c = config(Algorithm::Ews);
  c.symmetry = false;
  CHECK(solve(HexState(4), c).winner() == Player::First);
  c = config(Algorithm::Ews);
  c.conjecture = Player::Second;
  CHECK(solve(HexState(3), c).winner() == Player::First);
}

TEST_CASE("node limit aborts with unknown") {
  SolverConfig c = config(Algorithm::Ews);
  c.node_limit = 10;
  const SolveReport r = solve(HexState(4), c);
  CHECK(r.outcome == Outcome::Unknown);
  CHECK_FALSE(r.solved());
  CHECK(r.nodes == 10);
  CHECK(r.principal_variation.empty());
}

TEST_CASE("terminal roots are rejected") {
  HexState won(2);
  won.play(Move(0));
  won.play(Move(1));
  won.play(Move(2));
  REQUIRE(won.terminal_status().has_value());
  CHECK_THROWS_AS(solve(won, config(Algorithm::Ews)), ContractViolation);
}

TEST_CASE("rollout restores the state") {
  GoState s(3, 3, Komi::from_points(8.5));
  const GoState before = s;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const RolloutResult r = rollout(s, rng, 36);
    CHECK(r.length <= 36);
    CHECK(r.branching_sum >= r.length);
  }
  CHECK(s == before);
}

TEST_CASE("rollout cap adjudicates by area") {
  GoState s = GoState::from_stones(2, 2, Komi::from_points(0.5), 0b0001, 0, Player::Second);
  std::mt19937_64 rng(1);
  const RolloutResult r = rollout(s, rng, 0);
  CHECK(r.length == 0);
  CHECK(r.winner == Player::First);
}
