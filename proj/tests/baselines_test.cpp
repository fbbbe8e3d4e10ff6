#include <random>

#include "doctest.h"
#include "ews/oracle.hpp"
#include "ews/solve.hpp"
#include "support.hpp"

using namespace ews;

namespace {

SolverConfig ab() {
  SolverConfig c;
  c.algorithm = Algorithm::AlphaBeta;
  c.tt_log2_capacity = 16;
  return c;
}

}  // namespace

TEST_CASE("oracle on tiny boards") {
  CHECK(oracle_negamax(HexState(1)) == Outcome::Win);
  CHECK(oracle_negamax(HexState(2)) == Outcome::Win);
  CHECK(oracle_negamax(HexState(3)) == Outcome::Win);
  // 1x1 Go: Black cannot place (suicide), so both pass; White wins on komi.
  CHECK(oracle_negamax(GoState(1, 1, Komi::from_points(0.5))) == Outcome::Loss);
  CHECK(oracle_negamax(GoState(1, 1, Komi::from_points(-0.5))) == Outcome::Win);
  std::uint64_t nodes = 0;
  oracle_negamax(HexState(2), &nodes);
  CHECK(nodes > 1);
}

TEST_CASE("oracle refuses large searches") {
  CHECK_THROWS_AS(oracle_negamax(HexState(4)), OracleRefused);
  CHECK_THROWS_AS(oracle_negamax(GoState(3, 3, Komi::from_points(8.5))), OracleRefused);
  HexState s(4);
  s.play(Move(0));
  s.play(Move(1));
  CHECK(oracle_permits(s));
}

TEST_CASE("alpha-beta agrees with the oracle") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    HexState s(i < 30 ? 3 : 4);
    test::random_walk(s, rng, (i < 30 ? 0 : 2) + static_cast<int>(rng() % 4));
    if (s.terminal_status()) continue;
    CHECK(solve(s, ab()).outcome == oracle_negamax(s));
  }
  for (auto [w, h] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    GoState g(w, h, Komi::from_points(0.5));
    CHECK(solve(g, ab()).outcome == oracle_negamax(g));
  }
}

TEST_CASE("alpha-beta without a table still solves") {
  SolverConfig c = ab();
  c.transpositions = false;
  c.symmetry = false;
  CHECK(solve(HexState(3), c).winner() == Player::First);
}

TEST_CASE("alpha-beta reports a winning first move") {
  const SolveReport r = solve(HexState(3), ab());
  REQUIRE(r.principal_variation.size() == 1);
  HexState s(3);
  s.play(r.principal_variation.front());
  CHECK(oracle_negamax(s) == Outcome::Loss);
}

TEST_CASE("alpha-beta stops at the node limit") {
  SolverConfig c = ab();
  c.node_limit = 500;
  const SolveReport r = solve(HexState(4), c);
  CHECK(r.outcome == Outcome::Unknown);
  CHECK(r.nodes == 500);
}

TEST_CASE("oracle dispatch through solve") {
  SolverConfig c;
  c.algorithm = Algorithm::Oracle;
  const SolveReport r = solve(HexState(3), c);
  CHECK(r.winner() == Player::First);
  CHECK(r.nodes > 0);
  CHECK_THROWS_AS(solve(HexState(5), c), OracleRefused);
}
