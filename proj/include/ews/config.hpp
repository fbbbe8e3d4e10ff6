#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ews/expected_work.hpp"
#include "ews/game.hpp"

namespace ews {

enum class Algorithm : std::uint8_t { Ews, EwsWr, EwsPs, AlphaBeta, Oracle };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Combination and ordering rules of the three EWS-family algorithms.
VariantPolicy policy_for(Algorithm a, double uct_c);

struct SolverConfig {
  Algorithm algorithm = Algorithm::Ews;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 100'000'000;
  double time_limit_s = 24 * 3600.0;
  double uct_c = 1.414;
  /// Conjectured winner of the root; enables single-EW bookkeeping.
  std::optional<Player> conjecture;
  bool transpositions = true;
  bool symmetry = true;
  /// Maximum rollout length; 0 selects 4 x cells.
  int rollout_cap = 0;
  int tt_log2_capacity = 22;
  /// Recheck the EW recursion and child order after every update.
  bool audit = false;
  /// Replaces policy_for(algorithm) when set.
  std::optional<VariantPolicy> policy_override;

  VariantPolicy policy() const {
    return policy_override ? *policy_override : policy_for(algorithm, uct_c);
  }
  /// Throws std::invalid_argument for non-positive limits or capacities.
  void validate() const;
};

/// Results of the EW-recursion audit (SolverConfig::audit).
struct BackpropAudit {
  std::uint64_t checks = 0;
  std::uint64_t residual_violations = 0;
  std::uint64_t order_violations = 0;
  double max_relative_residual = 0.0;
};

struct SolveReport {
  /// For the player to move at the root; Unknown only when a limit tripped.
  Outcome outcome = Outcome::Unknown;
  Player root_to_move = Player::First;
  std::uint64_t nodes = 0;
  std::uint64_t rollouts = 0;
  double elapsed_s = 0.0;
  std::uint64_t tt_hits = 0;
  std::uint64_t tt_stores = 0;
  SolverConfig config;
  /// Winning line as far as stored winning moves reach.
  std::vector<Move> principal_variation;
  BackpropAudit audit;

  bool solved() const noexcept { return outcome != Outcome::Unknown; }
  std::optional<Player> winner() const noexcept { return winner_of(outcome, root_to_move); }
};

}  // namespace ews
