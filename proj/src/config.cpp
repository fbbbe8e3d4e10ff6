#include "ews/config.hpp"

#include <stdexcept>

namespace ews {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ews: return "ews";
    case Algorithm::EwsWr: return "ews-wr";
    case Algorithm::EwsPs: return "ews-ps";
    case Algorithm::AlphaBeta: return "ab";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Ews, Algorithm::EwsWr, Algorithm::EwsPs, Algorithm::AlphaBeta,
                      Algorithm::Oracle})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

VariantPolicy policy_for(Algorithm a, double uct_c) {
  VariantPolicy p;
  p.uct_c = uct_c;
  if (a == Algorithm::EwsWr) {
    p.win_rule = WinRule::Minimum;
    p.zero_win_rates = true;
  } else if (a == Algorithm::EwsPs) {
    p.order_rule = OrderRule::Uct;
  }
  return p;
}

void SolverConfig::validate() const {
  if (node_limit == 0) throw std::invalid_argument("node limit must be positive");
  if (!(time_limit_s > 0)) throw std::invalid_argument("time limit must be positive");
  if (rollout_cap < 0) throw std::invalid_argument("rollout cap must be non-negative");
  if (tt_log2_capacity < 0 || tt_log2_capacity > 30)
    throw std::invalid_argument("transposition capacity exponent must be in 0..30");
  if (!(uct_c >= 0)) throw std::invalid_argument("uct constant must be non-negative");
}

}  // namespace ews
