#pragma once

// Expected Work bookkeeping for an ordered list of unsolved children.
//
//   ew_loss(X) = sum_i ew_win(C_i)
//   ew_win(X)  = sum_i ew_loss(C_i) * prod_{j<i} WR(C_j)
//
// Children are kept in ascending order of ew_loss / (1 - WR), which
// minimises ew_win over all orderings.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "ews/game.hpp"

namespace ews {

struct SearchNode {
  Move move;
  bool expanded = false;
  std::uint32_t wins = 1;
  std::uint32_t visits = 2;
  double ew_loss = 0.0;
  double ew_win = 0.0;
  std::vector<SearchNode> children;

  double win_rate() const noexcept { return static_cast<double>(wins) / visits; }
};

/// Plain estimate triple, for synthetic child sets.
struct ChildEstimate {
  double ew_loss = 0.0;
  double ew_win = 0.0;
  double wr = 0.5;
  double win_rate() const noexcept { return wr; }
};

template <class C>
concept EstimatedChild = requires(const C& c) {
  { c.ew_loss } -> std::convertible_to<double>;
  { c.ew_win } -> std::convertible_to<double>;
  { c.win_rate() } -> std::convertible_to<double>;
};

enum class WinRule : std::uint8_t { WeightedSum, Minimum };
enum class OrderRule : std::uint8_t { ExpectedWork, Uct };

/// How a solve combines child estimates and orders children.
struct VariantPolicy {
  WinRule win_rule = WinRule::WeightedSum;
  OrderRule order_rule = OrderRule::ExpectedWork;
  /// Treat every WR as 0 in the ew_win sum and the ordering key.
  bool zero_win_rates = false;
  double uct_c = 1.414;
  friend bool operator==(const VariantPolicy&, const VariantPolicy&) = default;
};

template <EstimatedChild C>
double ew_loss(std::span<const C> children) noexcept {
  double sum = 0.0;
  for (const C& c : children) sum += c.ew_win;
  return sum;
}

template <EstimatedChild C>
double ew_win(std::span<const C> children, bool zero_win_rates = false) noexcept {
  double sum = 0.0;
  double reach = 1.0;
  for (const C& c : children) {
    sum += c.ew_loss * reach;
    reach *= zero_win_rates ? 0.0 : c.win_rate();
  }
  return sum;
}

template <EstimatedChild C>
double ew_win_min(std::span<const C> children) noexcept {
  if (children.empty()) return 0.0;
  double best = children.front().ew_loss;
  for (const C& c : children) best = std::min(best, c.ew_loss);
  return best;
}

template <EstimatedChild C>
double ew_win(std::span<const C> children, const VariantPolicy& policy) noexcept {
  return policy.win_rule == WinRule::Minimum ? ew_win_min(children)
                                             : ew_win(children, policy.zero_win_rates);
}

template <EstimatedChild C>
double order_key(const C& child, bool zero_win_rates = false) noexcept {
  const double wr = zero_win_rates ? 0.0 : child.win_rate();
  return child.ew_loss / (1.0 - wr);
}

/// Parent-perspective UCT value (1 - WR(child)) plus exploration.
inline double uct_value(double child_wr, std::uint32_t child_visits, std::uint32_t parent_visits,
                        double c) noexcept {
  return (1.0 - child_wr) +
         c * std::sqrt(std::log(static_cast<double>(parent_visits)) / child_visits);
}

/// Stable ascending sort by order_key.
template <EstimatedChild C>
void reorder(std::vector<C>& children, bool zero_win_rates = false) {
  auto less = [&](const C& a, const C& b) {
    return order_key(a, zero_win_rates) < order_key(b, zero_win_rates);
  };
  // Usually only the front child changed since the last sort: move it into
  // place, which is what the stable sort would do.
  if (children.size() > 1 && std::is_sorted(children.begin() + 1, children.end(), less)) {
    const auto to = std::lower_bound(children.begin() + 1, children.end(), children.front(), less);
    std::rotate(children.begin(), children.begin() + 1, to);
    return;
  }
  std::stable_sort(children.begin(), children.end(), less);
}

/// Stable descending sort by UCT value.
void reorder_uct(std::vector<SearchNode>& children, std::uint32_t parent_visits, double c);

void reorder(std::vector<SearchNode>& children, std::uint32_t parent_visits,
             const VariantPolicy& policy);

}  // namespace ews
