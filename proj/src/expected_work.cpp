#include "ews/expected_work.hpp"

namespace ews {

void reorder_uct(std::vector<SearchNode>& children, std::uint32_t parent_visits, double c) {
  std::vector<std::pair<double, std::size_t>> keyed(children.size());
  for (std::size_t i = 0; i < children.size(); ++i)
    keyed[i] = {uct_value(children[i].win_rate(), children[i].visits, parent_visits, c), i};
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<SearchNode> sorted;
  sorted.reserve(children.size());
  for (const auto& [key, i] : keyed) sorted.push_back(std::move(children[i]));
  children = std::move(sorted);
}

void reorder(std::vector<SearchNode>& children, std::uint32_t parent_visits,
             const VariantPolicy& policy) {
  if (policy.order_rule == OrderRule::Uct)
    reorder_uct(children, parent_visits, policy.uct_c);
  else
    reorder(children, policy.zero_win_rates);
}

}  // namespace ews
