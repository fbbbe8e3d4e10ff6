#pragma once

// Slow reference implementations used to cross-check the bitboard code.

#include <queue>
#include <random>
#include <vector>

#include "ews/game.hpp"

namespace ews::test {

/// Breadth-first search over (row, col) coordinates.
inline bool naive_hex_connected(int n, Bitboard own, Player p) {
  std::vector<bool> seen(n * n, false);
  std::queue<int> q;
  for (int i = 0; i < n; ++i) {
    const int cell = p == Player::First ? i : i * n;
    if ((own >> cell) & 1) {
      seen[cell] = true;
      q.push(cell);
    }
  }
  constexpr int dr[6] = {0, 0, -1, 1, -1, 1};
  constexpr int dc[6] = {-1, 1, 0, 0, 1, -1};
  while (!q.empty()) {
    const int cell = q.front();
    q.pop();
    const int r = cell / n;
    const int c = cell % n;
    if ((p == Player::First ? r : c) == n - 1) return true;
    for (int k = 0; k < 6; ++k) {
      const int rr = r + dr[k];
      const int cc = c + dc[k];
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int next = rr * n + cc;
      if (!seen[next] && ((own >> next) & 1)) {
        seen[next] = true;
        q.push(next);
      }
    }
  }
  return false;
}

struct NaiveArea {
  int black = 0;
  int white = 0;
};

/// Stones plus empty regions that touch only one colour.
inline NaiveArea naive_area(int w, int h, Bitboard black, Bitboard white) {
  NaiveArea a;
  std::vector<bool> seen(w * h, false);
  for (int cell = 0; cell < w * h; ++cell) {
    if ((black >> cell) & 1) ++a.black;
    if ((white >> cell) & 1) ++a.white;
  }
  for (int start = 0; start < w * h; ++start) {
    if (seen[start] || ((black | white) >> start) & 1) continue;
    int size = 0;
    bool touches_black = false;
    bool touches_white = false;
    std::queue<int> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      const int cell = q.front();
      q.pop();
      ++size;
      const int r = cell / w;
      const int c = cell % w;
      const int nbs[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& nb : nbs) {
        if (nb[0] < 0 || nb[0] >= h || nb[1] < 0 || nb[1] >= w) continue;
        const int next = nb[0] * w + nb[1];
        if ((black >> next) & 1) touches_black = true;
        else if ((white >> next) & 1) touches_white = true;
        else if (!seen[next]) {
          seen[next] = true;
          q.push(next);
        }
      }
    }
    if (touches_black && !touches_white) a.black += size;
    if (touches_white && !touches_black) a.white += size;
  }
  return a;
}

/// Plays up to `plies` uniformly random legal moves, stopping at terminals.
template <GameState G>
int random_walk(G& state, std::mt19937_64& rng, int plies) {
  MoveList moves;
  int played = 0;
  while (played < plies && !state.terminal_status()) {
    state.legal_moves(moves);
    state.play(moves[static_cast<int>(rng() % moves.size())]);
    ++played;
  }
  return played;
}

}  // namespace ews::test
