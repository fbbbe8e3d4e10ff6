#pragma once

// Hex on an n x n rhombus (n <= 8). First (Black) joins top and bottom rows,
// Second (White) joins left and right columns. Cell r*n+c neighbours the six
// cells (r,c±1), (r±1,c), (r-1,c+1), (r+1,c-1).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ews/game.hpp"

namespace ews {

template <class Payload>
struct CanonicalForm {
  std::uint64_t key = 0;
  Payload payload{};
  int sym = 0;
};

struct HexPayload {
  Bitboard first = 0;
  Bitboard second = 0;
  Player to_move = Player::First;
  friend bool operator==(const HexPayload&, const HexPayload&) = default;
};

class HexState {
 public:
  using Payload = HexPayload;
  static constexpr int kMaxSize = 8;
  /// Symmetry group: identity and 180 degree rotation.
  static constexpr int kSymmetries = 2;

  explicit HexState(int size);

  /// Position with the given stones. Stone counts must satisfy
  /// |First| - |Second| in {0,1}; the side to move follows from them.
  static HexState from_stones(int size, Bitboard first, Bitboard second);

  int size() const noexcept { return n_; }
  int width() const noexcept { return n_; }
  int cells() const noexcept { return n_ * n_; }
  Player to_move() const noexcept { return to_move_; }
  Bitboard stones(Player p) const noexcept { return stones_[static_cast<int>(p)]; }
  Bitboard empty_cells() const noexcept { return board_mask() & ~(stones_[0] | stones_[1]); }
  int moves_played() const noexcept { return static_cast<int>(plies_.size()); }

  /// The connected player, if any.
  std::optional<Player> winner() const noexcept { return winner_; }

  MoveError check(Move m) const noexcept;
  void play(Move m);
  void undo();

  void legal_moves(MoveList& out) const;
  int branching_factor() const noexcept;
  std::optional<Outcome> terminal_status() const noexcept;

  std::uint64_t position_hash() const noexcept { return hash_[0]; }
  std::uint64_t canonical_hash() const noexcept;
  CanonicalForm<HexPayload> canonical_form() const noexcept;
  Move to_canonical(Move m, int sym) const noexcept { return sym ? rotate(m) : m; }
  Move from_canonical(Move m, int sym) const noexcept { return sym ? rotate(m) : m; }
  /// Keeps one representative per orbit of the symmetries fixing this position.
  void symmetry_reduce_siblings(MoveList& moves) const;

  void rollout_candidates(MoveList& out) const { legal_moves(out); }
  /// Uniformly random playout that leaves the state untouched: the empty
  /// cells are shuffled into a move order, and the game ends at the shortest
  /// prefix that connects the winner of the filled board.
  template <class Rng>
  RolloutResult random_playout(Rng& rng) const;
  /// Whether `own` joins p's two edges.
  bool connects(Player p, Bitboard own) const noexcept;
  /// Hex rollouts always reach a connection; calling this is a contract error.
  Player adjudicate() const;

  Move rotate(Move m) const noexcept { return m.is_pass() ? m : Move(cells() - 1 - m.cell()); }
  Bitboard rotate(Bitboard bits) const noexcept;

  /// Recomputes connectivity from the stones and compares with the
  /// incremental structure.
  bool connectivity_consistent() const;
  /// Position hash recomputed from the stones alone.
  std::uint64_t hash_from_scratch(int sym = 0) const noexcept;

  friend bool operator==(const HexState&, const HexState&) = default;

 private:
  struct Merge {
    std::uint8_t child;
    std::uint8_t root;
    bool rank_grew;
    friend bool operator==(const Merge&, const Merge&) = default;
  };
  struct Ply {
    std::int8_t cell;
    std::uint16_t merges_before;
    friend bool operator==(const Ply&, const Ply&) = default;
  };
  static constexpr int kNodes = kMaxSize * kMaxSize + 4;

  Bitboard board_mask() const noexcept {
    return cells() == 64 ? ~Bitboard{0} : (Bitboard{1} << cells()) - 1;
  }
  int top() const noexcept { return cells(); }
  int bottom() const noexcept { return cells() + 1; }
  int left() const noexcept { return cells() + 2; }
  int right() const noexcept { return cells() + 3; }
  int find(int x) const noexcept;
  void unite(int a, int b);
  void place(Player p, int cell);

  int n_;
  std::array<Bitboard, 2> stones_{};
  Player to_move_ = Player::First;
  std::optional<Player> winner_;
  std::array<std::uint8_t, kNodes> parent_{};
  std::array<std::uint8_t, kNodes> rank_{};
  std::vector<Merge> merges_;
  std::vector<Ply> plies_;
  std::array<std::uint64_t, kSymmetries> hash_{};
};

template <class Rng>
RolloutResult HexState::random_playout(Rng& rng) const {
  RolloutResult r;
  if (winner_) {
    r.winner = *winner_;
    return r;
  }
  std::array<std::int8_t, kMaxCells> order{};
  int empties = 0;
  for (Bitboard e = empty_cells(); e; e &= e - 1) order[empties++] = static_cast<std::int8_t>(std::countr_zero(e));
  for (int i = empties - 1; i > 0; --i) std::swap(order[i], order[pick_index(rng, i + 1)]);

  // mine[k]: the mover's stones after k of its own moves (mover plays first).
  std::array<Bitboard, kMaxCells / 2 + 2> mine{};
  std::array<Bitboard, kMaxCells / 2 + 2> theirs{};
  mine[0] = stones(to_move_);
  theirs[0] = stones(opponent(to_move_));
  for (int i = 0; i < empties; ++i) {
    const Bitboard bit = Bitboard{1} << order[i];
    if (i % 2 == 0) mine[i / 2 + 1] = mine[i / 2] | bit;
    else theirs[i / 2 + 1] = theirs[i / 2] | bit;
  }
  const int mover_moves = (empties + 1) / 2;
  const int other_moves = empties / 2;
  const bool mover_wins = connects(to_move_, mine[mover_moves]);
  r.winner = mover_wins ? to_move_ : opponent(to_move_);
  const auto& prefix = mover_wins ? mine : theirs;
  int lo = 1;
  int hi = mover_wins ? mover_moves : other_moves;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (connects(r.winner, prefix[mid])) hi = mid;
    else lo = mid + 1;
  }
  // The winner's lo-th stone is move 2lo-1 (mover) or 2lo (opponent).
  r.length = mover_wins ? 2 * lo - 1 : 2 * lo;
  r.branching_sum = static_cast<double>(r.length) * empties - r.length * (r.length - 1) / 2.0;
  return r;
}

}  // namespace ews
