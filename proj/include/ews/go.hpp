#pragma once

// Small-board Go: positional superko, suicide forbidden, Tromp-Taylor area
// scoring, game over after two consecutive passes.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ews/game.hpp"

namespace ews {

/// Half-integer compensation for Second (White), stored in half points.
class Komi {
 public:
  constexpr Komi() = default;
  /// Throws std::invalid_argument unless `points` has fractional part 0.5.
  static Komi from_points(double points);
  static constexpr Komi from_half_points(int half) {
    Komi k;
    k.half_ = half;
    return k;
  }
  int half_points() const noexcept { return half_; }
  double points() const noexcept { return half_ / 2.0; }
  friend bool operator==(Komi, Komi) = default;

 private:
  int half_ = 1;
};

struct GoScore {
  int black = 0;
  int white = 0;
  friend bool operator==(const GoScore&, const GoScore&) = default;
};

class GoState {
 public:
  static constexpr int kMaxSide = 8;
  static constexpr int kMaxSymmetries = 8;

  GoState(int width, int height, Komi komi);
  GoState(int size, Komi komi) : GoState(size, size, komi) {}

  /// A position with no recorded history: the current board is the only
  /// entry of the superko set.
  static GoState from_stones(int width, int height, Komi komi, Bitboard black, Bitboard white,
                             Player to_move);

  int width() const noexcept { return w_; }
  int height() const noexcept { return h_; }
  int cells() const noexcept { return w_ * h_; }
  Komi komi() const noexcept { return komi_; }
  Player to_move() const noexcept { return to_move_; }
  int consecutive_passes() const noexcept { return passes_; }
  Bitboard stones(Player p) const noexcept { return p == Player::First ? black_ : white_; }
  Bitboard empty_cells() const noexcept { return mask_ & ~(black_ | white_); }
  int moves_played() const noexcept { return static_cast<int>(undo_.size()); }
  int history_size() const noexcept { return static_cast<int>(history_.size()); }

  MoveError check(Move m) const noexcept;
  /// True iff placing at `m` yields a board (after captures) absent from the history.
  bool superko_legal(Move m) const noexcept;
  void play(Move m);
  void undo();

  void legal_moves(MoveList& out) const;
  int branching_factor() const;
  std::optional<Outcome> terminal_status() const;

  /// Tromp-Taylor area score of the current board.
  GoScore area_score() const noexcept;
  /// Result for the player to move; requires two consecutive passes.
  Outcome score() const;
  Player winner_by_area() const noexcept;

  std::uint64_t position_hash() const noexcept { return hash_[0]; }
  std::uint64_t canonical_hash() const noexcept;
  int symmetry_count() const noexcept;
  /// Symmetries under which every board on the current path is invariant.
  std::uint8_t path_invariant_symmetries() const noexcept { return path_sym_; }
  int map_cell(int sym, int cell) const noexcept;
  void symmetry_reduce_siblings(MoveList& moves) const;

  /// Legal moves minus single-point eye fills; Pass only if nothing else remains.
  void rollout_candidates(MoveList& out) const;
  Player adjudicate() const noexcept { return winner_by_area(); }

  std::uint64_t hash_from_scratch(int sym = 0) const noexcept;

  friend bool operator==(const GoState&, const GoState&) = default;

 private:
  struct Board {
    Bitboard black = 0;
    Bitboard white = 0;
    friend bool operator==(const Board&, const Board&) = default;
  };
  struct Snapshot {
    Board board;
    std::array<std::uint64_t, kMaxSymmetries> hash;
    std::uint8_t passes;
    std::uint8_t path_sym;
    bool placed;
    friend bool operator==(const Snapshot&, const Snapshot&) = default;
  };

  Bitboard dilate(Bitboard b) const noexcept;
  Bitboard flood(Bitboard own, Bitboard seed) const noexcept;
  /// Board after placing for the mover and removing captured blocks.
  Board after_placement(int cell) const noexcept;
  bool in_history(const Board& b) const noexcept;
  void set_board(const Board& b);
  std::uint8_t board_symmetries(const Board& b) const noexcept;

  int w_;
  int h_;
  Bitboard mask_;
  Bitboard left_col_;
  Bitboard right_col_;
  Komi komi_;
  Bitboard black_ = 0;
  Bitboard white_ = 0;
  Player to_move_ = Player::First;
  int passes_ = 0;
  std::array<std::uint64_t, kMaxSymmetries> hash_{};
  std::uint8_t path_sym_ = 0;
  std::vector<Board> history_;
  std::vector<Snapshot> undo_;
};

}  // namespace ews
