#include "ews/go.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ews {
namespace {

struct GoGeometry {
  int symmetries = 0;
  std::array<std::array<std::int8_t, kMaxCells>, GoState::kMaxSymmetries> perm{};
};

const GoGeometry& geometry(int w, int h) {
  static const auto tables = [] {
    constexpr int S = GoState::kMaxSide;
    std::array<GoGeometry, (S + 1) * (S + 1)> t{};
    for (int width = 1; width <= S; ++width) {
      for (int height = 1; height <= S; ++height) {
        GoGeometry& g = t[width * (S + 1) + height];
        g.symmetries = width == height ? 8 : 4;
        for (int y = 0; y < height; ++y) {
          for (int x = 0; x < width; ++x) {
            const int c = y * width + x;
            const int xr = width - 1 - x;
            const int yr = height - 1 - y;
            g.perm[0][c] = static_cast<std::int8_t>(c);
            g.perm[1][c] = static_cast<std::int8_t>(y * width + xr);
            g.perm[2][c] = static_cast<std::int8_t>(yr * width + x);
            g.perm[3][c] = static_cast<std::int8_t>(yr * width + xr);
            if (width == height) {
              g.perm[4][c] = static_cast<std::int8_t>(x * width + y);
              g.perm[5][c] = static_cast<std::int8_t>(x * width + yr);
              g.perm[6][c] = static_cast<std::int8_t>(xr * width + y);
              g.perm[7][c] = static_cast<std::int8_t>(xr * width + yr);
            }
          }
        }
      }
    }
    return t;
  }();
  return tables[w * (GoState::kMaxSide + 1) + h];
}

}  // namespace

Komi Komi::from_points(double points) {
  const double doubled = points * 2.0;
  const double rounded = std::round(doubled);
  if (std::abs(doubled - rounded) > 1e-9 || static_cast<long long>(rounded) % 2 == 0)
    throw std::invalid_argument("komi must be a half-integer such as 8.5");
  return from_half_points(static_cast<int>(rounded));
}

GoState::GoState(int width, int height, Komi komi) : w_(width), h_(height), komi_(komi) {
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide)
    throw std::invalid_argument("go board sides must be in 1..8");
  mask_ = cells() == 64 ? ~Bitboard{0} : (Bitboard{1} << cells()) - 1;
  left_col_ = 0;
  for (int y = 0; y < h_; ++y) left_col_ |= Bitboard{1} << (y * w_);
  right_col_ = left_col_ << (w_ - 1);
  path_sym_ = static_cast<std::uint8_t>((1u << symmetry_count()) - 1);
  history_.reserve(4 * cells());
  undo_.reserve(4 * cells());
  history_.push_back({});
}

GoState GoState::from_stones(int width, int height, Komi komi, Bitboard black, Bitboard white,
                             Player to_move) {
  GoState s(width, height, komi);
  if ((black | white) & ~s.mask_) throw std::invalid_argument("stone outside the board");
  if (black & white) throw std::invalid_argument("cell holds two stones");
  const Board b{black, white};
  for (Bitboard own : {black, white})
    for (Bitboard rest = own; rest; ) {
      const Bitboard block = s.flood(own, rest & -rest);
      if (!(s.dilate(block) & s.mask_ & ~(black | white)))
        throw std::invalid_argument("block without liberties");
      rest &= ~block;
    }
  s.set_board(b);
  s.history_.assign(1, b);
  s.path_sym_ = s.board_symmetries(b);
  s.to_move_ = to_move;
  s.hash_.fill(0);
  for (int k = 0; k < s.symmetry_count(); ++k) s.hash_[k] = s.hash_from_scratch(k);
  return s;
}

int GoState::symmetry_count() const noexcept { return geometry(w_, h_).symmetries; }

int GoState::map_cell(int sym, int cell) const noexcept { return geometry(w_, h_).perm[sym][cell]; }

Bitboard GoState::dilate(Bitboard b) const noexcept {
  const Bitboard grown = b | ((b & ~right_col_) << 1) | ((b & ~left_col_) >> 1) | (b << w_) | (b >> w_);
  return grown & mask_;
}

Bitboard GoState::flood(Bitboard own, Bitboard seed) const noexcept {
  Bitboard block = seed & own;
  for (;;) {
    const Bitboard next = dilate(block) & own;
    if (next == block) return block;
    block = next;
  }
}

GoState::Board GoState::after_placement(int cell) const noexcept {
  const Bitboard stone = Bitboard{1} << cell;
  Bitboard own = stones(to_move_) | stone;
  Bitboard opp = stones(opponent(to_move_));
  const Bitboard empty = mask_ & ~(own | opp);
  for (Bitboard adj = dilate(stone) & opp; adj;) {
    const Bitboard block = flood(opp, adj & -adj);
    if (!(dilate(block) & empty)) opp &= ~block;
    adj &= ~block;
  }
  return to_move_ == Player::First ? Board{own, opp} : Board{opp, own};
}

bool GoState::in_history(const Board& b) const noexcept {
  return std::find(history_.begin(), history_.end(), b) != history_.end();
}

MoveError GoState::check(Move m) const noexcept {
  if (passes_ >= 2) return MoveError::GameOver;
  if (m.is_pass()) return MoveError::None;
  if (m.cell() >= cells()) return MoveError::OutOfRange;
  if (((black_ | white_) >> m.cell()) & 1) return MoveError::Occupied;
  const Board next = after_placement(m.cell());
  const Bitboard own = to_move_ == Player::First ? next.black : next.white;
  const Bitboard block = flood(own, Bitboard{1} << m.cell());
  if (!(dilate(block) & mask_ & ~(next.black | next.white))) return MoveError::Suicide;
  if (in_history(next)) return MoveError::Superko;
  return MoveError::None;
}

bool GoState::superko_legal(Move m) const noexcept {
  if (m.is_pass()) return true;
  return !in_history(after_placement(m.cell()));
}

void GoState::set_board(const Board& b) {
  const Zobrist& z = Zobrist::instance();
  const GoGeometry& g = geometry(w_, h_);
  const Bitboard changed[2] = {black_ ^ b.black, white_ ^ b.white};
  for (int p = 0; p < 2; ++p)
    for (Bitboard c = changed[p]; c; c &= c - 1) {
      const int cell = std::countr_zero(c);
      for (int k = 0; k < g.symmetries; ++k) hash_[k] ^= z.key(static_cast<Player>(p), g.perm[k][cell]);
    }
  black_ = b.black;
  white_ = b.white;
}

std::uint8_t GoState::board_symmetries(const Board& b) const noexcept {
  const GoGeometry& g = geometry(w_, h_);
  std::uint8_t mask = 1;
  for (int k = 1; k < g.symmetries; ++k)
    if (permute(b.black, g.perm[k]) == b.black && permute(b.white, g.perm[k]) == b.white)
      mask |= static_cast<std::uint8_t>(1u << k);
  return mask;
}

void GoState::play(Move m) {
  const MoveError err = check(m);
  if (err == MoveError::GameOver) throw ContractViolation("go: move played after two passes");
  if (err != MoveError::None) throw IllegalMove(err);
  undo_.push_back({Board{black_, white_}, hash_, static_cast<std::uint8_t>(passes_), path_sym_,
                   !m.is_pass()});
  if (m.is_pass()) {
    ++passes_;
  } else {
    const Board next = after_placement(m.cell());
    set_board(next);
    history_.push_back(next);
    passes_ = 0;
    if (path_sym_ > 1) path_sym_ &= board_symmetries(next);
  }
  to_move_ = opponent(to_move_);
  const std::uint64_t side = Zobrist::instance().second_to_move;
  for (int k = 0; k < symmetry_count(); ++k) hash_[k] ^= side;
}

void GoState::undo() {
  if (undo_.empty()) throw ContractViolation("go: undo with no move played");
  const Snapshot& s = undo_.back();
  black_ = s.board.black;
  white_ = s.board.white;
  hash_ = s.hash;
  passes_ = s.passes;
  path_sym_ = s.path_sym;
  if (s.placed) history_.pop_back();
  to_move_ = opponent(to_move_);
  undo_.pop_back();
}

void GoState::legal_moves(MoveList& out) const {
  out.clear();
  if (passes_ >= 2) return;
  for (Bitboard e = empty_cells(); e; e &= e - 1) {
    const Move m(std::countr_zero(e));
    if (check(m) == MoveError::None) out.push_back(m);
  }
  out.push_back(Move::pass());
}

int GoState::branching_factor() const {
  MoveList list;
  legal_moves(list);
  return list.size();
}

void GoState::rollout_candidates(MoveList& out) const {
  out.clear();
  if (passes_ >= 2) return;
  const Bitboard own = stones(to_move_);
  for (Bitboard e = empty_cells(); e; e &= e - 1) {
    const int c = std::countr_zero(e);
    const Bitboard point = Bitboard{1} << c;
    const Bitboard around = dilate(point) & ~point;
    if ((around & own) == around) continue;
    const Move m(c);
    if (check(m) == MoveError::None) out.push_back(m);
  }
  if (out.empty()) out.push_back(Move::pass());
}

GoScore GoState::area_score() const noexcept {
  GoScore s{std::popcount(black_), std::popcount(white_)};
  const Bitboard empty = empty_cells();
  for (Bitboard rest = empty; rest;) {
    const Bitboard region = flood(empty, rest & -rest);
    const Bitboard border = dilate(region) & ~region;
    const bool touches_black = border & black_;
    const bool touches_white = border & white_;
    if (touches_black && !touches_white) s.black += std::popcount(region);
    if (touches_white && !touches_black) s.white += std::popcount(region);
    rest &= ~region;
  }
  return s;
}

Player GoState::winner_by_area() const noexcept {
  const GoScore s = area_score();
  return 2 * (s.black - s.white) > komi_.half_points() ? Player::First : Player::Second;
}

Outcome GoState::score() const {
  if (passes_ < 2) throw ContractViolation("go: scoring requested before two passes");
  return winner_by_area() == to_move_ ? Outcome::Win : Outcome::Loss;
}

std::optional<Outcome> GoState::terminal_status() const {
  if (passes_ < 2) return std::nullopt;
  return score();
}

std::uint64_t GoState::canonical_hash() const noexcept {
  return *std::min_element(hash_.begin(), hash_.begin() + symmetry_count());
}

void GoState::symmetry_reduce_siblings(MoveList& moves) const {
  if (path_sym_ <= 1) return;
  const GoGeometry& g = geometry(w_, h_);
  int kept = 0;
  for (Move m : moves) {
    bool representative = true;
    if (!m.is_pass())
      for (int k = 1; k < g.symmetries && representative; ++k)
        if (((path_sym_ >> k) & 1) && g.perm[k][m.cell()] < m.cell()) representative = false;
    if (representative) moves[kept++] = m;
  }
  moves.truncate(kept);
}

std::uint64_t GoState::hash_from_scratch(int sym) const noexcept {
  const Zobrist& z = Zobrist::instance();
  const GoGeometry& g = geometry(w_, h_);
  std::uint64_t h = to_move_ == Player::Second ? z.second_to_move : 0;
  for (Bitboard b = black_; b; b &= b - 1) h ^= z.key(Player::First, g.perm[sym][std::countr_zero(b)]);
  for (Bitboard b = white_; b; b &= b - 1) h ^= z.key(Player::Second, g.perm[sym][std::countr_zero(b)]);
  return h;
}

}  // namespace ews
