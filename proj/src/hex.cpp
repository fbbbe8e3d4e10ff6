#include "ews/hex.hpp"

#include <algorithm>
#include <bit>

namespace ews {
namespace {

struct HexGeometry {
  std::array<Bitboard, kMaxCells> neighbours{};
  Bitboard board = 0;
  Bitboard first_col = 0;
  Bitboard last_col = 0;
  Bitboard top_row = 0;
  Bitboard bottom_row = 0;
};

const HexGeometry& geometry(int n) {
  static const auto tables = [] {
    std::array<HexGeometry, HexState::kMaxSize + 1> t{};
    for (int size = 1; size <= HexState::kMaxSize; ++size) {
      for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
          Bitboard nb = 0;
          constexpr int dr[6] = {0, 0, -1, 1, -1, 1};
          constexpr int dc[6] = {-1, 1, 0, 0, 1, -1};
          for (int k = 0; k < 6; ++k) {
            const int rr = r + dr[k];
            const int cc = c + dc[k];
            if (rr >= 0 && rr < size && cc >= 0 && cc < size) nb |= Bitboard{1} << (rr * size + cc);
          }
          t[size].neighbours[r * size + c] = nb;
        }
      }
      HexGeometry& g = t[size];
      g.board = size == 8 ? ~Bitboard{0} : (Bitboard{1} << (size * size)) - 1;
      g.top_row = (Bitboard{1} << size) - 1;
      g.bottom_row = g.top_row << (size * (size - 1));
      for (int r = 0; r < size; ++r) g.first_col |= Bitboard{1} << (r * size);
      g.last_col = g.first_col << (size - 1);
    }
    return t;
  }();
  return tables[n];
}

/// Cells adjacent to `b`, plus `b` itself.
Bitboard dilate(const HexGeometry& g, int n, Bitboard b) noexcept {
  const Bitboard not_first = ~g.first_col;
  const Bitboard not_last = ~g.last_col;
  Bitboard d = b | (b >> n) | (b << n);
  d |= ((b >> 1) | (b << (n - 1))) & not_last;
  d |= ((b << 1) | (b >> (n - 1))) & not_first;
  return d & g.board;
}

}  // namespace

bool HexState::connects(Player p, Bitboard own) const noexcept {
  const HexGeometry& g = geometry(n_);
  const bool first = p == Player::First;
  Bitboard seen = own & (first ? g.top_row : g.first_col);
  const Bitboard goal = first ? g.bottom_row : g.last_col;
  for (;;) {
    if (seen & goal) return true;
    const Bitboard next = dilate(g, n_, seen) & own;
    if (next == seen) return false;
    seen = next;
  }
}

HexState::HexState(int size) : n_(size) {
  if (size < 1 || size > kMaxSize) throw std::invalid_argument("hex size must be in 1..8");
  for (int i = 0; i < kNodes; ++i) parent_[i] = static_cast<std::uint8_t>(i);
  merges_.reserve(4 * cells());
  plies_.reserve(cells());
}

HexState HexState::from_stones(int size, Bitboard first, Bitboard second) {
  HexState s(size);
  if ((first | second) & ~s.board_mask()) throw std::invalid_argument("stone outside the board");
  if (first & second) throw std::invalid_argument("cell holds two stones");
  const int diff = std::popcount(first) - std::popcount(second);
  if (diff != 0 && diff != 1)
    throw std::invalid_argument("hex stone counts must differ by 0 or 1 in First's favour");
  for (Bitboard b = first; b; b &= b - 1) s.place(Player::First, std::countr_zero(b));
  for (Bitboard b = second; b; b &= b - 1) s.place(Player::Second, std::countr_zero(b));
  // Set-up stones are not undoable history.
  s.merges_.clear();
  s.to_move_ = diff == 0 ? Player::First : Player::Second;
  s.hash_[0] = s.hash_from_scratch(0);
  s.hash_[1] = s.hash_from_scratch(1);
  return s;
}

int HexState::find(int x) const noexcept {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

void HexState::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] > rank_[b]) std::swap(a, b);
  const bool grew = rank_[a] == rank_[b];
  parent_[a] = static_cast<std::uint8_t>(b);
  if (grew) ++rank_[b];
  merges_.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), grew});
}

void HexState::place(Player p, int cell) {
  const Zobrist& z = Zobrist::instance();
  stones_[static_cast<int>(p)] |= Bitboard{1} << cell;
  hash_[0] ^= z.key(p, cell);
  hash_[1] ^= z.key(p, cells() - 1 - cell);

  for (Bitboard nb = geometry(n_).neighbours[cell] & stones(p); nb; nb &= nb - 1)
    unite(cell, std::countr_zero(nb));
  const int r = cell / n_;
  const int c = cell % n_;
  if (p == Player::First) {
    if (r == 0) unite(cell, top());
    if (r == n_ - 1) unite(cell, bottom());
    if (find(top()) == find(bottom())) winner_ = p;
  } else {
    if (c == 0) unite(cell, left());
    if (c == n_ - 1) unite(cell, right());
    if (find(left()) == find(right())) winner_ = p;
  }
}

MoveError HexState::check(Move m) const noexcept {
  if (winner_) return MoveError::GameOver;
  if (m.is_pass()) return MoveError::PassNotAllowed;
  if (m.cell() >= cells()) return MoveError::OutOfRange;
  if (((stones_[0] | stones_[1]) >> m.cell()) & 1) return MoveError::Occupied;
  return MoveError::None;
}

void HexState::play(Move m) {
  const MoveError err = check(m);
  if (err == MoveError::GameOver) throw ContractViolation("hex: move played after the game ended");
  if (err != MoveError::None) throw IllegalMove(err);
  plies_.push_back({static_cast<std::int8_t>(m.cell()), static_cast<std::uint16_t>(merges_.size())});
  place(to_move_, m.cell());
  to_move_ = opponent(to_move_);
  hash_[0] ^= Zobrist::instance().second_to_move;
  hash_[1] ^= Zobrist::instance().second_to_move;
}

void HexState::undo() {
  if (plies_.empty()) throw ContractViolation("hex: undo with no move played");
  const Ply ply = plies_.back();
  plies_.pop_back();
  while (merges_.size() > ply.merges_before) {
    const Merge mg = merges_.back();
    merges_.pop_back();
    parent_[mg.child] = mg.child;
    if (mg.rank_grew) --rank_[mg.root];
  }
  to_move_ = opponent(to_move_);
  const Zobrist& z = Zobrist::instance();
  stones_[static_cast<int>(to_move_)] &= ~(Bitboard{1} << ply.cell);
  hash_[0] ^= z.key(to_move_, ply.cell) ^ z.second_to_move;
  hash_[1] ^= z.key(to_move_, cells() - 1 - ply.cell) ^ z.second_to_move;
  winner_.reset();
}

void HexState::legal_moves(MoveList& out) const {
  out.clear();
  if (winner_) return;
  for (Bitboard e = empty_cells(); e; e &= e - 1) out.push_back(Move(std::countr_zero(e)));
}

int HexState::branching_factor() const noexcept {
  return winner_ ? 0 : std::popcount(empty_cells());
}

std::optional<Outcome> HexState::terminal_status() const noexcept {
  if (!winner_) return std::nullopt;
  return *winner_ == to_move_ ? Outcome::Win : Outcome::Loss;
}

Bitboard HexState::rotate(Bitboard bits) const noexcept {
  // Cell i maps to cells-1-i: a bit reversal confined to the board.
  Bitboard r = bits;
  r = ((r >> 1) & 0x5555555555555555ULL) | ((r & 0x5555555555555555ULL) << 1);
  r = ((r >> 2) & 0x3333333333333333ULL) | ((r & 0x3333333333333333ULL) << 2);
  r = ((r >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((r & 0x0F0F0F0F0F0F0F0FULL) << 4);
  r = __builtin_bswap64(r);
  return r >> (64 - cells());
}

std::uint64_t HexState::canonical_hash() const noexcept { return std::min(hash_[0], hash_[1]); }

CanonicalForm<HexPayload> HexState::canonical_form() const noexcept {
  CanonicalForm<HexPayload> f;
  f.sym = hash_[1] < hash_[0] ? 1 : 0;
  f.key = hash_[f.sym];
  f.payload.to_move = to_move_;
  f.payload.first = f.sym ? rotate(stones_[0]) : stones_[0];
  f.payload.second = f.sym ? rotate(stones_[1]) : stones_[1];
  return f;
}

void HexState::symmetry_reduce_siblings(MoveList& moves) const {
  if (rotate(stones_[0]) != stones_[0] || rotate(stones_[1]) != stones_[1]) return;
  int kept = 0;
  for (Move m : moves)
    if (m.is_pass() || m.cell() <= cells() - 1 - m.cell()) moves[kept++] = m;
  moves.truncate(kept);
}

Player HexState::adjudicate() const {
  if (winner_) return *winner_;
  throw ContractViolation("hex: adjudication requested on an unfinished game");
}

std::uint64_t HexState::hash_from_scratch(int sym) const noexcept {
  const Zobrist& z = Zobrist::instance();
  std::uint64_t h = to_move_ == Player::Second ? z.second_to_move : 0;
  for (int p = 0; p < 2; ++p)
    for (Bitboard b = stones_[p]; b; b &= b - 1) {
      const int c = std::countr_zero(b);
      h ^= z.key(static_cast<Player>(p), sym ? cells() - 1 - c : c);
    }
  return h;
}

bool HexState::connectivity_consistent() const {
  // Flood fill each player's stones from their first edge.
  const HexGeometry& g = geometry(n_);
  auto reach = [&](Bitboard own, Bitboard seed) {
    Bitboard front = own & seed;
    Bitboard seen = front;
    while (front) {
      Bitboard next = 0;
      for (Bitboard b = front; b; b &= b - 1) next |= g.neighbours[std::countr_zero(b)];
      front = next & own & ~seen;
      seen |= front;
    }
    return seen;
  };
  Bitboard top_row = (Bitboard{1} << n_) - 1;
  Bitboard bottom_row = top_row << (n_ * (n_ - 1));
  Bitboard left_col = 0;
  for (int r = 0; r < n_; ++r) left_col |= Bitboard{1} << (r * n_);
  Bitboard right_col = left_col << (n_ - 1);

  const bool first_connected = (reach(stones_[0], top_row) & bottom_row) != 0;
  const bool second_connected = (reach(stones_[1], left_col) & right_col) != 0;
  if (first_connected != (find(top()) == find(bottom()))) return false;
  if (second_connected != (find(left()) == find(right()))) return false;

  // Every pair of adjacent same-colour stones must share a root.
  for (int p = 0; p < 2; ++p)
    for (Bitboard b = stones_[p]; b; b &= b - 1) {
      const int c = std::countr_zero(b);
      for (Bitboard nb = g.neighbours[c] & stones_[p]; nb; nb &= nb - 1)
        if (find(c) != find(std::countr_zero(nb))) return false;
    }
  // Empty cells are singletons.
  for (Bitboard e = empty_cells(); e; e &= e - 1) {
    const int c = std::countr_zero(e);
    if (parent_[c] != c || rank_[c] != 0) return false;
  }
  return true;
}

}  // namespace ews
