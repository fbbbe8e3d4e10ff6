#pragma once

// Shared vocabulary for the game backends and the solvers that consume them.

#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ews {

using Bitboard = std::uint64_t;
inline constexpr int kMaxCells = 64;

enum class Player : std::uint8_t { First, Second };

constexpr Player opponent(Player p) noexcept {
  return p == Player::First ? Player::Second : Player::First;
}

/// Always relative to the player to move at the position in question.
enum class Outcome : std::uint8_t { Win, Loss, Unknown };

constexpr Outcome negate(Outcome o) noexcept {
  switch (o) {
    case Outcome::Win: return Outcome::Loss;
    case Outcome::Loss: return Outcome::Win;
    default: return Outcome::Unknown;
  }
}

/// Player who wins given an outcome seen by `to_move`; nullopt for Unknown.
constexpr std::optional<Player> winner_of(Outcome o, Player to_move) noexcept {
  if (o == Outcome::Win) return to_move;
  if (o == Outcome::Loss) return opponent(to_move);
  return std::nullopt;
}

std::string_view to_string(Outcome o);
std::string_view to_string(Player p);

/// A cell index, or Pass (Go only).
class Move {
 public:
  constexpr Move() = default;
  constexpr explicit Move(int cell) : cell_(static_cast<std::int8_t>(cell)) {}
  static constexpr Move pass() { return Move{}; }

  constexpr bool is_pass() const noexcept { return cell_ < 0; }
  constexpr int cell() const noexcept { return cell_; }

  friend constexpr bool operator==(Move, Move) = default;

 private:
  std::int8_t cell_ = -1;
};

/// Fixed-capacity move list: every cell plus Pass.
class MoveList {
 public:
  void push_back(Move m) noexcept { moves_[size_++] = m; }
  void clear() noexcept { size_ = 0; }
  int size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  Move operator[](int i) const noexcept { return moves_[i]; }
  Move& operator[](int i) noexcept { return moves_[i]; }
  const Move* begin() const noexcept { return moves_.data(); }
  const Move* end() const noexcept { return moves_.data() + size_; }
  Move* begin() noexcept { return moves_.data(); }
  Move* end() noexcept { return moves_.data() + size_; }
  void truncate(int n) noexcept { size_ = n; }

 private:
  std::array<Move, kMaxCells + 1> moves_{};
  int size_ = 0;
};

enum class MoveError : std::uint8_t {
  None,
  OutOfRange,
  Occupied,
  Suicide,
  Superko,
  PassNotAllowed,
  GameOver,
};

std::string_view to_string(MoveError e);

class IllegalMove : public std::runtime_error {
 public:
  explicit IllegalMove(MoveError e);
  MoveError error() const noexcept { return error_; }

 private:
  MoveError error_;
};

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Zobrist keys for (colour, cell) and side to move, drawn from a fixed seed.
struct Zobrist {
  static constexpr std::uint64_t kSeed = 0x45575331'7A6F6272ULL;
  std::array<std::array<std::uint64_t, kMaxCells>, 2> stone{};
  std::uint64_t second_to_move = 0;

  static const Zobrist& instance() noexcept { return table; }
  std::uint64_t key(Player p, int cell) const noexcept {
    return stone[static_cast<int>(p)][cell];
  }

 private:
  static Zobrist generate();
  static const Zobrist table;
};

inline const Zobrist Zobrist::table = Zobrist::generate();

struct RolloutResult {
  Player winner = Player::First;
  /// Sum of legal-move counts over the non-final positions visited.
  double branching_sum = 0.0;
  int length = 0;
};

/// Uniform index in [0, n).
template <class Rng>
int pick_index(Rng& rng, int n) {
  return static_cast<int>(((rng() >> 32) * static_cast<std::uint64_t>(n)) >> 32);
}

/// Applies a cell permutation to a bit set.
template <std::size_t N>
Bitboard permute(Bitboard bits, const std::array<std::int8_t, N>& map) noexcept {
  Bitboard out = 0;
  while (bits) {
    const int c = std::countr_zero(bits);
    bits &= bits - 1;
    out |= Bitboard{1} << map[c];
  }
  return out;
}

/// Column letter + 1-based row, row 1 at the top ("a1" is cell 0).
std::string cell_name(int cell, int width);
std::string move_name(Move m, int width);
/// Parses a name written by move_name; nullopt if malformed or out of bounds.
std::optional<Move> parse_move(std::string_view text, int width, int height);

/// The rules contract every solver is written against.
template <class G>
concept GameState = std::copy_constructible<G> && requires(G g, const G cg, Move m, MoveList& list) {
  { cg.to_move() } -> std::same_as<Player>;
  { cg.cells() } -> std::convertible_to<int>;
  { cg.width() } -> std::convertible_to<int>;
  { cg.legal_moves(list) } -> std::same_as<void>;
  { cg.branching_factor() } -> std::convertible_to<int>;
  { g.play(m) } -> std::same_as<void>;
  { g.undo() } -> std::same_as<void>;
  { cg.terminal_status() } -> std::same_as<std::optional<Outcome>>;
  { cg.position_hash() } -> std::same_as<std::uint64_t>;
  { cg.canonical_hash() } -> std::same_as<std::uint64_t>;
  { cg.symmetry_reduce_siblings(list) } -> std::same_as<void>;
  // Rollout policy hooks.
  { cg.rollout_candidates(list) } -> std::same_as<void>;
  { cg.adjudicate() } -> std::same_as<Player>;
};

/// Games whose solved outcomes may be shared through a transposition table.
template <class G>
concept Transposable = GameState<G> && requires(const G cg, Move m, int sym) {
  typename G::Payload;
  { cg.canonical_form() };
  { cg.to_canonical(m, sym) } -> std::same_as<Move>;
  { cg.from_canonical(m, sym) } -> std::same_as<Move>;
};

}  // namespace ews
