#include "ews/game.hpp"

#include <charconv>
#include <random>

namespace ews {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Win: return "win";
    case Outcome::Loss: return "loss";
    default: return "unknown";
  }
}

std::string_view to_string(Player p) { return p == Player::First ? "B" : "W"; }

std::string_view to_string(MoveError e) {
  switch (e) {
    case MoveError::None: return "none";
    case MoveError::OutOfRange: return "cell out of range";
    case MoveError::Occupied: return "cell occupied";
    case MoveError::Suicide: return "suicide";
    case MoveError::Superko: return "positional superko violation";
    case MoveError::PassNotAllowed: return "pass not allowed";
    case MoveError::GameOver: return "game already over";
  }
  return "?";
}

IllegalMove::IllegalMove(MoveError e)
    : std::runtime_error("illegal move: " + std::string(to_string(e))), error_(e) {}

Zobrist Zobrist::generate() {
  Zobrist z;
  std::mt19937_64 rng(kSeed);
  for (auto& colour : z.stone)
    for (auto& k : colour) k = rng();
  z.second_to_move = rng();
  return z;
}

std::string cell_name(int cell, int width) {
  std::string s(1, static_cast<char>('a' + cell % width));
  s += std::to_string(cell / width + 1);
  return s;
}

std::string move_name(Move m, int width) {
  return m.is_pass() ? std::string("pass") : cell_name(m.cell(), width);
}

std::optional<Move> parse_move(std::string_view text, int width, int height) {
  if (text == "pass") return Move::pass();
  if (text.size() < 2 || text[0] < 'a' || text[0] > 'z') return std::nullopt;
  const int col = text[0] - 'a';
  int row = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), row);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (col >= width || row < 1 || row > height) return std::nullopt;
  return Move((row - 1) * width + col);
}

}  // namespace ews
