#pragma once

// Solved-position store. Entries are indexed by the canonical key and carry
// the canonical board as a payload, so a probe only hits on an exact match.

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <new>
#include <optional>
#include <type_traits>
#include <variant>

#include "ews/game.hpp"

namespace ews {

struct TableHit {
  Outcome outcome = Outcome::Unknown;
  /// Present iff outcome is Win.
  std::optional<Move> winning_move;
};

template <class Payload>
class TranspositionTable {
  static_assert(std::is_trivially_copyable_v<Payload>);

 public:
  explicit TranspositionTable(int log2_capacity = 22)
      : mask_((std::uint64_t{1} << log2_capacity) - 1),
        entries_(static_cast<Entry*>(std::calloc(mask_ + 1, sizeof(Entry)))) {
    if (!entries_) throw std::bad_alloc();
  }

  std::uint64_t capacity() const noexcept { return mask_ + 1; }
  std::uint64_t stores() const noexcept { return stores_; }
  std::uint64_t hits() const noexcept { return hits_; }

  /// Always replaces whatever occupies the slot.
  void store(std::uint64_t key, const Payload& payload, Outcome outcome, Move winning_move) {
    if (outcome == Outcome::Unknown) throw ContractViolation("tt: only solved outcomes are stored");
    Entry& e = entries_[key & mask_];
    e.key = key;
    e.payload = payload;
    e.outcome = outcome;
    e.move = outcome == Outcome::Win ? winning_move : Move::pass();
    e.used = true;
    ++stores_;
  }

  std::optional<TableHit> probe(std::uint64_t key, const Payload& payload) {
    const Entry& e = entries_[key & mask_];
    if (!e.used || e.key != key || !(e.payload == payload)) return std::nullopt;
    ++hits_;
    TableHit hit{e.outcome, std::nullopt};
    if (e.outcome == Outcome::Win) hit.winning_move = e.move;
    return hit;
  }

  /// State-level store under the canonical key; the move is kept in
  /// canonical orientation.
  template <Transposable G>
  void store(const G& state, Outcome outcome, Move winning_move = Move::pass()) {
    const auto form = state.canonical_form();
    store(form.key, form.payload, outcome, state.to_canonical(winning_move, form.sym));
  }

  /// State-level probe; the winning move comes back in the state's orientation.
  template <Transposable G>
  std::optional<TableHit> probe(const G& state) {
    const auto form = state.canonical_form();
    auto hit = probe(form.key, form.payload);
    if (hit && hit->winning_move) hit->winning_move = state.from_canonical(*hit->winning_move, form.sym);
    return hit;
  }

 private:
  struct Entry {
    std::uint64_t key;
    Payload payload;
    Outcome outcome;
    Move move;
    bool used;
  };
  struct Free {
    void operator()(Entry* p) const noexcept { std::free(p); }
  };

  std::uint64_t mask_;
  std::unique_ptr<Entry[], Free> entries_;
  std::uint64_t stores_ = 0;
  std::uint64_t hits_ = 0;
};

/// The table type a game can use, or std::monostate if it has none.
template <class G>
struct TableFor {
  using type = std::monostate;
};
template <Transposable G>
struct TableFor<G> {
  using type = TranspositionTable<typename G::Payload>;
};
template <class G>
using TableFor_t = typename TableFor<G>::type;

struct EtcHit {
  Move move;
  /// Outcome of the successor, for its player to move.
  Outcome child_outcome;
};

/// One-ply lookahead over the stored successors of `state`. A successor
/// stored as Loss is preferred, since it solves `state` outright.
template <Transposable G, class Table>
std::optional<EtcHit> etc_probe(Table& table, G& state) {
  MoveList moves;
  state.legal_moves(moves);
  std::optional<EtcHit> found;
  for (Move m : moves) {
    state.play(m);
    const auto hit = table.probe(state);
    state.undo();
    if (!hit) continue;
    if (hit->outcome == Outcome::Loss) return EtcHit{m, Outcome::Loss};
    if (!found) found = EtcHit{m, hit->outcome};
  }
  return found;
}

}  // namespace ews
