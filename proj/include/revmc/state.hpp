#ifndef REVMC_STATE_HPP
#define REVMC_STATE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace revmc {

// A state is either the hub (zeta), an anchor (one of the finitely many
// initially weighted states) or a species labeled by order of first
// appearance. Encoded in one int: 0 = zeta, j > 0 = species j,
// -(i+1) = anchor i.
class StateId {
 public:
  StateId() : code_(0) {}

  static StateId zeta() { return StateId(0); }
  static StateId anchor(int i) {
    if (i < 0) throw std::invalid_argument("anchor index must be >= 0");
    return StateId(-(i + 1));
  }
  static StateId species(int j) {
    if (j < 1) throw std::invalid_argument("species label must be >= 1");
    return StateId(j);
  }

  bool is_zeta() const { return code_ == 0; }
  bool is_anchor() const { return code_ < 0; }
  bool is_species() const { return code_ > 0; }

  int anchor_index() const { return -code_ - 1; }
  int species_label() const { return code_; }
  std::int32_t code() const { return code_; }
  static StateId from_code(std::int32_t c) { return StateId(c); }

  auto operator<=>(const StateId&) const = default;

  std::string str() const {
    if (is_zeta()) return "zeta";
    if (is_anchor()) return "A" + std::to_string(anchor_index());
    return "S" + std::to_string(species_label());
  }

 private:
  explicit StateId(std::int32_t c) : code_(c) {}
  std::int32_t code_;
};

// Unordered pair of states, stored (lo, hi).
struct StatePair {
  StateId lo, hi;

  StatePair() = default;
  StatePair(StateId a, StateId b) {
    if (b < a) std::swap(a, b);
    lo = a;
    hi = b;
  }

  bool is_loop() const { return lo == hi; }
  bool contains(StateId x) const { return x == lo || x == hi; }
  StateId other(StateId x) const { return x == lo ? hi : lo; }

  auto operator<=>(const StatePair&) const = default;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo.code())) << 32) |
           static_cast<std::uint32_t>(hi.code());
  }
};

}  // namespace revmc

template <>
struct std::hash<revmc::StateId> {
  std::size_t operator()(const revmc::StateId& s) const noexcept {
    return std::hash<std::int32_t>()(s.code());
  }
};

template <>
struct std::hash<revmc::StatePair> {
  std::size_t operator()(const revmc::StatePair& p) const noexcept {
    return std::hash<std::uint64_t>()(p.key());
  }
};

#endif
