#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace modlat {

/// Finite(n) < Aleph0 < Continuum.
class SymbolicCardinal {
 public:
  enum class Kind { Finite, Aleph0, Continuum };

  static SymbolicCardinal finite(std::uint64_t n) { return SymbolicCardinal(Kind::Finite, n); }
  static SymbolicCardinal aleph0() { return SymbolicCardinal(Kind::Aleph0, 0); }
  static SymbolicCardinal continuum() { return SymbolicCardinal(Kind::Continuum, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  std::uint64_t count() const noexcept { return n_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: return "Finite(" + std::to_string(n_) + ")";
      case Kind::Aleph0: return "Aleph0";
      case Kind::Continuum: return "Continuum";
    }
    return "?";
  }

  friend bool operator==(const SymbolicCardinal&, const SymbolicCardinal&) = default;
  friend std::strong_ordering operator<=>(const SymbolicCardinal& a, const SymbolicCardinal& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.n_ <=> b.n_;
  }

 private:
  SymbolicCardinal(Kind k, std::uint64_t n) : kind_(k), n_(n) {}
  Kind kind_;
  std::uint64_t n_;
};

inline std::ostream& operator<<(std::ostream& os, const SymbolicCardinal& c) { return os << c.to_string(); }

inline SymbolicCardinal max(const SymbolicCardinal& a, const SymbolicCardinal& b) { return a < b ? b : a; }

}  // namespace modlat
