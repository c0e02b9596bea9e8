#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace st {

/// A discrete event time, or `infinity` for an event that never occurs.
///
/// Times are totally ordered: 0 < 1 < ... < infinity. Finite values are capped
/// at max_finite(); arithmetic past the cap throws instead of wrapping, so
/// infinity never collides with a representable finite value.
class Time {
public:
  constexpr Time() = default;

  static constexpr std::uint64_t max_finite() { return (std::uint64_t{1} << 62) - 1; }

  static constexpr Time finite(std::uint64_t n) {
    if (n > max_finite()) throw std::overflow_error("st::Time: finite value out of range");
    return Time(n);
  }

  static constexpr Time infinity() { return Time(raw_inf); }

  constexpr bool is_finite() const { return raw_ != raw_inf; }
  constexpr bool is_infinite() const { return raw_ == raw_inf; }

  /// Finite payload; calling this on infinity is a logic error.
  constexpr std::uint64_t value() const {
    if (is_infinite()) throw std::logic_error("st::Time: value() on infinity");
    return raw_;
  }

  friend constexpr auto operator<=>(Time a, Time b) { return a.raw_ <=> b.raw_; }
  friend constexpr bool operator==(Time a, Time b) = default;

private:
  static constexpr std::uint64_t raw_inf = ~std::uint64_t{0};

  constexpr explicit Time(std::uint64_t raw) : raw_(raw) {}

  std::uint64_t raw_ = 0;
};

/// Shift an event later by k ticks; infinity stays infinity (inf + 1 = inf).
constexpr Time delay(Time a, std::uint64_t k) {
  if (a.is_infinite()) return a;
  if (k > Time::max_finite() - a.value())
    throw std::overflow_error("st::delay: result exceeds max finite time");
  return Time::finite(a.value() + k);
}

inline std::string to_string(Time t) {
  return t.is_infinite() ? std::string("inf") : std::to_string(t.value());
}

inline std::ostream& operator<<(std::ostream& os, Time t) { return os << to_string(t); }

/// Parses "inf" or a decimal natural. Throws std::invalid_argument otherwise.
inline Time parse_time(std::string_view s) {
  if (s == "inf") return Time::infinity();
  if (s.empty()) throw std::invalid_argument("st::parse_time: empty string");
  std::uint64_t n = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("st::parse_time: bad time '" + std::string(s) + "'");
    std::uint64_t d = std::uint64_t(c - '0');
    if (n > (Time::max_finite() - d) / 10)
      throw std::overflow_error("st::parse_time: value out of range");
    n = n * 10 + d;
  }
  return Time::finite(n);
}

} // namespace st
