#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace qclock {

/// Ground field. Every check in this library depends only on which
/// coefficients are nonzero, so exact rationals are enough.
using Scalar = boost::rational<std::int64_t>;

inline std::string to_string(const Scalar& s) {
  std::string out = std::to_string(s.numerator());
  if (s.denominator() != 1) out += "/" + std::to_string(s.denominator());
  return out;
}

/// Accepts `n`, `-n`, `+n`, `n/d`. Returns nullopt on anything else.
inline std::optional<Scalar> parse_scalar(std::string_view text) {
  auto parse_int = [](std::string_view t) -> std::optional<std::int64_t> {
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    if (t.empty() || t.front() == '+') return std::nullopt;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
  };
  auto slash = text.find('/');
  auto num = parse_int(text.substr(0, slash));
  if (!num) return std::nullopt;
  if (slash == std::string_view::npos) return Scalar(*num);
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    return std::nullopt;
  auto den = parse_int(den_text);
  if (!den || *den == 0) return std::nullopt;
  return Scalar(*num, *den);
}

}  // namespace qclock
