#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace mimocap {

/// Shortest decimal that round-trips; never depends on the global locale.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Num {
  double value;
};

inline std::ostream& operator<<(std::ostream& out, Num n) { return out << format_number(n.value); }

}  // namespace mimocap
