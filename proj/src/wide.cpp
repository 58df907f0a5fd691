#include "balsp/wide.hpp"

#include <ostream>

namespace balsp {

std::string wide_str(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  char buf[48];
  int i = 48;
  while (u > 0) {
    buf[--i] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string out;
  if (neg) out.push_back('-');
  out.append(buf + i, buf + 48);
  return out;
}

Wide wide_parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("wide_parse: empty string");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("wide_parse: no digits");
  Wide v = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw std::invalid_argument("wide_parse: bad digit");
    if (v > kMagnitudeGuard / 10) throw std::invalid_argument("wide_parse: overflow");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

std::ostream& operator<<(std::ostream& os, Wide v) { return os << wide_str(v); }

int msb_index(Wide v) {
  if (v < 1) throw std::invalid_argument("msb_index: argument must be >= 1");
  auto u = static_cast<unsigned __int128>(v);
  auto hi = static_cast<uint64_t>(u >> 64);
  if (hi != 0) return 127 - __builtin_clzll(hi);
  return 63 - __builtin_clzll(static_cast<uint64_t>(u));
}

Wide ceil_isqrt(Wide v) {
  if (v < 0) throw std::invalid_argument("ceil_isqrt: negative argument");
  if (v <= 1) return v;
  // Newton iteration for floor(sqrt(v)), seeded above the root.
  Wide x = Wide(1) << (msb_index(v) / 2 + 1);
  while (true) {
    Wide y = (x + v / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x * x == v ? x : x + 1;
}

}  // namespace balsp
