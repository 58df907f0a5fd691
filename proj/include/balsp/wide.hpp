#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace balsp {

// All arc costs, potentials and distance labels are kept in 128-bit signed
// integers. The preprocessing stages rescale costs by n, 3n^2 and 2^rho, so
// working quantities can exceed 64 bits long before any intermediate product
// does.
using Wide = __int128;

// Sentinel for "no path". Large enough that sums of two sentinels stay
// representable and no legal label ever reaches it.
inline constexpr Wide kWideInf = Wide(1) << 120;

// Everything the pipeline computes must stay below this bound; checked once
// per run from the input sizes.
inline constexpr Wide kMagnitudeGuard = Wide(1) << 122;

std::string wide_str(Wide v);
Wide wide_parse(std::string_view s);  // throws std::invalid_argument

std::ostream& operator<<(std::ostream& os, Wide v);

// Index of the most significant set bit; floor(log2(v)) for v >= 1.
int msb_index(Wide v);

// Largest integer power of two <= r. Requires r >= 1.
inline Wide floor_pow2(Wide r) {
  if (r < 1) throw std::invalid_argument("floor_pow2: argument must be >= 1");
  return Wide(1) << msb_index(r);
}

// Smallest integer power of two >= r. Requires r >= 1.
inline Wide ceil_pow2(Wide r) {
  if (r < 1) throw std::invalid_argument("ceil_pow2: argument must be >= 1");
  Wide f = floor_pow2(r);
  return f == r ? f : f << 1;
}

// ceil(sqrt(v)) by integer Newton iteration.
Wide ceil_isqrt(Wide v);

}  // namespace balsp
