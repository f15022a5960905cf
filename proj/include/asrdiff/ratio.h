#ifndef ASRDIFF_RATIO_H_
#define ASRDIFF_RATIO_H_

#include <cstdint>
#include <numeric>
#include <string>

namespace asrdiff {

// Exact non-negative count ratio. Kept unreduced so the numerator and
// denominator remain the counts they were built from.
struct Ratio {
  int64_t num = 0;
  int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  // Fixed six-decimal rendering used in every report file.
  std::string ToString() const;

  // Equality compares the rational value, not the representation.
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

}  // namespace asrdiff

#endif  // ASRDIFF_RATIO_H_
