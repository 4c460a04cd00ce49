#pragma once

#include <cstdint>
#include <random>

#include "livsic/rational.hpp"

namespace livsic {

/// Seeded generator with library-independent draws. std::mt19937_64 output
/// is fixed by the standard; the distributions are not, so ranges are mapped
/// by hand to keep generated documents identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Rational with |numerator| <= bound and denominator in [1, bound].
  Rational rational(std::int64_t bound) {
    Rational q(static_cast<long>(uniform(-bound, bound)), static_cast<unsigned long>(uniform(1, bound)));
    q.canonicalize();
    return q;
  }

  /// Same as rational() but never zero.
  Rational nonzero_rational(std::int64_t bound) {
    for (;;) {
      Rational q = rational(bound);
      if (q != 0) return q;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace livsic
