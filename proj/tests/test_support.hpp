#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "winofir/rational.hpp"
#include "winofir/winograd.hpp"

namespace wtest {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline int64_t rand_int(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

inline winofir::Rational rand_rational(std::mt19937_64& rng, int64_t mag) {
  const int64_t num = rand_int(rng, -mag, mag);
  const int64_t den = rand_int(rng, 1, mag);
  return winofir::Rational(num, den);
}

template <class S>
winofir::Tile4<S> tile_of(int64_t a, int64_t b, int64_t c, int64_t d) {
  return {S(a), S(b), S(c), S(d)};
}

template <class S>
winofir::Taps3<S> taps_of(int64_t a, int64_t b, int64_t c) {
  return {S(a), S(b), S(c)};
}

inline winofir::Tile4<winofir::Rational> rand_tile(std::mt19937_64& rng,
                                                   int64_t mag) {
  return tile_of<winofir::Rational>(rand_int(rng, -mag, mag),
                                    rand_int(rng, -mag, mag),
                                    rand_int(rng, -mag, mag),
                                    rand_int(rng, -mag, mag));
}

inline winofir::Taps3<winofir::Rational> rand_taps(std::mt19937_64& rng,
                                                   int64_t mag) {
  return taps_of<winofir::Rational>(rand_int(rng, -mag, mag),
                                    rand_int(rng, -mag, mag),
                                    rand_int(rng, -mag, mag));
}

// Independent brute-force sweep of the two-output filtering equations,
// kept free of the library kernels on purpose.
template <class S>
std::vector<S> brute_force_valid_convolution(const std::vector<S>& x,
                                             const S& h0, const S& h1,
                                             const S& h2) {
  std::vector<S> out;
  for (std::size_t l = 0; l + 2 < x.size(); ++l) {
    out.push_back(x[l] * h0 + x[l + 1] * h1 + x[l + 2] * h2);
  }
  return out;
}

}  // namespace wtest
