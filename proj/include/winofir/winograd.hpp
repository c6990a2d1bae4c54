#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include "winofir/rational.hpp"

namespace winofir {

// Four consecutive signal samples; one kernel invocation consumes a tile
// and yields two outputs.
template <class S>
struct Tile4 {
  S x0, x1, x2, x3;
  bool operator==(const Tile4&) const = default;
};

// Impulse response of the 3-tap FIR filter.
template <class S>
struct Taps3 {
  S h0, h1, h2;
  bool operator==(const Taps3&) const = default;
};

// Two consecutive filter outputs.
template <class S>
struct OutPair {
  S y0, y1;
  bool operator==(const OutPair&) const = default;
};

// Register-memory contents of the filtering module: s0 = h0, s3 = h2,
// s1 = (h0+h1+h2)/2, s2 = (h0-h1+h2)/2.
template <class S>
struct TransformedTaps {
  S s0, s1, s2, s3;
  bool operator==(const TransformedTaps&) const = default;
};

// The fixed transform matrices of the minimal filtering algorithm. Entries
// are in {-1, 0, 1}; the diagonal tap-scaling stage applies a halving where
// flagged. Immutable shared data.
struct TransformConstants {
  // Pre-addition stage applied to the tile: rows produce the four
  // multiplier operands (x0-x2, x1+x2, x2-x1, x1-x3).
  std::array<std::array<int, 4>, 4> input_transform;
  // Post-multiplication accumulation into the two outputs.
  std::array<std::array<int, 4>, 2> output_transform;
  // Diagonal tap scaling: true entries are multiplied by 1/2.
  std::array<bool, 4> tap_scaling_halved;
  // Sparse two-stage factorization of the tap precompute.
  std::array<std::array<int, 3>, 5> tap_stage1;
  std::array<std::array<int, 5>, 4> tap_stage2;
};

const TransformConstants& transform_constants();

namespace detail {

// Signed row combination: seeds the accumulator with the first positive
// entry so the generated expression matches the scalar kernels' operand
// order, then folds the remaining nonzeros left to right.
template <class S, std::size_t C>
S row_combine(const std::array<int, C>& row, const std::array<S, C>& v) {
  std::size_t seed = C;
  for (std::size_t j = 0; j < C; ++j) {
    if (row[j] > 0) {
      seed = j;
      break;
    }
  }
  std::optional<S> acc;
  if (seed != C) acc = v[seed];
  for (std::size_t j = 0; j < C; ++j) {
    if (j == seed || row[j] == 0) continue;
    if (!acc) {
      acc = row[j] > 0 ? v[j] : -v[j];
    } else {
      acc = row[j] > 0 ? std::move(*acc) + v[j] : std::move(*acc) - v[j];
    }
  }
  if (!acc) throw std::logic_error("all-zero transform row");
  return *std::move(acc);
}

template <class S, std::size_t R, std::size_t C, std::size_t... I>
std::array<S, R> apply_rows(const std::array<std::array<int, C>, R>& m,
                            const std::array<S, C>& v,
                            std::index_sequence<I...>) {
  return {row_combine(m[I], v)...};
}

}  // namespace detail

template <class S, std::size_t R, std::size_t C>
std::array<S, R> apply_signed_matrix(const std::array<std::array<int, C>, R>& m,
                                     const std::array<S, C>& v) {
  return detail::apply_rows(m, v, std::make_index_sequence<R>{});
}

// Direct two-output filtering: 6 multiplications, 4 additions.
template <class S>
OutPair<S> naive_pair(const Tile4<S>& x, const Taps3<S>& h) {
  return {x.x0 * h.h0 + x.x1 * h.h1 + x.x2 * h.h2,
          x.x1 * h.h0 + x.x2 * h.h1 + x.x3 * h.h2};
}

// Closed-form tap transform. The halvings round per the scalar's semantics;
// fixed-point callers that need losslessness for integer taps use a format
// with at least one fractional bit (see FixedFormat::with_guard_bit).
template <class S>
TransformedTaps<S> precompute_taps(const Taps3<S>& h) {
  const S sum = h.h0 + h.h1 + h.h2;
  const S diff = h.h0 - h.h1 + h.h2;
  return {h.h0, halve(sum), halve(diff), h.h2};
}

// Same result via the two sparse matrix stages and the diagonal halving.
template <class S>
TransformedTaps<S> precompute_taps_factored(const Taps3<S>& h) {
  const TransformConstants& k = transform_constants();
  const std::array<S, 3> hv{h.h0, h.h1, h.h2};
  const std::array<S, 5> t = apply_signed_matrix(k.tap_stage1, hv);
  const std::array<S, 4> w = apply_signed_matrix(k.tap_stage2, t);
  auto scale = [&](std::size_t i) {
    return k.tap_scaling_halved[i] ? halve(w[i]) : w[i];
  };
  return {scale(0), scale(1), scale(2), scale(3)};
}

// Minimal filtering kernel: 4 multiplications, 8 two-input-equivalent
// additions (4 pre-additions plus two 3-input accumulations, folded left
// to right).
template <class S>
OutPair<S> winograd_pair(const Tile4<S>& x, const TransformedTaps<S>& s) {
  const S m1 = (x.x0 - x.x2) * s.s0;
  const S m2 = (x.x1 + x.x2) * s.s1;
  const S m3 = (x.x2 - x.x1) * s.s2;
  const S m4 = (x.x1 - x.x3) * s.s3;
  return {m1 + m2 + m3, m2 - m3 - m4};
}

// Kernel in explicit staged matrix form; agrees with winograd_pair on all
// inputs in exact mode.
template <class S>
OutPair<S> winograd_pair_matrix(const Tile4<S>& x, const TransformedTaps<S>& s,
                                const TransformConstants& k) {
  const std::array<S, 4> xv{x.x0, x.x1, x.x2, x.x3};
  const std::array<S, 4> u = apply_signed_matrix(k.input_transform, xv);
  const std::array<S, 4> sv{s.s0, s.s1, s.s2, s.s3};
  const std::array<S, 4> v{u[0] * sv[0], u[1] * sv[1], u[2] * sv[2],
                           u[3] * sv[3]};
  const std::array<S, 2> y = apply_signed_matrix(k.output_transform, v);
  return {y[0], y[1]};
}

}  // namespace winofir
