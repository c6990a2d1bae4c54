#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "winofir/winograd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace winofir {

enum class Mode { naive, winograd };
enum class TailHandling { none, naive_tail };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

template <class S>
using Signal = std::vector<S>;

template <class S>
struct ConvolutionResult {
  std::vector<S> outputs;  // length N - 2
  Mode mode = Mode::winograd;
  TailHandling tail_handling = TailHandling::none;
};

// One kernel invocation: a full pair tile covering outputs (start, start+1)
// from samples x[start..start+3], or a trailing singleton covering output
// `start` alone when the output count is odd.
struct TileSlot {
  std::size_t start = 0;
  bool pair = true;
  bool operator==(const TileSlot&) const = default;
};

// Full-pair tiles at 0,2,4,...; covers outputs 0..n-3 exactly once.
std::vector<TileSlot> tile_schedule(std::size_t n);

// Kernel multiplications needed for a length-n signal: 3 per output for
// the direct sweep, 4 per pair plus 3 for a trailing singleton otherwise.
std::size_t convolve_multiplications(Mode mode, std::size_t n);

// Serial textbook sweep, kept as the reference the parallel paths are
// tested against.
template <class S>
std::vector<S> convolve_reference(std::span<const S> signal,
                                  const Taps3<S>& taps) {
  if (signal.size() < 3) {
    throw std::invalid_argument("signal must have at least 3 samples");
  }
  std::vector<S> out;
  out.reserve(signal.size() - 2);
  for (std::size_t l = 0; l + 2 < signal.size(); ++l) {
    out.push_back(signal[l] * taps.h0 + signal[l + 1] * taps.h1 +
                  signal[l + 2] * taps.h2);
  }
  return out;
}

namespace detail {

template <class S>
S dot3(std::span<const S> x, std::size_t l, const Taps3<S>& h) {
  return x[l] * h.h0 + x[l + 1] * h.h1 + x[l + 2] * h.h2;
}

}  // namespace detail

// Stride-2 sliding-window convolution. Tiles write disjoint output ranges,
// so the schedule may be partitioned across OpenMP workers without changing
// the result; threads == 1 stays serial, threads == 0 uses the OpenMP
// default team size.
template <class S>
ConvolutionResult<S> convolve(std::span<const S> signal, const Taps3<S>& taps,
                              Mode mode, int threads = 1) {
  if (signal.size() < 3) {
    throw std::invalid_argument("signal must have at least 3 samples");
  }
  const std::size_t n_out = signal.size() - 2;
  ConvolutionResult<S> result;
  result.mode = mode;
  result.outputs.resize(n_out);
  S* out = result.outputs.data();

  if (mode == Mode::naive) {
    const auto body = [&](std::size_t l) { out[l] = detail::dot3(signal, l, taps); };
#ifdef _OPENMP
    if (threads != 1) {
      #pragma omp parallel for num_threads(threads > 0 ? threads : omp_get_max_threads())
      for (long long l = 0; l < static_cast<long long>(n_out); ++l) {
        body(static_cast<std::size_t>(l));
      }
      return result;
    }
#endif
    for (std::size_t l = 0; l < n_out; ++l) body(l);
    return result;
  }

  const TransformedTaps<S> pre = precompute_taps(taps);
  const std::vector<TileSlot> schedule = tile_schedule(signal.size());
  result.tail_handling =
      (n_out % 2 != 0) ? TailHandling::naive_tail : TailHandling::none;

  const auto body = [&](const TileSlot& slot) {
    if (slot.pair) {
      const Tile4<S> tile{signal[slot.start], signal[slot.start + 1],
                          signal[slot.start + 2], signal[slot.start + 3]};
      const OutPair<S> pair = winograd_pair(tile, pre);
      out[slot.start] = pair.y0;
      out[slot.start + 1] = pair.y1;
    } else {
      out[slot.start] = detail::dot3(signal, slot.start, taps);
    }
  };
#ifdef _OPENMP
  if (threads != 1) {
    #pragma omp parallel for num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long long i = 0; i < static_cast<long long>(schedule.size()); ++i) {
      body(schedule[static_cast<std::size_t>(i)]);
    }
    return result;
  }
#endif
  for (const TileSlot& slot : schedule) body(slot);
  return result;
}

template <class S>
ConvolutionResult<S> convolve(const std::vector<S>& signal, const Taps3<S>& taps,
                              Mode mode, int threads = 1) {
  return convolve(std::span<const S>(signal), taps, mode, threads);
}

}  // namespace winofir
