#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "winofir/winograd.hpp"

namespace winofir {

// Cycle math for K parallel modules issuing one tile per cycle each with a
// fixed pipeline latency: last tile issues at cycle ceil(n/k)-1, so the run
// occupies ceil(n/k) + depth cycles.
long cluster_total_cycles(std::size_t tiles, int modules, int pipeline_depth);

template <class S>
struct SimRun {
  std::vector<OutPair<S>> outputs;        // one per tile, in order
  std::vector<long> completion_cycle;     // tile i completes at this cycle
  long total_cycles = 0;
};

// Behavioural model of the filtering module of the hardware structure: a
// register memory holding the transformed taps, loaded once before any tile
// is accepted, then one tile in flight per pipeline stage. pipeline_depth 0
// is pure combinational. Single-owner mutable; run one simulation per
// instance at a time.
template <class S>
class ModuleSim {
 public:
  explicit ModuleSim(int pipeline_depth = 3, int modules = 1)
      : depth_(pipeline_depth), modules_(modules) {
    if (pipeline_depth < 0) {
      throw std::invalid_argument("pipeline depth must be >= 0");
    }
    if (modules < 1) {
      throw std::invalid_argument("cluster needs at least one module");
    }
  }

  int pipeline_depth() const { return depth_; }
  int modules() const { return modules_; }
  bool loaded() const { return taps_.has_value(); }

  void load_taps(const TransformedTaps<S>& taps) { taps_ = taps; }

  SimRun<S> run(std::span<const Tile4<S>> tiles) const {
    if (!taps_) {
      throw std::logic_error(
          "tile submitted before the tap registers were loaded");
    }
    SimRun<S> result;
    result.outputs.reserve(tiles.size());
    result.completion_cycle.reserve(tiles.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      result.outputs.push_back(winograd_pair(tiles[i], *taps_));
      // Round-robin issue: module (i mod K) accepts tile i at cycle i/K.
      result.completion_cycle.push_back(
          static_cast<long>(i / static_cast<std::size_t>(modules_)) + depth_);
    }
    result.total_cycles = cluster_total_cycles(tiles.size(), modules_, depth_);
    return result;
  }

 private:
  int depth_;
  int modules_;
  std::optional<TransformedTaps<S>> taps_;
};

}  // namespace winofir
