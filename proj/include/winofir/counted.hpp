#pragma once

#include <atomic>
#include <cstdint>

#include "winofir/rational.hpp"

namespace winofir {

// Global operation tally for instrumented runs. Atomics so that counts stay
// exact when the streaming layer fans tiles out across threads.
struct OpCounters {
  std::atomic<uint64_t> multiplications{0};
  std::atomic<uint64_t> additions{0};  // includes subtractions
  std::atomic<uint64_t> halvings{0};

  void reset() {
    multiplications = 0;
    additions = 0;
    halvings = 0;
  }
};

// Wraps any scalar and tallies every arithmetic operation applied to it.
// Drop-in replacement for the wrapped type in the kernel templates, so the
// operation-count assertions exercise the production code path itself.
template <class S>
class Counted {
 public:
  Counted() = default;
  explicit Counted(S value) : value_(std::move(value)) {}

  const S& value() const { return value_; }

  static OpCounters& counters() {
    static OpCounters instance;
    return instance;
  }

  friend Counted operator+(const Counted& a, const Counted& b) {
    counters().additions.fetch_add(1, std::memory_order_relaxed);
    return Counted(a.value_ + b.value_);
  }
  friend Counted operator-(const Counted& a, const Counted& b) {
    counters().additions.fetch_add(1, std::memory_order_relaxed);
    return Counted(a.value_ - b.value_);
  }
  friend Counted operator*(const Counted& a, const Counted& b) {
    counters().multiplications.fetch_add(1, std::memory_order_relaxed);
    return Counted(a.value_ * b.value_);
  }
  Counted operator-() const { return Counted(-value_); }

  bool operator==(const Counted& other) const = default;

 private:
  S value_{};
};

template <class S>
Counted<S> halve(const Counted<S>& v) {
  Counted<S>::counters().halvings.fetch_add(1, std::memory_order_relaxed);
  return Counted<S>(halve(v.value()));
}

}  // namespace winofir
