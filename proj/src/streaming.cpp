#include "winofir/streaming.hpp"

#include "winofir/errors.hpp"

namespace winofir {

std::string_view to_string(Mode m) {
  return m == Mode::naive ? "naive" : "winograd";
}

Mode parse_mode(std::string_view name) {
  if (name == "naive") return Mode::naive;
  if (name == "winograd") return Mode::winograd;
  throw ParseError("unknown mode '" + std::string(name) + "'");
}

std::vector<TileSlot> tile_schedule(std::size_t n) {
  if (n < 3) throw std::invalid_argument("signal must have at least 3 samples");
  const std::size_t n_out = n - 2;
  std::vector<TileSlot> slots;
  slots.reserve(n_out / 2 + 1);
  for (std::size_t start = 0; start + 1 < n_out; start += 2) {
    slots.push_back({start, true});
  }
  if (n_out % 2 != 0) slots.push_back({n_out - 1, false});
  return slots;
}

std::size_t convolve_multiplications(Mode mode, std::size_t n) {
  if (n < 3) throw std::invalid_argument("signal must have at least 3 samples");
  const std::size_t n_out = n - 2;
  if (mode == Mode::naive) return 3 * n_out;
  return 4 * (n_out / 2) + (n_out % 2 != 0 ? 3 : 0);
}

}  // namespace winofir
