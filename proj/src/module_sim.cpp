#include "winofir/module_sim.hpp"

namespace winofir {

long cluster_total_cycles(std::size_t tiles, int modules, int pipeline_depth) {
  if (modules < 1) throw std::invalid_argument("cluster needs at least one module");
  if (pipeline_depth < 0) throw std::invalid_argument("pipeline depth must be >= 0");
  if (tiles == 0) return 0;
  const long issue_slots =
      static_cast<long>((tiles + static_cast<std::size_t>(modules) - 1) /
                        static_cast<std::size_t>(modules));
  return issue_slots + pipeline_depth;
}

}  // namespace winofir
