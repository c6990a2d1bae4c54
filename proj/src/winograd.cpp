#include "winofir/winograd.hpp"

namespace winofir {

const TransformConstants& transform_constants() {
  static const TransformConstants k{
      // input_transform
      {{{1, 0, -1, 0},
        {0, 1, 1, 0},
        {0, -1, 1, 0},
        {0, 1, 0, -1}}},
      // output_transform
      {{{1, 1, 1, 0},
        {0, 1, -1, -1}}},
      // tap_scaling_halved
      {false, true, true, false},
      // tap_stage1
      {{{1, 0, 0},
        {0, 1, 0},
        {1, 0, 1},
        {0, -1, 0},
        {0, 0, 1}}},
      // tap_stage2
      {{{1, 0, 0, 0, 0},
        {0, 1, 1, 0, 0},
        {0, 0, 1, 1, 0},
        {0, 0, 0, 0, 1}}},
  };
  return k;
}

}  // namespace winofir
