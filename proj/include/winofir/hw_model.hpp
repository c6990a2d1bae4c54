#pragma once

#include <string>

#include "winofir/dataflow.hpp"

namespace winofir {

// Area grows quadratically with operand width for a fully parallel
// multiplier and linearly for an adder; the coefficients calibrate the
// units.
struct AreaModel {
  double mul_coeff = 1.0;  // area units per bit^2 per multiplier
  double add_coeff = 1.0;  // area units per bit per 2-input adder

  bool operator==(const AreaModel&) const = default;
};

// Hardened DSP tile: embedded multipliers plus dedicated adders at the
// block input and output. The Stratix II preset is {4, 3, 3}.
struct DspBlockSpec {
  int multipliers = 4;
  int input_adders = 3;
  int output_adders = 3;

  static DspBlockSpec stratix_ii() { return {4, 3, 3}; }

  bool operator==(const DspBlockSpec&) const = default;
};

struct DspPacking {
  int blocks_used = 0;
  int input_adders_used = 0;   // internal, across all blocks
  int output_adders_used = 0;  // internal, across all blocks
  int external_adders = 0;     // 2-input equivalents spilled to fabric
  int unused_multipliers = 0;

  bool operator==(const DspPacking&) const = default;
};

enum class Structure { naive, winograd };

std::string_view to_string(Structure s);
Structure parse_structure(std::string_view name);

double estimate_area(const OperatorInventory& inv, int bit_width,
                     const AreaModel& m);

struct StructureComparison {
  double naive_area = 0.0;
  double winograd_area = 0.0;
  double ratio = 0.0;  // winograd / naive
};

// Areas of both graph structures at the given width; inventories come from
// graph extraction, never constants.
StructureComparison compare_structures(int bit_width, const AreaModel& m);

// Greedy deterministic packing: blocks = ceil(multipliers / per-block),
// pre-adders fill the input adders in index order, post-adder equivalents
// fill the output adders, the remainder spills to external logic.
DspPacking pack_into_dsp(const OperatorInventory& inv, const DspBlockSpec& spec);

struct ResourceReport {
  Structure structure = Structure::winograd;
  int bit_width = 16;
  OperatorInventory inventory;
  double area_total = 0.0;
  double area_mul = 0.0;
  double area_add = 0.0;
  DspPacking packing;
};

// Report over an explicit graph; make_report wires in the canonical
// builders so structural changes propagate into every report.
ResourceReport report_for_graph(const DataflowGraph& g, Structure label,
                                int bit_width, const AreaModel& m,
                                const DspBlockSpec& spec);

ResourceReport make_report(Structure structure, int bit_width,
                           const AreaModel& m, const DspBlockSpec& spec);

// Stable field names and ordering; golden-tested.
std::string report_to_json(const ResourceReport& report);

}  // namespace winofir
