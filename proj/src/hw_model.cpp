#include "winofir/hw_model.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "winofir/errors.hpp"

namespace winofir {

std::string_view to_string(Structure s) {
  return s == Structure::naive ? "naive" : "winograd";
}

Structure parse_structure(std::string_view name) {
  if (name == "naive") return Structure::naive;
  if (name == "winograd") return Structure::winograd;
  throw ParseError("unknown structure '" + std::string(name) + "'");
}

double estimate_area(const OperatorInventory& inv, int bit_width,
                     const AreaModel& m) {
  if (bit_width < 1) throw std::invalid_argument("bit width must be >= 1");
  if (m.mul_coeff <= 0.0 || m.add_coeff <= 0.0) {
    throw std::invalid_argument("area coefficients must be positive");
  }
  const double b = bit_width;
  return m.mul_coeff * b * b * inv.multipliers +
         m.add_coeff * b * inv.adders_2in_equiv();
}

StructureComparison compare_structures(int bit_width, const AreaModel& m) {
  StructureComparison c;
  c.naive_area = estimate_area(extract_inventory(build_naive_graph()), bit_width, m);
  c.winograd_area =
      estimate_area(extract_inventory(build_winograd_graph()), bit_width, m);
  c.ratio = c.winograd_area / c.naive_area;
  return c;
}

DspPacking pack_into_dsp(const OperatorInventory& inv, const DspBlockSpec& spec) {
  if (spec.multipliers < 0 || spec.input_adders < 0 || spec.output_adders < 0) {
    throw std::invalid_argument("DSP block counts must be >= 0");
  }
  DspPacking packing;
  if (inv.multipliers > 0) {
    if (spec.multipliers == 0) {
      throw std::invalid_argument(
          "inventory needs multipliers but the DSP block has none");
    }
    packing.blocks_used =
        (inv.multipliers + spec.multipliers - 1) / spec.multipliers;
  }
  packing.unused_multipliers =
      packing.blocks_used * spec.multipliers - inv.multipliers;

  const int input_capacity = packing.blocks_used * spec.input_adders;
  const int output_capacity = packing.blocks_used * spec.output_adders;
  packing.input_adders_used = std::min(inv.pre_adders_2in_equiv, input_capacity);
  packing.output_adders_used =
      std::min(inv.post_adders_2in_equiv, output_capacity);
  packing.external_adders =
      (inv.pre_adders_2in_equiv - packing.input_adders_used) +
      (inv.post_adders_2in_equiv - packing.output_adders_used);
  return packing;
}

ResourceReport report_for_graph(const DataflowGraph& g, Structure label,
                                int bit_width, const AreaModel& m,
                                const DspBlockSpec& spec) {
  ResourceReport report;
  report.structure = label;
  report.bit_width = bit_width;
  report.inventory = extract_inventory(g);
  const double b = bit_width;
  report.area_mul = m.mul_coeff * b * b * report.inventory.multipliers;
  report.area_add = m.add_coeff * b * report.inventory.adders_2in_equiv();
  report.area_total = estimate_area(report.inventory, bit_width, m);
  report.packing = pack_into_dsp(report.inventory, spec);
  return report;
}

ResourceReport make_report(Structure structure, int bit_width,
                           const AreaModel& m, const DspBlockSpec& spec) {
  const DataflowGraph g = structure == Structure::naive ? build_naive_graph()
                                                        : build_winograd_graph();
  return report_for_graph(g, structure, bit_width, m, spec);
}

std::string report_to_json(const ResourceReport& report) {
  nlohmann::json j;
  j["structure"] = std::string(to_string(report.structure));
  j["bit_width"] = report.bit_width;
  j["inventory"] = {
      {"multipliers", report.inventory.multipliers},
      {"adders_2in", report.inventory.adders_2in},
      {"adders_3in", report.inventory.adders_3in},
  };
  j["area"] = {
      {"total", report.area_total},
      {"mul", report.area_mul},
      {"add", report.area_add},
  };
  j["dsp"] = {
      {"blocks_used", report.packing.blocks_used},
      {"external_adders", report.packing.external_adders},
      {"unused_multipliers", report.packing.unused_multipliers},
  };
  return j.dump(2) + "\n";
}

}  // namespace winofir
