#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "winofir/winograd.hpp"

namespace winofir {

enum class NodeKind {
  input,
  output,
  constant,     // multiplication by a fixed rational (only +-1 and +-1/2 arise)
  multiplier,   // general two-operand product
  adder,        // algebraic adder, arity 2 or 3, per-port signs
  tap_register  // register-memory cell holding a precomputed tap value
};

struct GraphNode {
  int id = -1;
  NodeKind kind = NodeKind::input;
  std::string label;
  int arity = 0;            // adder only: 2 or 3
  std::string sign_pattern; // adder only: '+'/'-' per port
  int const_num = 1;        // constant only
  int const_den = 1;
};

struct GraphEdge {
  int producer = -1;
  int consumer = -1;
  int port = 0;
  bool operator==(const GraphEdge&) const = default;
};

// Acyclic operator network mirroring the hardware structure: sign changes
// live on adder in-ports, never as separate nodes. Immutable once built;
// shareable across threads.
class DataflowGraph {
 public:
  explicit DataflowGraph(std::string name) : name_(std::move(name)) {}

  int add_input(std::string label);
  int add_tap_register(std::string label);
  int add_multiplier(std::string label, int lhs, int rhs);
  int add_adder(std::string label, std::span<const int> operands,
                std::string sign_pattern);
  int add_constant(std::string label, int num, int den, int operand);
  int add_output(std::string label, int producer);

  const std::string& name() const { return name_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<int>& inputs() const { return inputs_; }
  const std::vector<int>& tap_registers() const { return tap_registers_; }
  const std::vector<int>& outputs() const { return outputs_; }

  // Operands of a node, indexed by port.
  std::vector<int> operands_of(int node) const;
  std::vector<int> consumers_of(int node) const;

  // Kahn order over all nodes; throws std::logic_error on a cycle.
  std::vector<int> topological_order() const;

  // Structural checks: acyclicity, port arities, every output reachable
  // from the inputs. Throws std::logic_error on violation.
  void validate() const;

  // Longest path counted in operator stages (adders, multipliers and
  // constants; inputs, registers and outputs are free).
  int longest_operator_path() const;

 private:
  int add_node(GraphNode node);
  void connect(int producer, int consumer, int port);

  std::string name_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<int> inputs_;
  std::vector<int> tap_registers_;
  std::vector<int> outputs_;
};

// Operator counts extracted structurally from a graph. A 3-input adder
// counts as two 2-input equivalents. The pre/post split records whether an
// adder feeds a multiplier operand (pre) or accumulates products (post);
// the DSP packing model needs it because input and output adders of a DSP
// block are distinct resources.
struct OperatorInventory {
  int multipliers = 0;
  int adders_2in = 0;
  int adders_3in = 0;
  int constant_scalers = 0;  // halving taps; costed as wiring, not adders
  int pre_adders_2in_equiv = 0;
  int post_adders_2in_equiv = 0;

  int adders_2in_equiv() const { return adders_2in + 2 * adders_3in; }

  bool operator==(const OperatorInventory&) const = default;
};

OperatorInventory extract_inventory(const DataflowGraph& g);

// Fig-style builders. Tap/filter values enter through tap_register nodes,
// so the winograd graph has 4 inputs plus 4 registers, the naive graph
// 4 inputs plus 3 registers.
DataflowGraph build_winograd_graph();
DataflowGraph build_naive_graph(bool three_input_accumulators = true);
DataflowGraph build_precompute_graph();

// Deterministic Graphviz text; '-' adder ports are drawn as dashed edges.
std::string export_dot(const DataflowGraph& g);

struct EvalCounts {
  int multiplications = 0;
  int additions_2in = 0;
  int additions_3in = 0;
  int constant_scalings = 0;
  bool operator==(const EvalCounts&) const = default;
};

template <class S>
struct EvalResult {
  std::vector<S> outputs;
  EvalCounts counts;
};

// Topological-order evaluation. `values` binds the input nodes first, then
// the tap registers, each in insertion order.
template <class S>
EvalResult<S> evaluate_graph(const DataflowGraph& g, std::span<const S> values) {
  const std::size_t expected = g.inputs().size() + g.tap_registers().size();
  if (values.size() != expected) {
    throw std::invalid_argument("graph expects " + std::to_string(expected) +
                                " bound values, got " +
                                std::to_string(values.size()));
  }
  g.validate();

  std::vector<std::optional<S>> slot(g.nodes().size());
  std::size_t next = 0;
  for (int id : g.inputs()) slot[id] = values[next++];
  for (int id : g.tap_registers()) slot[id] = values[next++];

  EvalResult<S> result;
  for (int id : g.topological_order()) {
    const GraphNode& node = g.nodes()[id];
    if (node.kind == NodeKind::input || node.kind == NodeKind::tap_register) {
      continue;
    }
    const std::vector<int> ops = g.operands_of(id);
    switch (node.kind) {
      case NodeKind::multiplier:
        slot[id] = *slot[ops[0]] * *slot[ops[1]];
        result.counts.multiplications++;
        break;
      case NodeKind::adder: {
        std::array<int, 3> signs{0, 0, 0};
        for (int p = 0; p < node.arity; ++p) {
          signs[p] = node.sign_pattern[p] == '-' ? -1 : 1;
        }
        std::optional<S> acc;
        // Same seed-positive folding as the kernels' matrix rows.
        int seed = -1;
        for (int p = 0; p < node.arity; ++p) {
          if (signs[p] > 0) {
            seed = p;
            break;
          }
        }
        if (seed >= 0) acc = *slot[ops[seed]];
        for (int p = 0; p < node.arity; ++p) {
          if (p == seed) continue;
          const S& v = *slot[ops[p]];
          if (!acc) {
            acc = signs[p] > 0 ? v : -v;
          } else {
            acc = signs[p] > 0 ? *std::move(acc) + v : *std::move(acc) - v;
          }
        }
        slot[id] = *std::move(acc);
        (node.arity == 2 ? result.counts.additions_2in
                         : result.counts.additions_3in)++;
        break;
      }
      case NodeKind::constant: {
        const S& v = *slot[ops[0]];
        S scaled = node.const_num >= 0 ? v : -v;
        if (node.const_den == 2) {
          scaled = halve(scaled);
        } else if (node.const_den != 1) {
          throw std::logic_error("unsupported constant denominator");
        }
        if (std::abs(node.const_num) != 1) {
          throw std::logic_error("unsupported constant numerator");
        }
        slot[id] = std::move(scaled);
        result.counts.constant_scalings++;
        break;
      }
      case NodeKind::output:
        slot[id] = *slot[ops[0]];
        break;
      default:
        break;
    }
  }

  result.outputs.reserve(g.outputs().size());
  for (int id : g.outputs()) result.outputs.push_back(*slot[id]);
  return result;
}

}  // namespace winofir
