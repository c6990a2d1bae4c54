#include "winofir/dataflow.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace winofir {

namespace {

GraphNode make_node(NodeKind kind, std::string label) {
  GraphNode node;
  node.kind = kind;
  node.label = std::move(label);
  return node;
}

}  // namespace

int DataflowGraph::add_node(GraphNode node) {
  node.id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

void DataflowGraph::connect(int producer, int consumer, int port) {
  if (producer < 0 || producer >= static_cast<int>(nodes_.size())) {
    throw std::logic_error("edge from unknown node");
  }
  edges_.push_back({producer, consumer, port});
}

int DataflowGraph::add_input(std::string label) {
  const int id = add_node(make_node(NodeKind::input, std::move(label)));
  inputs_.push_back(id);
  return id;
}

int DataflowGraph::add_tap_register(std::string label) {
  const int id = add_node(make_node(NodeKind::tap_register, std::move(label)));
  tap_registers_.push_back(id);
  return id;
}

int DataflowGraph::add_multiplier(std::string label, int lhs, int rhs) {
  const int id = add_node(make_node(NodeKind::multiplier, std::move(label)));
  connect(lhs, id, 0);
  connect(rhs, id, 1);
  return id;
}

int DataflowGraph::add_adder(std::string label, std::span<const int> operands,
                             std::string sign_pattern) {
  if (operands.size() < 2 || operands.size() > 3) {
    throw std::logic_error("adder arity must be 2 or 3");
  }
  if (sign_pattern.size() != operands.size()) {
    throw std::logic_error("sign pattern length must equal adder arity");
  }
  for (char c : sign_pattern) {
    if (c != '+' && c != '-') throw std::logic_error("bad sign pattern");
  }
  GraphNode node = make_node(NodeKind::adder, std::move(label));
  node.arity = static_cast<int>(operands.size());
  node.sign_pattern = std::move(sign_pattern);
  const int id = add_node(std::move(node));
  for (std::size_t p = 0; p < operands.size(); ++p) {
    connect(operands[p], id, static_cast<int>(p));
  }
  return id;
}

int DataflowGraph::add_constant(std::string label, int num, int den, int operand) {
  GraphNode node = make_node(NodeKind::constant, std::move(label));
  node.const_num = num;
  node.const_den = den;
  const int id = add_node(std::move(node));
  connect(operand, id, 0);
  return id;
}

int DataflowGraph::add_output(std::string label, int producer) {
  const int id = add_node(make_node(NodeKind::output, std::move(label)));
  connect(producer, id, 0);
  outputs_.push_back(id);
  return id;
}

std::vector<int> DataflowGraph::operands_of(int node) const {
  std::map<int, int> by_port;
  for (const GraphEdge& e : edges_) {
    if (e.consumer == node) by_port[e.port] = e.producer;
  }
  std::vector<int> out;
  out.reserve(by_port.size());
  for (const auto& [port, producer] : by_port) out.push_back(producer);
  return out;
}

std::vector<int> DataflowGraph::consumers_of(int node) const {
  std::vector<int> out;
  for (const GraphEdge& e : edges_) {
    if (e.producer == node) out.push_back(e.consumer);
  }
  return out;
}

std::vector<int> DataflowGraph::topological_order() const {
  std::vector<int> indegree(nodes_.size(), 0);
  for (const GraphEdge& e : edges_) indegree[e.consumer]++;
  std::vector<int> ready;
  for (const GraphNode& n : nodes_) {
    if (indegree[n.id] == 0) ready.push_back(n.id);
  }
  std::vector<int> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    const int id = ready.front();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const GraphEdge& e : edges_) {
      if (e.producer == id && --indegree[e.consumer] == 0) {
        ready.push_back(e.consumer);
      }
    }
  }
  if (order.size() != nodes_.size()) {
    throw std::logic_error("dataflow graph contains a cycle");
  }
  return order;
}

void DataflowGraph::validate() const {
  const std::vector<int> order = topological_order();  // throws on cycle

  for (const GraphNode& n : nodes_) {
    const std::size_t in_count = operands_of(n.id).size();
    std::size_t expected = 0;
    switch (n.kind) {
      case NodeKind::input:
      case NodeKind::tap_register: expected = 0; break;
      case NodeKind::multiplier: expected = 2; break;
      case NodeKind::adder: expected = static_cast<std::size_t>(n.arity); break;
      case NodeKind::constant:
      case NodeKind::output: expected = 1; break;
    }
    if (in_count != expected) {
      throw std::logic_error("node '" + n.label + "' has " +
                             std::to_string(in_count) + " operands, expected " +
                             std::to_string(expected));
    }
  }

  // Every output must be reachable from a source (input or register).
  std::vector<bool> reachable(nodes_.size(), false);
  for (int id : inputs_) reachable[id] = true;
  for (int id : tap_registers_) reachable[id] = true;
  for (int id : order) {
    if (reachable[id]) continue;
    const std::vector<int> ops = operands_of(id);
    reachable[id] = !ops.empty() &&
                    std::all_of(ops.begin(), ops.end(),
                                [&](int o) { return reachable[o]; });
  }
  for (int id : outputs_) {
    if (!reachable[id]) {
      throw std::logic_error("output '" + nodes_[id].label +
                             "' is not reachable from the inputs");
    }
  }
}

int DataflowGraph::longest_operator_path() const {
  std::vector<int> depth(nodes_.size(), 0);
  int best = 0;
  for (int id : topological_order()) {
    const GraphNode& n = nodes_[id];
    int in_depth = 0;
    for (int o : operands_of(id)) in_depth = std::max(in_depth, depth[o]);
    const bool is_operator = n.kind == NodeKind::multiplier ||
                             n.kind == NodeKind::adder ||
                             n.kind == NodeKind::constant;
    depth[id] = in_depth + (is_operator ? 1 : 0);
    best = std::max(best, depth[id]);
  }
  return best;
}

OperatorInventory extract_inventory(const DataflowGraph& g) {
  OperatorInventory inv;
  for (const GraphNode& n : g.nodes()) {
    switch (n.kind) {
      case NodeKind::multiplier:
        inv.multipliers++;
        break;
      case NodeKind::adder: {
        const int equiv = n.arity - 1;
        (n.arity == 2 ? inv.adders_2in : inv.adders_3in)++;
        const std::vector<int> consumers = g.consumers_of(n.id);
        const bool feeds_multiplier = std::any_of(
            consumers.begin(), consumers.end(), [&](int c) {
              return g.nodes()[c].kind == NodeKind::multiplier;
            });
        (feeds_multiplier ? inv.pre_adders_2in_equiv
                          : inv.post_adders_2in_equiv) += equiv;
        break;
      }
      case NodeKind::constant:
        inv.constant_scalers++;
        break;
      default:
        break;
    }
  }
  return inv;
}

DataflowGraph build_winograd_graph() {
  DataflowGraph g("winograd_pair");
  const int x0 = g.add_input("x0");
  const int x1 = g.add_input("x1");
  const int x2 = g.add_input("x2");
  const int x3 = g.add_input("x3");
  const int s0 = g.add_tap_register("s0");
  const int s1 = g.add_tap_register("s1");
  const int s2 = g.add_tap_register("s2");
  const int s3 = g.add_tap_register("s3");

  // Pre-adders, sign rows matching the input transform.
  const int a0 = g.add_adder("x0-x2", std::array{x0, x2}, "+-");
  const int a1 = g.add_adder("x1+x2", std::array{x1, x2}, "++");
  const int a2 = g.add_adder("x2-x1", std::array{x2, x1}, "+-");
  const int a3 = g.add_adder("x1-x3", std::array{x1, x3}, "+-");

  const int p0 = g.add_multiplier("p0", a0, s0);
  const int p1 = g.add_multiplier("p1", a1, s1);
  const int p2 = g.add_multiplier("p2", a2, s2);
  const int p3 = g.add_multiplier("p3", a3, s3);

  const int acc0 = g.add_adder("y0_sum", std::array{p0, p1, p2}, "+++");
  const int acc1 = g.add_adder("y1_sum", std::array{p1, p2, p3}, "+--");

  g.add_output("y0", acc0);
  g.add_output("y1", acc1);
  return g;
}

DataflowGraph build_naive_graph(bool three_input_accumulators) {
  DataflowGraph g("naive_pair");
  const int x0 = g.add_input("x0");
  const int x1 = g.add_input("x1");
  const int x2 = g.add_input("x2");
  const int x3 = g.add_input("x3");
  const int h0 = g.add_tap_register("h0");
  const int h1 = g.add_tap_register("h1");
  const int h2 = g.add_tap_register("h2");

  const int p00 = g.add_multiplier("x0*h0", x0, h0);
  const int p01 = g.add_multiplier("x1*h1", x1, h1);
  const int p02 = g.add_multiplier("x2*h2", x2, h2);
  const int p10 = g.add_multiplier("x1*h0", x1, h0);
  const int p11 = g.add_multiplier("x2*h1", x2, h1);
  const int p12 = g.add_multiplier("x3*h2", x3, h2);

  int y0 = -1;
  int y1 = -1;
  if (three_input_accumulators) {
    y0 = g.add_adder("y0_sum", std::array{p00, p01, p02}, "+++");
    y1 = g.add_adder("y1_sum", std::array{p10, p11, p12}, "+++");
  } else {
    const int t0 = g.add_adder("y0_partial", std::array{p00, p01}, "++");
    const int t1 = g.add_adder("y1_partial", std::array{p10, p11}, "++");
    y0 = g.add_adder("y0_sum", std::array{t0, p02}, "++");
    y1 = g.add_adder("y1_sum", std::array{t1, p12}, "++");
  }
  g.add_output("y0", y0);
  g.add_output("y1", y1);
  return g;
}

DataflowGraph build_precompute_graph() {
  DataflowGraph g("precompute_taps");
  const int h0 = g.add_input("h0");
  const int h1 = g.add_input("h1");
  const int h2 = g.add_input("h2");

  const int t = g.add_adder("h0+h2", std::array{h0, h2}, "++");
  const int w1 = g.add_adder("h1+(h0+h2)", std::array{h1, t}, "++");
  const int w2 = g.add_adder("(h0+h2)-h1", std::array{t, h1}, "+-");
  const int c1 = g.add_constant("half1", 1, 2, w1);
  const int c2 = g.add_constant("half2", 1, 2, w2);

  g.add_output("s0", h0);
  g.add_output("s1", c1);
  g.add_output("s2", c2);
  g.add_output("s3", h2);
  return g;
}

std::string export_dot(const DataflowGraph& g) {
  std::ostringstream os;
  os << "digraph " << g.name() << " {\n";
  os << "  rankdir=LR;\n";
  for (const GraphNode& n : g.nodes()) {
    os << "  n" << n.id << " [label=\"" << n.label << "\"";
    switch (n.kind) {
      case NodeKind::input:
        os << " shape=plaintext op=input";
        break;
      case NodeKind::output:
        os << " shape=plaintext op=output";
        break;
      case NodeKind::tap_register:
        os << " shape=box op=register";
        break;
      case NodeKind::multiplier:
        os << " shape=circle op=mul";
        break;
      case NodeKind::adder:
        os << " shape=circle op=add" << n.arity;
        break;
      case NodeKind::constant:
        os << " shape=circle op=const";
        break;
    }
    os << "];\n";
  }
  for (const GraphEdge& e : g.edges()) {
    const GraphNode& consumer = g.nodes()[e.consumer];
    const bool negated = consumer.kind == NodeKind::adder &&
                         consumer.sign_pattern[e.port] == '-';
    os << "  n" << e.producer << " -> n" << e.consumer << " [in=" << e.port;
    if (negated) os << " style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace winofir
