#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "test_support.hpp"
#include "winofir/dataflow.hpp"
#include "winofir/module_sim.hpp"

using namespace winofir;

namespace {

std::string golden(const std::string& name) {
  const std::string path = std::string(WINOFIR_GOLDEN_DIR) + "/" + name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Reconstructs an inventory from the emitted node lines alone.
OperatorInventory inventory_from_dot(const std::string& dot) {
  OperatorInventory inv;
  const std::regex node_re("op=([a-z0-9]+)\\]");
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), node_re);
       it != std::sregex_iterator(); ++it) {
    const std::string op = (*it)[1];
    if (op == "mul") inv.multipliers++;
    if (op == "add2") inv.adders_2in++;
    if (op == "add3") inv.adders_3in++;
    if (op == "const") inv.constant_scalers++;
  }
  return inv;
}

std::vector<Rational> rats(std::initializer_list<int64_t> xs) {
  std::vector<Rational> out;
  for (int64_t x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("winograd graph structure") {
  const DataflowGraph g = build_winograd_graph();
  g.validate();

  const OperatorInventory inv = extract_inventory(g);
  CHECK(inv.multipliers == 4);
  CHECK(inv.adders_2in == 4);
  CHECK(inv.adders_3in == 2);
  CHECK(inv.adders_2in_equiv() == 8);
  CHECK(inv.pre_adders_2in_equiv == 4);
  CHECK(inv.post_adders_2in_equiv == 4);
  CHECK(inv.constant_scalers == 0);

  CHECK(g.inputs().size() == 4);
  CHECK(g.tap_registers().size() == 4);
  CHECK(g.outputs().size() == 2);
  CHECK(g.longest_operator_path() == 3);  // adder -> multiplier -> adder
}

TEST_CASE("naive graph structure") {
  for (bool three_input : {true, false}) {
    const DataflowGraph g = build_naive_graph(three_input);
    g.validate();
    const OperatorInventory inv = extract_inventory(g);
    CHECK(inv.multipliers == 6);
    CHECK(inv.adders_2in_equiv() == 4);
    CHECK(inv.pre_adders_2in_equiv == 0);
    CHECK(inv.post_adders_2in_equiv == 4);
    if (three_input) {
      CHECK(inv.adders_2in == 0);
      CHECK(inv.adders_3in == 2);
    } else {
      CHECK(inv.adders_2in == 4);
      CHECK(inv.adders_3in == 0);
    }
  }
}

TEST_CASE("precompute graph evaluates the tap transform") {
  const DataflowGraph g = build_precompute_graph();
  g.validate();
  CHECK(g.inputs().size() == 3);
  CHECK(g.outputs().size() == 4);

  const OperatorInventory inv = extract_inventory(g);
  CHECK(inv.multipliers == 0);
  CHECK(inv.constant_scalers == 2);

  const auto ones = evaluate_graph<Rational>(g, rats({1, 1, 1}));
  CHECK(ones.outputs == std::vector<Rational>{Rational(1), Rational(3, 2),
                                              Rational(1, 2), Rational(1)});
  const auto zeros = evaluate_graph<Rational>(g, rats({0, 0, 0}));
  CHECK(zeros.outputs == std::vector<Rational>(4, Rational(0)));
  CHECK(zeros.counts.constant_scalings == 2);
}

TEST_CASE("graph/function agreement on random inputs") {
  const DataflowGraph wg = build_winograd_graph();
  const DataflowGraph ng = build_naive_graph();
  auto rng = wtest::make_rng(41);

  for (int i = 0; i < 1000; ++i) {
    const auto x = wtest::rand_tile(rng, 1 << 15);
    const auto h = wtest::rand_taps(rng, 1 << 15);
    const auto s = precompute_taps(h);

    const std::vector<Rational> xs{x.x0, x.x1, x.x2, x.x3, s.s0, s.s1, s.s2, s.s3};
    const auto via_graph = evaluate_graph<Rational>(wg, xs);
    const auto direct = winograd_pair(x, s);
    CHECK(via_graph.outputs == std::vector<Rational>{direct.y0, direct.y1});
    CHECK(via_graph.counts ==
          EvalCounts{4, 4, 2, 0});

    const std::vector<Rational> xh{x.x0, x.x1, x.x2, x.x3, h.h0, h.h1, h.h2};
    const auto naive_graph = evaluate_graph<Rational>(ng, xh);
    const auto naive = naive_pair(x, h);
    CHECK(naive_graph.outputs == std::vector<Rational>{naive.y0, naive.y1});
    CHECK(naive_graph.counts.multiplications == 6);

    const DataflowGraph pg = build_precompute_graph();
    const std::vector<Rational> hv{h.h0, h.h1, h.h2};
    const auto pre_graph = evaluate_graph<Rational>(pg, hv);
    CHECK(pre_graph.outputs ==
          std::vector<Rational>{s.s0, s.s1, s.s2, s.s3});
  }
}

TEST_CASE("frozen graph evaluations") {
  const auto s = precompute_taps(wtest::taps_of<Rational>(1, 1, 1));
  const auto w = evaluate_graph<Rational>(
      build_winograd_graph(),
      std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(4),
                            s.s0, s.s1, s.s2, s.s3});
  CHECK(w.outputs == std::vector<Rational>{Rational(6), Rational(9)});
  CHECK(w.counts.multiplications == 4);

  const auto n = evaluate_graph<Rational>(build_naive_graph(),
                                          rats({1, 2, 3, 4, 1, 1, 1}));
  CHECK(n.outputs == std::vector<Rational>{Rational(6), Rational(9)});
  CHECK(n.counts.multiplications == 6);

  const auto z = evaluate_graph<Rational>(build_naive_graph(),
                                          rats({0, 0, 0, 0, 5, 6, 7}));
  CHECK(z.outputs == std::vector<Rational>{Rational(0), Rational(0)});
}

TEST_CASE("evaluation rejects bad bindings and bad graphs") {
  const DataflowGraph g = build_winograd_graph();
  CHECK_THROWS_AS(evaluate_graph<Rational>(g, rats({1, 2, 3})),
                  std::invalid_argument);

  DataflowGraph bad("bad");
  const int a = bad.add_input("a");
  const int sum = bad.add_adder("loop", std::array{a, a}, "++");
  bad.add_output("out", sum);
  CHECK_NOTHROW(bad.validate());

  CHECK_THROWS_AS(bad.add_adder("one", std::array{a}, "+"), std::logic_error);
  CHECK_THROWS_AS(bad.add_adder("signs", std::array{a, a}, "+"),
                  std::logic_error);
}

TEST_CASE("DOT export is deterministic and parses back to the inventory") {
  const std::string wdot = export_dot(build_winograd_graph());
  CHECK(wdot == golden("winograd.dot"));
  CHECK(export_dot(build_winograd_graph()) == wdot);

  for (const char* label : {"\"s0\"", "\"s1\"", "\"s2\"", "\"s3\""}) {
    CHECK(wdot.find(label) != std::string::npos);
  }
  CHECK(inventory_from_dot(wdot).multipliers == 4);
  CHECK(inventory_from_dot(wdot).adders_2in == 4);
  CHECK(inventory_from_dot(wdot).adders_3in == 2);

  const std::string ndot = export_dot(build_naive_graph());
  CHECK(ndot == golden("naive.dot"));
  CHECK(inventory_from_dot(ndot).multipliers == 6);

  const std::string pdot = export_dot(build_precompute_graph());
  CHECK(pdot == golden("precompute.dot"));
  CHECK(inventory_from_dot(pdot).constant_scalers == 2);

  // sign-change edges drawn dashed
  CHECK(wdot.find("style=dashed") != std::string::npos);
}

TEST_CASE("module simulation") {
  auto load_ones = [] {
    ModuleSim<Rational> sim(3);
    sim.load_taps(precompute_taps(wtest::taps_of<Rational>(1, 1, 1)));
    return sim;
  };

  SUBCASE("computes winograd pairs in order") {
    auto sim = load_ones();
    const std::vector<Tile4<Rational>> tiles{
        wtest::tile_of<Rational>(1, 2, 3, 4)};
    const auto run = sim.run(tiles);
    REQUIRE(run.outputs.size() == 1);
    CHECK(run.outputs[0] == OutPair<Rational>{Rational(6), Rational(9)});
  }

  SUBCASE("latency and throughput") {
    auto sim = load_ones();
    std::vector<Tile4<Rational>> tiles(10, wtest::tile_of<Rational>(1, 2, 3, 4));
    const auto run = sim.run(tiles);
    CHECK(run.completion_cycle.front() == 3);
    CHECK(run.completion_cycle.back() == 12);
    CHECK(run.total_cycles == 13);
  }

  SUBCASE("cluster timing") {
    CHECK(cluster_total_cycles(100, 4, 3) == 28);
    CHECK(cluster_total_cycles(0, 4, 3) == 0);
    CHECK(cluster_total_cycles(1, 1, 0) == 1);

    ModuleSim<Rational> cluster(3, 4);
    cluster.load_taps(precompute_taps(wtest::taps_of<Rational>(1, 1, 1)));
    std::vector<Tile4<Rational>> tiles(100, wtest::tile_of<Rational>(1, 2, 3, 4));
    const auto run = cluster.run(tiles);
    CHECK(run.total_cycles == 28);
    CHECK(run.completion_cycle[0] == 3);
    CHECK(run.completion_cycle[3] == 3);  // same issue slot across the cluster
    CHECK(run.completion_cycle[4] == 4);
  }

  SUBCASE("tiles before load are rejected") {
    ModuleSim<Rational> sim(3);
    std::vector<Tile4<Rational>> tiles{wtest::tile_of<Rational>(1, 2, 3, 4)};
    CHECK_THROWS_AS(sim.run(tiles), std::logic_error);
  }

  SUBCASE("results match the kernel regardless of depth") {
    auto rng = wtest::make_rng(42);
    const auto taps = wtest::rand_taps(rng, 1000);
    const auto pre = precompute_taps(taps);
    std::vector<Tile4<Rational>> tiles;
    for (int i = 0; i < 50; ++i) tiles.push_back(wtest::rand_tile(rng, 1000));

    for (int depth : {0, 1, 3, 9}) {
      ModuleSim<Rational> sim(depth);
      sim.load_taps(pre);
      const auto run = sim.run(tiles);
      for (std::size_t i = 0; i < tiles.size(); ++i) {
        CHECK(run.outputs[i] == winograd_pair(tiles[i], pre));
      }
    }
  }
}
