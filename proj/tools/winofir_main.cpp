// Command-line front end: convolve signals, precompute taps, emit cost and
// DSP-packing reports, export dataflow diagrams, and run the verification
// suite. Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "winofir/counted.hpp"
#include "winofir/dataflow.hpp"
#include "winofir/errors.hpp"
#include "winofir/hw_model.hpp"
#include "winofir/io_formats.hpp"
#include "winofir/module_sim.hpp"
#include "winofir/scalar.hpp"
#include "winofir/streaming.hpp"

using namespace winofir;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

FixedFormat parse_fixed_flag(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() < 2 || parts.size() > 4) {
    throw UsageError("--fixed expects total,frac[,overflow[,rounding]]");
  }
  try {
    const int total = std::stoi(parts[0]);
    const int frac = std::stoi(parts[1]);
    const OverflowPolicy overflow =
        parts.size() > 2 ? parse_overflow_policy(parts[2]) : OverflowPolicy::saturate;
    const RoundingMode rounding =
        parts.size() > 3 ? parse_rounding_mode(parts[3]) : RoundingMode::nearest_even;
    return FixedFormat::validated(total, frac, overflow, rounding);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --fixed value: ") + e.what());
  }
}

DspBlockSpec parse_dsp_flag(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 3) {
    throw UsageError("--dsp expects multipliers,input_adders,output_adders");
  }
  try {
    DspBlockSpec spec;
    spec.multipliers = std::stoi(parts[0]);
    spec.input_adders = std::stoi(parts[1]);
    spec.output_adders = std::stoi(parts[2]);
    if (spec.multipliers < 0 || spec.input_adders < 0 || spec.output_adders < 0) {
      throw UsageError("--dsp counts must be >= 0");
    }
    return spec;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --dsp value: ") + e.what());
  }
}

template <class S>
Taps3<S> taps_from_values(const std::vector<ScalarValue>& v);

template <>
Taps3<Rational> taps_from_values(const std::vector<ScalarValue>& v) {
  return {std::get<Rational>(v[0]), std::get<Rational>(v[1]),
          std::get<Rational>(v[2])};
}
template <>
Taps3<double> taps_from_values(const std::vector<ScalarValue>& v) {
  return {std::get<double>(v[0]), std::get<double>(v[1]), std::get<double>(v[2])};
}
template <>
Taps3<Fixed> taps_from_values(const std::vector<ScalarValue>& v) {
  return {std::get<Fixed>(v[0]), std::get<Fixed>(v[1]), std::get<Fixed>(v[2])};
}

std::vector<ScalarValue> parse_taps(const std::string& text,
                                    const BackendSpec& spec) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 3) {
    throw UsageError("--taps expects exactly three values h0,h1,h2");
  }
  std::vector<ScalarValue> taps;
  for (const std::string& p : parts) {
    try {
      taps.push_back(parse_scalar(p, spec));
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad tap value '") + p + "': " + e.what());
    }
  }
  return taps;
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

// Flags set on the command line override the config file, which overrides
// the built-in defaults.
struct ConvolveArgs {
  std::string config_path;
  std::string signal_path;
  std::string signal_format;
  std::string taps;
  std::string mode;
  std::string backend;
  std::string fixed;
  std::string out_path;
  std::string out_format;
  int threads = -1;  // -1: not set
};

RunConfig merge_config(const ConvolveArgs& args) {
  RunConfig config;
  std::string config_path = args.config_path;
  if (config_path.empty()) {
    if (const char* env = std::getenv("WINOFIR_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) config = load_config(config_path);

  if (!args.mode.empty()) config.mode = parse_mode(args.mode);
  if (!args.backend.empty()) config.backend = parse_backend(args.backend);
  if (!args.fixed.empty()) config.fixed_format = parse_fixed_flag(args.fixed);
  if (!args.taps.empty()) config.taps = args.taps;
  if (!args.signal_path.empty()) {
    SignalSource source;
    source.path = args.signal_path;
    source.format = config.signal ? config.signal->format : SignalFormat::csv;
    config.signal = source;
  }
  if (!args.signal_format.empty()) {
    if (!config.signal) throw UsageError("--format needs --signal");
    config.signal->format = parse_signal_format(args.signal_format);
  }
  if (!args.out_path.empty()) config.result_path = args.out_path;
  if (!args.out_format.empty()) {
    config.result_format = parse_signal_format(args.out_format);
  }
  if (args.threads >= 0) config.threads = args.threads;

  if (config.backend == Backend::fixed && !config.fixed_format) {
    throw UsageError("backend fixed requires --fixed total,frac[,...]");
  }
  if (config.backend != Backend::fixed && config.fixed_format) {
    throw UsageError("--fixed is only valid with --backend fixed");
  }
  return config;
}

template <class S>
std::vector<S> unwrap(const std::vector<ScalarValue>& values) {
  std::vector<S> out;
  out.reserve(values.size());
  for (const ScalarValue& v : values) out.push_back(std::get<S>(v));
  return out;
}

template <class S>
std::vector<ScalarValue> wrap(const std::vector<S>& values) {
  std::vector<ScalarValue> out;
  out.reserve(values.size());
  for (const S& v : values) out.emplace_back(v);
  return out;
}

template <class S>
void run_convolve_typed(const RunConfig& config,
                        const std::vector<ScalarValue>& signal,
                        const std::vector<ScalarValue>& taps) {
  const std::vector<S> x = unwrap<S>(signal);
  const Taps3<S> h = taps_from_values<S>(taps);
  const ConvolutionResult<S> result = convolve(x, h, config.mode, config.threads);
  write_values(wrap(result.outputs), *config.result_path, config.result_format,
               config.backend_spec());
  std::cout << "N=" << x.size() << " outputs=" << result.outputs.size()
            << " multiplications="
            << convolve_multiplications(config.mode, x.size())
            << " mode=" << to_string(config.mode)
            << " backend=" << to_string(config.backend) << "\n";
}

int cmd_convolve(const ConvolveArgs& args) {
  const RunConfig config = merge_config(args);

  std::vector<std::string> missing;
  if (!config.signal) missing.push_back("--signal (or config signal.path)");
  if (!config.taps) missing.push_back("--taps (or config taps)");
  if (!config.result_path) missing.push_back("--out (or config outputs.result)");
  if (!missing.empty()) {
    std::string msg = "convolve: missing required inputs:";
    for (const std::string& m : missing) msg += " " + m + ",";
    msg.pop_back();
    throw UsageError(msg);
  }

  const BackendSpec spec = config.backend_spec();
  const std::vector<ScalarValue> signal =
      load_signal(config.signal->path, config.signal->format, spec);
  const std::vector<ScalarValue> taps = parse_taps(*config.taps, spec);

  switch (config.backend) {
    case Backend::exact:
      run_convolve_typed<Rational>(config, signal, taps);
      break;
    case Backend::float64:
      run_convolve_typed<double>(config, signal, taps);
      break;
    case Backend::fixed:
      run_convolve_typed<Fixed>(config, signal, taps);
      break;
  }
  return kExitOk;
}

template <class S>
int precompute_and_print(const std::vector<ScalarValue>& taps) {
  const Taps3<S> h = taps_from_values<S>(taps);
  const TransformedTaps<S> direct = precompute_taps(h);
  const TransformedTaps<S> factored = precompute_taps_factored(h);
  std::cout << format_scalar(ScalarValue{direct.s0}) << " "
            << format_scalar(ScalarValue{direct.s1}) << " "
            << format_scalar(ScalarValue{direct.s2}) << " "
            << format_scalar(ScalarValue{direct.s3}) << "\n";
  if (!(direct == factored)) {
    std::cerr << "precompute: closed-form and factored transforms disagree\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_precompute(const std::string& taps_text, const std::string& backend,
                   const std::string& fixed) {
  BackendSpec spec = BackendSpec::exact();
  if (!backend.empty()) spec.backend = parse_backend(backend);
  if (spec.backend == Backend::fixed) {
    if (fixed.empty()) throw UsageError("backend fixed requires --fixed");
    spec.fixed_format = parse_fixed_flag(fixed);
  } else if (!fixed.empty()) {
    throw UsageError("--fixed is only valid with --backend fixed");
  }
  const std::vector<ScalarValue> taps = parse_taps(taps_text, spec);
  switch (spec.backend) {
    case Backend::exact: return precompute_and_print<Rational>(taps);
    case Backend::float64: return precompute_and_print<double>(taps);
    case Backend::fixed: return precompute_and_print<Fixed>(taps);
  }
  return kExitRuntime;
}

int cmd_report(const std::string& structure, int bits, double mul_coeff,
               double add_coeff, const std::string& dsp,
               const std::string& out_path) {
  if (bits < 1) throw UsageError("--bits must be >= 1");
  if (mul_coeff <= 0.0 || add_coeff <= 0.0) {
    throw UsageError("area coefficients must be positive");
  }
  const Structure s = parse_structure(structure);
  const DspBlockSpec spec =
      dsp.empty() ? DspBlockSpec::stratix_ii() : parse_dsp_flag(dsp);
  const ResourceReport report =
      make_report(s, bits, AreaModel{mul_coeff, add_coeff}, spec);
  emit_text(report_to_json(report), out_path);
  return kExitOk;
}

int cmd_graph(const std::string& which, const std::string& out_path) {
  DataflowGraph g = [&] {
    if (which == "winograd") return build_winograd_graph();
    if (which == "naive") return build_naive_graph();
    if (which == "precompute") return build_precompute_graph();
    throw UsageError("--which must be winograd, naive or precompute");
  }();
  emit_text(export_dot(g), out_path);
  return kExitOk;
}

int cmd_verify(long trials, uint64_t seed) {
  if (trials <= 0) throw UsageError("--trials must be a positive count");

  std::mt19937_64 rng(seed);
  const int64_t mag = 1 << 15;
  auto draw = [&] { return Rational(std::uniform_int_distribution<int64_t>(-mag, mag)(rng)); };

  long passed = 0;
  for (long t = 0; t < trials; ++t) {
    const Tile4<Rational> x{draw(), draw(), draw(), draw()};
    const Rational x4 = draw();
    const Taps3<Rational> h{draw(), draw(), draw()};

    const TransformedTaps<Rational> pre = precompute_taps(h);
    const OutPair<Rational> fast = winograd_pair(x, pre);
    const OutPair<Rational> direct = naive_pair(x, h);
    if (!(fast == direct)) {
      std::cerr << "oracle equivalence failed at trial " << t << ": tile=("
                << x.x0 << "," << x.x1 << "," << x.x2 << "," << x.x3
                << ") taps=(" << h.h0 << "," << h.h1 << "," << h.h2 << ")\n";
      break;
    }
    if (!(precompute_taps_factored(h) == pre)) {
      std::cerr << "factorization identity failed at trial " << t << ": taps=("
                << h.h0 << "," << h.h1 << "," << h.h2 << ")\n";
      break;
    }
    const Tile4<Rational> shifted{x.x1, x.x2, x.x3, x4};
    if (!(fast.y1 == winograd_pair(shifted, pre).y0)) {
      std::cerr << "shift consistency failed at trial " << t << "\n";
      break;
    }
    ++passed;
  }

  std::cout << passed << "/" << trials << " passed\n";
  return passed == trials ? kExitOk : kExitRuntime;
}

int cmd_bench(std::size_t n, int threads, int repeats) {
  if (n < 3) throw UsageError("--n must be >= 3");
  if (repeats < 1) throw UsageError("--repeats must be >= 1");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> signal(n);
  for (double& v : signal) v = dist(rng);
  const Taps3<double> taps{dist(rng), dist(rng), dist(rng)};

  auto time_mode = [&](Mode mode, int nthreads) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const auto result = convolve(signal, taps, mode, nthreads);
      const auto stop = std::chrono::steady_clock::now();
      best = std::min(
          best, std::chrono::duration<double, std::nano>(stop - start).count() /
                    static_cast<double>(result.outputs.size()));
    }
    return best;
  };

  const double naive_ns = time_mode(Mode::naive, 1);
  const double wino_ns = time_mode(Mode::winograd, 1);
  const double par_ns = time_mode(Mode::winograd, threads);

  std::cout << "n=" << n << " repeats=" << repeats << "\n";
  std::cout << "naive    serial      " << naive_ns << " ns/output ("
            << convolve_multiplications(Mode::naive, n) << " mults)\n";
  std::cout << "winograd serial      " << wino_ns << " ns/output ("
            << convolve_multiplications(Mode::winograd, n) << " mults)\n";
  std::cout << "winograd threads=" << threads << "  " << par_ns
            << " ns/output\n";
  std::cout << "serial speedup winograd/naive: " << naive_ns / wino_ns << "x\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Winograd minimal-filtering (F(2,3)) toolkit"};
  app.require_subcommand(1);

  ConvolveArgs conv_args;
  CLI::App* conv = app.add_subcommand(
      "convolve", "Filter a signal with a 3-tap FIR in naive or winograd mode");
  conv->add_option("--signal", conv_args.signal_path, "input signal file");
  conv->add_option("--format", conv_args.signal_format,
                   "signal format: csv, json, raw_f64le, raw_i32le");
  conv->add_option("--taps", conv_args.taps, "filter taps h0,h1,h2");
  conv->add_option("--mode", conv_args.mode, "naive or winograd");
  conv->add_option("--backend", conv_args.backend, "exact, float64 or fixed");
  conv->add_option("--fixed", conv_args.fixed,
                   "fixed-point format total,frac[,overflow[,rounding]]");
  conv->add_option("--out", conv_args.out_path, "result file");
  conv->add_option("--out-format", conv_args.out_format, "result format");
  conv->add_option("--threads", conv_args.threads,
                   "worker threads (0 = OpenMP default)");
  conv->add_option("--config", conv_args.config_path,
                   "JSON config file (WINOFIR_CONFIG sets the default)");

  std::string pre_taps, pre_backend, pre_fixed;
  CLI::App* pre = app.add_subcommand(
      "precompute", "Print the transformed taps via both transform paths");
  pre->add_option("--taps", pre_taps, "filter taps h0,h1,h2")->required();
  pre->add_option("--backend", pre_backend, "exact, float64 or fixed");
  pre->add_option("--fixed", pre_fixed, "fixed-point format");

  std::string cost_structure = "winograd", cost_dsp, cost_out;
  int cost_bits = 16;
  double cost_mul = 1.0, cost_add = 1.0;
  CLI::App* cost = app.add_subcommand(
      "cost", "Operator inventory, area estimate and DSP packing as JSON");
  cost->add_option("--structure", cost_structure, "naive or winograd");
  cost->add_option("--bits", cost_bits, "operand width in bits");
  cost->add_option("--mul-coeff", cost_mul, "area units per bit^2");
  cost->add_option("--add-coeff", cost_add, "area units per bit");
  cost->add_option("--dsp", cost_dsp, "DSP block m,i,o (default Stratix II 4,3,3)");
  cost->add_option("--out", cost_out, "write JSON here instead of stdout");

  std::string map_structure = "winograd", map_dsp, map_out;
  int map_bits = 16;
  CLI::App* map = app.add_subcommand(
      "map-dsp", "Pack a structure into DSP blocks and report the spill");
  map->add_option("--structure", map_structure, "naive or winograd");
  map->add_option("--dsp", map_dsp, "DSP block m,i,o (default Stratix II 4,3,3)");
  map->add_option("--bits", map_bits, "operand width for the bundled area figures");
  map->add_option("--out", map_out, "write JSON here instead of stdout");

  std::string graph_which, graph_out;
  CLI::App* graph = app.add_subcommand("graph", "Export a dataflow diagram as DOT");
  graph->add_option("--which", graph_which, "winograd, naive or precompute")
      ->required();
  graph->add_option("--out", graph_out, "output .dot path (default stdout)");

  long verify_trials = 10000;
  uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the oracle-equivalence, factorization and shift-consistency suites");
  verify->add_option("--trials", verify_trials, "random trials to run");
  verify->add_option("--seed", verify_seed, "RNG seed");

  std::size_t bench_n = 1u << 20;
  int bench_threads = 0, bench_repeats = 5;
  CLI::App* bench = app.add_subcommand(
      "bench", "Wall-clock per-output timing of both modes (informational)");
  bench->add_option("--n", bench_n, "signal length");
  bench->add_option("--threads", bench_threads, "threads for the parallel run");
  bench->add_option("--repeats", bench_repeats, "repetitions, best is kept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (conv->parsed()) return cmd_convolve(conv_args);
    if (pre->parsed()) return cmd_precompute(pre_taps, pre_backend, pre_fixed);
    if (cost->parsed()) {
      return cmd_report(cost_structure, cost_bits, cost_mul, cost_add, cost_dsp,
                        cost_out);
    }
    if (map->parsed()) {
      return cmd_report(map_structure, map_bits, 1.0, 1.0, map_dsp, map_out);
    }
    if (graph->parsed()) return cmd_graph(graph_which, graph_out);
    if (verify->parsed()) return cmd_verify(verify_trials, verify_seed);
    if (bench->parsed()) return cmd_bench(bench_n, bench_threads, bench_repeats);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
