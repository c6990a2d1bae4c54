#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "winofir/hw_model.hpp"
#include "winofir/scalar.hpp"
#include "winofir/streaming.hpp"

namespace winofir {

enum class SignalFormat { csv, json, raw_f64le, raw_i32le };

std::string_view to_string(SignalFormat f);
SignalFormat parse_signal_format(std::string_view name);

// File encodings, identical on load and store:
//   csv        one value per line; exact values as decimals or "num/den",
//              float64 as round-trip decimals; fixed-point files carry a
//              "# fixed <total> <frac> <overflow> <rounding>" header line
//              followed by raw register units
//   json       flat array; exact integers as numbers, other rationals as
//              "num/den" strings, fixed-point as raw register units
//   raw_f64le  packed little-endian binary64
//   raw_i32le  packed little-endian int32 (raw register units for fixed)
// Binary sizes are inferred from the file length. Writes refuse values the
// format cannot represent exactly, so anything stored reloads identically.
std::vector<ScalarValue> load_values(const std::filesystem::path& path,
                                     SignalFormat format,
                                     const BackendSpec& backend);

// load_values plus the signal-length precondition (>= 3 samples).
std::vector<ScalarValue> load_signal(const std::filesystem::path& path,
                                     SignalFormat format,
                                     const BackendSpec& backend);

void write_values(const std::vector<ScalarValue>& values,
                  const std::filesystem::path& path, SignalFormat format,
                  const BackendSpec& backend);

struct SignalSource {
  std::string path;
  SignalFormat format = SignalFormat::csv;
  bool operator==(const SignalSource&) const = default;
};

// Run configuration; every field has a default so "{}" is a valid document.
// fixed_format must be present exactly when backend is fixed.
struct RunConfig {
  Mode mode = Mode::winograd;
  Backend backend = Backend::exact;
  std::optional<FixedFormat> fixed_format;
  std::optional<std::string> taps;  // inline "h0,h1,h2"
  std::optional<SignalSource> signal;
  std::optional<std::string> result_path;
  SignalFormat result_format = SignalFormat::csv;
  std::optional<std::string> report_path;
  DspBlockSpec dsp_spec = DspBlockSpec::stratix_ii();
  AreaModel area_model;
  int threads = 1;

  BackendSpec backend_spec() const;

  bool operator==(const RunConfig&) const = default;
};

// Strict parser: unknown keys are rejected, missing conditional fields are
// reported together.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& origin);

// Canonical form: every field materialized, keys sorted, two-space indent.
// parse_config(save_config(c)) == c, and canonical documents round-trip
// byte-identically.
std::string save_config(const RunConfig& config);

}  // namespace winofir
