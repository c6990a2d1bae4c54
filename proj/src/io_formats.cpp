#include "winofir/io_formats.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "winofir/errors.hpp"

namespace winofir {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& data,
                bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int64_t parse_int64(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": bad integer '" + text + "'");
  }
}

double parse_finite_double(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw ParseError(where + ": bad float64 literal '" + text + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(where + ": non-finite value '" + text + "'");
  }
  return v;
}

std::string fixed_header(const FixedFormat& f) {
  std::ostringstream os;
  os << "# fixed " << f.total_bits << " " << f.frac_bits << " "
     << to_string(f.overflow) << " " << to_string(f.rounding);
  return os.str();
}

void check_fixed_header(const std::string& line, const FixedFormat& expected,
                        const std::string& where) {
  std::istringstream is(line);
  std::string hash, word;
  int total = 0, frac = 0;
  std::string overflow, rounding;
  is >> hash >> word >> total >> frac >> overflow >> rounding;
  if (!is || hash != "#" || word != "fixed") {
    throw ParseError(where + ": malformed fixed-point header '" + line + "'");
  }
  const FixedFormat declared = FixedFormat::validated(
      total, frac, parse_overflow_policy(overflow), parse_rounding_mode(rounding));
  if (!(declared == expected)) {
    throw ParseError(where + ": file format " + to_string(declared) +
                     " does not match requested " + to_string(expected));
  }
}

std::vector<ScalarValue> load_csv(const std::filesystem::path& path,
                                  const BackendSpec& backend) {
  const std::string text = read_file(path, false);
  std::vector<ScalarValue> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (line.front() == '#') {
      if (backend.backend == Backend::fixed && !saw_header && values.empty()) {
        check_fixed_header(line, backend.fixed_format, where);
        saw_header = true;
        continue;
      }
      continue;  // other comments are ignored
    }
    try {
      switch (backend.backend) {
        case Backend::exact:
          values.emplace_back(parse_rational(line));
          break;
        case Backend::float64:
          values.emplace_back(parse_finite_double(line, where));
          break;
        case Backend::fixed:
          values.emplace_back(
              Fixed::from_raw(parse_int64(line, where), backend.fixed_format));
          break;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return values;
}

std::vector<ScalarValue> load_json(const std::filesystem::path& path,
                                   const BackendSpec& backend) {
  const std::string text = read_file(path, false);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError(path.string() + ": expected a flat JSON array");
  }
  std::vector<ScalarValue> values;
  values.reserve(doc.size());
  std::size_t index = 0;
  for (const json& item : doc) {
    const std::string where =
        path.string() + ": element " + std::to_string(index++);
    switch (backend.backend) {
      case Backend::exact:
        if (item.is_number_integer()) {
          values.emplace_back(Rational(BigInt(item.get<int64_t>())));
        } else if (item.is_number_float()) {
          values.emplace_back(rational_from_double(item.get<double>()));
        } else if (item.is_string()) {
          try {
            values.emplace_back(parse_rational(item.get<std::string>()));
          } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
          }
        } else {
          throw ParseError(where + ": expected a number or \"num/den\" string");
        }
        break;
      case Backend::float64:
        if (!item.is_number()) {
          throw ParseError(where + ": expected a number");
        }
        values.emplace_back(item.get<double>());
        break;
      case Backend::fixed: {
        if (!item.is_number_integer()) {
          throw ParseError(where + ": expected a raw integer register value");
        }
        try {
          values.emplace_back(
              Fixed::from_raw(item.get<int64_t>(), backend.fixed_format));
        } catch (const std::exception& e) {
          throw ParseError(where + ": " + e.what());
        }
        break;
      }
    }
  }
  return values;
}

uint64_t load_le(const char* p, int bytes) {
  uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(p[i]);
  }
  return v;
}

void store_le(std::string& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<char>(v & 0xff));
    v >>= 8;
  }
}

std::vector<ScalarValue> load_raw(const std::filesystem::path& path,
                                  SignalFormat format,
                                  const BackendSpec& backend) {
  const std::string bytes = read_file(path, true);
  const int width = format == SignalFormat::raw_f64le ? 8 : 4;
  if (bytes.size() % width != 0) {
    throw ParseError(path.string() + ": size " + std::to_string(bytes.size()) +
                     " is not a multiple of " + std::to_string(width));
  }
  std::vector<ScalarValue> values;
  values.reserve(bytes.size() / width);
  for (std::size_t off = 0; off < bytes.size(); off += width) {
    const std::string where =
        path.string() + ": offset " + std::to_string(off);
    if (format == SignalFormat::raw_f64le) {
      const double d = std::bit_cast<double>(load_le(bytes.data() + off, 8));
      if (!std::isfinite(d)) {
        throw ParseError(where + ": non-finite float64 value");
      }
      switch (backend.backend) {
        case Backend::exact:
          values.emplace_back(rational_from_double(d));
          break;
        case Backend::float64:
          values.emplace_back(d);
          break;
        case Backend::fixed:
          values.emplace_back(fixed_from_double(d, backend.fixed_format).value);
          break;
      }
    } else {
      const auto raw = static_cast<int32_t>(
          static_cast<uint32_t>(load_le(bytes.data() + off, 4)));
      switch (backend.backend) {
        case Backend::exact:
          values.emplace_back(Rational(BigInt(raw)));
          break;
        case Backend::float64:
          values.emplace_back(static_cast<double>(raw));
          break;
        case Backend::fixed:
          try {
            values.emplace_back(Fixed::from_raw(raw, backend.fixed_format));
          } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
          }
          break;
      }
    }
  }
  return values;
}

void require_backend(const ScalarValue& v, const BackendSpec& backend,
                     const std::string& what) {
  if (backend_of(v) != backend.backend) {
    throw BackendMismatchError(what + ": value backend " +
                               std::string(to_string(backend_of(v))) +
                               " does not match " +
                               std::string(to_string(backend.backend)));
  }
  if (backend.backend == Backend::fixed &&
      !(std::get<Fixed>(v).format() == backend.fixed_format)) {
    throw BackendMismatchError(what + ": fixed-point format mismatch");
  }
}

std::string encode_csv(const std::vector<ScalarValue>& values,
                       const BackendSpec& backend) {
  std::ostringstream os;
  if (backend.backend == Backend::fixed) {
    os << fixed_header(backend.fixed_format) << "\n";
  }
  for (const ScalarValue& v : values) {
    if (backend.backend == Backend::fixed) {
      os << std::get<Fixed>(v).raw() << "\n";
    } else {
      os << format_scalar(v) << "\n";
    }
  }
  return os.str();
}

std::string encode_json(const std::vector<ScalarValue>& values,
                        const BackendSpec& backend) {
  json arr = json::array();
  for (const ScalarValue& v : values) {
    switch (backend.backend) {
      case Backend::exact: {
        const Rational& r = std::get<Rational>(v);
        const BigInt num = numerator_of(r);
        if (denominator_of(r) == 1 &&
            num >= std::numeric_limits<int64_t>::min() &&
            num <= std::numeric_limits<int64_t>::max()) {
          arr.push_back(num.convert_to<int64_t>());
        } else {
          arr.push_back(format_rational(r));
        }
        break;
      }
      case Backend::float64:
        arr.push_back(std::get<double>(v));
        break;
      case Backend::fixed:
        arr.push_back(std::get<Fixed>(v).raw());
        break;
    }
  }
  return arr.dump() + "\n";
}

std::string encode_raw(const std::vector<ScalarValue>& values,
                       SignalFormat format, const BackendSpec& backend) {
  std::string bytes;
  bytes.reserve(values.size() * 8);
  for (const ScalarValue& v : values) {
    if (format == SignalFormat::raw_f64le) {
      double d = 0.0;
      switch (backend.backend) {
        case Backend::exact: {
          const Rational& r = std::get<Rational>(v);
          d = rational_to_double(r);
          if (rational_from_double(d) != r) {
            throw std::invalid_argument("value " + format_rational(r) +
                                        " is not binary64-representable; "
                                        "use csv or json for exact results");
          }
          break;
        }
        case Backend::float64:
          d = std::get<double>(v);
          break;
        case Backend::fixed: {
          const Fixed& f = std::get<Fixed>(v);
          d = f.to_double();
          if (rational_from_double(d) != f.to_rational()) {
            throw std::invalid_argument(
                "fixed-point value does not fit binary64; use raw_i32le");
          }
          break;
        }
      }
      store_le(bytes, std::bit_cast<uint64_t>(d), 8);
    } else {
      int64_t raw = 0;
      switch (backend.backend) {
        case Backend::exact: {
          const Rational& r = std::get<Rational>(v);
          if (denominator_of(r) != 1) {
            throw std::invalid_argument("value " + format_rational(r) +
                                        " is not an integer; raw_i32le stores "
                                        "int32 only");
          }
          const BigInt num = numerator_of(r);
          if (num < std::numeric_limits<int32_t>::min() ||
              num > std::numeric_limits<int32_t>::max()) {
            throw std::invalid_argument("value " + format_rational(r) +
                                        " overflows int32");
          }
          raw = num.convert_to<int64_t>();
          break;
        }
        case Backend::float64: {
          const double d = std::get<double>(v);
          if (d != std::floor(d) || d < std::numeric_limits<int32_t>::min() ||
              d > std::numeric_limits<int32_t>::max()) {
            throw std::invalid_argument("float64 value " + format_double(d) +
                                        " is not an int32");
          }
          raw = static_cast<int64_t>(d);
          break;
        }
        case Backend::fixed: {
          raw = std::get<Fixed>(v).raw();
          if (raw < std::numeric_limits<int32_t>::min() ||
              raw > std::numeric_limits<int32_t>::max()) {
            throw std::invalid_argument("raw register value overflows int32");
          }
          break;
        }
      }
      store_le(bytes, static_cast<uint64_t>(static_cast<uint32_t>(raw)), 4);
    }
  }
  return bytes;
}

}  // namespace

std::string_view to_string(SignalFormat f) {
  switch (f) {
    case SignalFormat::csv: return "csv";
    case SignalFormat::json: return "json";
    case SignalFormat::raw_f64le: return "raw_f64le";
    case SignalFormat::raw_i32le: return "raw_i32le";
  }
  return "?";
}

SignalFormat parse_signal_format(std::string_view name) {
  if (name == "csv") return SignalFormat::csv;
  if (name == "json") return SignalFormat::json;
  if (name == "raw_f64le") return SignalFormat::raw_f64le;
  if (name == "raw_i32le") return SignalFormat::raw_i32le;
  throw ParseError("unknown signal format '" + std::string(name) + "'");
}

std::vector<ScalarValue> load_values(const std::filesystem::path& path,
                                     SignalFormat format,
                                     const BackendSpec& backend) {
  switch (format) {
    case SignalFormat::csv: return load_csv(path, backend);
    case SignalFormat::json: return load_json(path, backend);
    default: return load_raw(path, format, backend);
  }
}

std::vector<ScalarValue> load_signal(const std::filesystem::path& path,
                                     SignalFormat format,
                                     const BackendSpec& backend) {
  std::vector<ScalarValue> values = load_values(path, format, backend);
  if (values.size() < 3) {
    throw ParseError(path.string() + ": signal has " +
                     std::to_string(values.size()) +
                     " samples, need at least 3");
  }
  return values;
}

void write_values(const std::vector<ScalarValue>& values,
                  const std::filesystem::path& path, SignalFormat format,
                  const BackendSpec& backend) {
  for (const ScalarValue& v : values) {
    require_backend(v, backend, path.string());
  }
  switch (format) {
    case SignalFormat::csv:
      write_file(path, encode_csv(values, backend), false);
      break;
    case SignalFormat::json:
      write_file(path, encode_json(values, backend), false);
      break;
    default:
      write_file(path, encode_raw(values, format, backend), true);
      break;
  }
}

BackendSpec RunConfig::backend_spec() const {
  if (backend == Backend::fixed) {
    return BackendSpec::fixed(fixed_format.value());
  }
  return {backend, {}};
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& origin, const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ParseError(origin + ": unknown key '" + scope + key + "'");
    }
  }
}

const json* field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string require_string(const json& j, const std::string& origin,
                           const std::string& name) {
  if (!j.is_string()) throw ParseError(origin + ": '" + name + "' must be a string");
  return j.get<std::string>();
}

int require_int(const json& j, const std::string& origin, const std::string& name) {
  if (!j.is_number_integer()) {
    throw ParseError(origin + ": '" + name + "' must be an integer");
  }
  return j.get<int>();
}

double require_number(const json& j, const std::string& origin,
                      const std::string& name) {
  if (!j.is_number()) throw ParseError(origin + ": '" + name + "' must be a number");
  return j.get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": config must be a JSON object");
  reject_unknown_keys(doc,
                      {"mode", "backend", "fixed_format", "taps", "signal",
                       "outputs", "dsp_spec", "area_model", "threads"},
                      origin, "");

  RunConfig config;
  try {
    if (const json* j = field(doc, "mode")) {
      config.mode = parse_mode(require_string(*j, origin, "mode"));
    }
    if (const json* j = field(doc, "backend")) {
      config.backend = parse_backend(require_string(*j, origin, "backend"));
    }
    if (const json* j = field(doc, "fixed_format")) {
      reject_unknown_keys(*j, {"total_bits", "frac_bits", "overflow", "rounding"},
                          origin, "fixed_format.");
      const json* total = field(*j, "total_bits");
      const json* frac = field(*j, "frac_bits");
      if (!total || !frac) {
        throw ParseError(origin +
                         ": fixed_format requires total_bits and frac_bits");
      }
      OverflowPolicy overflow = OverflowPolicy::saturate;
      RoundingMode rounding = RoundingMode::nearest_even;
      if (const json* o = field(*j, "overflow")) {
        overflow = parse_overflow_policy(require_string(*o, origin, "overflow"));
      }
      if (const json* r = field(*j, "rounding")) {
        rounding = parse_rounding_mode(require_string(*r, origin, "rounding"));
      }
      config.fixed_format = FixedFormat::validated(
          require_int(*total, origin, "total_bits"),
          require_int(*frac, origin, "frac_bits"), overflow, rounding);
    }
    if (const json* j = field(doc, "taps")) {
      config.taps = require_string(*j, origin, "taps");
    }
    if (const json* j = field(doc, "signal")) {
      reject_unknown_keys(*j, {"path", "format"}, origin, "signal.");
      const json* path = field(*j, "path");
      if (!path) throw ParseError(origin + ": signal requires a path");
      SignalSource source;
      source.path = require_string(*path, origin, "signal.path");
      if (source.path.empty()) {
        throw ParseError(origin + ": signal.path must be nonempty");
      }
      if (const json* f = field(*j, "format")) {
        source.format =
            parse_signal_format(require_string(*f, origin, "signal.format"));
      }
      config.signal = source;
    }
    if (const json* j = field(doc, "outputs")) {
      reject_unknown_keys(*j, {"result", "result_format", "report"}, origin,
                          "outputs.");
      if (const json* r = field(*j, "result")) {
        config.result_path = require_string(*r, origin, "outputs.result");
        if (config.result_path->empty()) {
          throw ParseError(origin + ": outputs.result must be nonempty");
        }
      }
      if (const json* f = field(*j, "result_format")) {
        config.result_format =
            parse_signal_format(require_string(*f, origin, "outputs.result_format"));
      }
      if (const json* r = field(*j, "report")) {
        config.report_path = require_string(*r, origin, "outputs.report");
        if (config.report_path->empty()) {
          throw ParseError(origin + ": outputs.report must be nonempty");
        }
      }
    }
    if (const json* j = field(doc, "dsp_spec")) {
      reject_unknown_keys(*j, {"multipliers", "input_adders", "output_adders"},
                          origin, "dsp_spec.");
      if (const json* m = field(*j, "multipliers")) {
        config.dsp_spec.multipliers = require_int(*m, origin, "multipliers");
      }
      if (const json* m = field(*j, "input_adders")) {
        config.dsp_spec.input_adders = require_int(*m, origin, "input_adders");
      }
      if (const json* m = field(*j, "output_adders")) {
        config.dsp_spec.output_adders = require_int(*m, origin, "output_adders");
      }
    }
    if (const json* j = field(doc, "area_model")) {
      reject_unknown_keys(*j, {"mul_coeff", "add_coeff"}, origin, "area_model.");
      if (const json* c = field(*j, "mul_coeff")) {
        config.area_model.mul_coeff = require_number(*c, origin, "mul_coeff");
      }
      if (const json* c = field(*j, "add_coeff")) {
        config.area_model.add_coeff = require_number(*c, origin, "add_coeff");
      }
    }
    if (const json* j = field(doc, "threads")) {
      config.threads = require_int(*j, origin, "threads");
      if (config.threads < 0) {
        throw ParseError(origin + ": threads must be >= 0");
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }

  if (config.backend == Backend::fixed && !config.fixed_format) {
    throw ParseError(origin +
                     ": missing required field: fixed_format (backend is fixed)");
  }
  if (config.backend != Backend::fixed && config.fixed_format) {
    throw ParseError(origin + ": fixed_format is only valid with backend=fixed");
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path, false), path.string());
}

std::string save_config(const RunConfig& config) {
  json j;
  j["mode"] = std::string(to_string(config.mode));
  j["backend"] = std::string(to_string(config.backend));
  if (config.fixed_format) {
    j["fixed_format"] = {
        {"total_bits", config.fixed_format->total_bits},
        {"frac_bits", config.fixed_format->frac_bits},
        {"overflow", std::string(to_string(config.fixed_format->overflow))},
        {"rounding", std::string(to_string(config.fixed_format->rounding))},
    };
  } else {
    j["fixed_format"] = nullptr;
  }
  j["taps"] = config.taps ? json(*config.taps) : json(nullptr);
  if (config.signal) {
    j["signal"] = {
        {"path", config.signal->path},
        {"format", std::string(to_string(config.signal->format))},
    };
  } else {
    j["signal"] = nullptr;
  }
  j["outputs"] = {
      {"result", config.result_path ? json(*config.result_path) : json(nullptr)},
      {"result_format", std::string(to_string(config.result_format))},
      {"report", config.report_path ? json(*config.report_path) : json(nullptr)},
  };
  j["dsp_spec"] = {
      {"multipliers", config.dsp_spec.multipliers},
      {"input_adders", config.dsp_spec.input_adders},
      {"output_adders", config.dsp_spec.output_adders},
  };
  j["area_model"] = {
      {"mul_coeff", config.area_model.mul_coeff},
      {"add_coeff", config.area_model.add_coeff},
  };
  j["threads"] = config.threads;
  return j.dump(2) + "\n";
}

}  // namespace winofir
