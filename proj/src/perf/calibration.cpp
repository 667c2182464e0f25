#include "dprsvm/perf/calibration.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>

#include "dprsvm/errors.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::perf {

namespace {

double real_value(std::string_view v, std::size_t line) {
  auto r = text::parse_real(v);
  if (!r) throw ParseError("bad number '" + std::string(v) + "'", line);
  if (!std::isfinite(*r)) throw NonFiniteError("non-finite value '" + std::string(v) + "'", line);
  return *r;
}

std::int64_t int_value(std::string_view v, std::size_t line) {
  auto r = text::parse_int(v);
  if (!r) throw ParseError("bad integer '" + std::string(v) + "'", line);
  return *r;
}

std::int64_t* latency_field(LatencyParams& p, std::string_view field) {
  if (field == "iteration_latency") return &p.iteration_latency;
  if (field == "initiation_interval") return &p.initiation_interval;
  if (field == "pipeline_depth") return &p.pipeline_depth;
  if (field == "fixed_overhead") return &p.fixed_overhead;
  return nullptr;
}

void apply(Calibration& c, std::string_view key, std::string_view value, std::size_t line) {
  auto footprint = [&] {
    try {
      return fabric::parse_footprint(value);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  };

  if (key == "device.name") {
    if (!text::is_identifier(value)) throw ParseError("bad device name", line);
    c.device.name = std::string(value);
  } else if (key == "device.capacity") {
    c.device.capacity = footprint();
  } else if (key == "device.clock_hz") {
    c.device.clock_hz = real_value(value, line);
  } else if (key == "latency.mode") {
    if (value == "pipelined") c.use_pipelined = true;
    else if (value == "sequential") c.use_pipelined = false;
    else throw ParseError("latency.mode must be pipelined or sequential", line);
  } else if (key.starts_with("latency.sequential.") || key.starts_with("latency.pipelined.")) {
    const bool seq = key.starts_with("latency.sequential.");
    auto field = key.substr(seq ? 19 : 18);
    auto* slot = latency_field(seq ? c.sequential : c.pipelined, field);
    if (slot == nullptr) throw ParseError("unknown latency field '" + std::string(field) + "'", line);
    *slot = int_value(value, line);
  } else if (key == "resources.base") {
    c.resources.base = footprint();
  } else if (key == "resources.per_core") {
    c.resources.per_core = footprint();
  } else if (key == "resources.dpr_margin") {
    c.resources.dpr_margin = footprint();
  } else if (key == "resources.timer") {
    c.resources.timer = footprint();
  } else if (key.starts_with("resources.correction.monolithic.")) {
    c.resources.monolithic_corrections[std::string(key.substr(32))] = footprint();
  } else if (key.starts_with("resources.correction.rm.")) {
    c.resources.rm_corrections[std::string(key.substr(24))] = footprint();
  } else if (key == "power.base_watts") {
    c.power.base_watts = real_value(value, line);
  } else if (key == "power.per_core_watts") {
    c.power.per_core_watts = real_value(value, line);
  } else if (key == "power.dpr_overhead_watts") {
    c.power.dpr_overhead_watts = real_value(value, line);
  } else if (key == "power.static_fraction") {
    c.power.static_fraction = real_value(value, line);
  } else if (key == "power.ps_fraction_of_dynamic") {
    c.power.ps_fraction_of_dynamic = real_value(value, line);
  } else if (key == "bitstream.full_bits_per_slice") {
    c.bitstream.full_bits_per_slice = int_value(value, line);
  } else if (key == "bitstream.partial_bits_per_slice") {
    c.bitstream.partial_bits_per_slice = int_value(value, line);
  } else if (key == "port.jtag_bps") {
    c.jtag_bps = real_value(value, line);
  } else if (key == "port.pcap_bps") {
    c.pcap_bps = real_value(value, line);
  } else {
    throw ParseError("unknown calibration key '" + std::string(key) + "'", line);
  }
}

void validate(const Calibration& c) {
  if (!c.device.capacity.all_positive()) throw StructuralError("device capacity must be positive in every resource");
  if (!(c.device.clock_hz > 0)) throw StructuralError("device.clock_hz must be positive");
  c.sequential.validate();
  c.pipelined.validate();
  c.resources.validate();
  c.power.validate();
  if (c.bitstream.full_bits_per_slice <= 0 || c.bitstream.partial_bits_per_slice <= 0) {
    throw StructuralError("bitstream bits per slice must be positive");
  }
  if (!(c.jtag_bps > 0) || !(c.pcap_bps > 0)) throw StructuralError("port rates must be positive");
}

}  // namespace

fabric::ConfigPort Calibration::port(fabric::PortKind kind) const {
  return kind == fabric::PortKind::jtag ? fabric::ConfigPort::jtag(jtag_bps) : fabric::ConfigPort::pcap(pcap_bps);
}

Calibration parse_calibration(std::string_view bytes, Calibration base) {
  const auto lines = text::split_lines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto body = text::strip_comment(lines[i]);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", i + 1);
    apply(base, text::trim(body.substr(0, eq)), text::trim(body.substr(eq + 1)), i + 1);
  }
  validate(base);
  return base;
}

Calibration load_calibration(const std::optional<std::string>& path) {
  if (path) return parse_calibration(text::read_file(*path));
  if (const char* env = std::getenv(kCalibrationEnv); env != nullptr && *env != '\0') {
    return parse_calibration(text::read_file(env));
  }
  return {};
}

std::string serialize_calibration(const Calibration& c) {
  using text::format_real;
  std::string out;
  auto kv = [&](std::string_view k, const std::string& v) { out += std::string(k) + " = " + v + "\n"; };
  auto fp = [](const fabric::ResourceFootprint& f) { return fabric::format_footprint(f, ','); };
  kv("device.name", c.device.name);
  kv("device.capacity", fp(c.device.capacity));
  kv("device.clock_hz", format_real(c.device.clock_hz));
  kv("latency.mode", c.use_pipelined ? "pipelined" : "sequential");
  for (auto [tag, p] : {std::pair{"sequential", &c.sequential}, std::pair{"pipelined", &c.pipelined}}) {
    const std::string prefix = std::string("latency.") + tag + ".";
    kv(prefix + "iteration_latency", std::to_string(p->iteration_latency));
    kv(prefix + "initiation_interval", std::to_string(p->initiation_interval));
    kv(prefix + "pipeline_depth", std::to_string(p->pipeline_depth));
    kv(prefix + "fixed_overhead", std::to_string(p->fixed_overhead));
  }
  kv("resources.base", fp(c.resources.base));
  kv("resources.per_core", fp(c.resources.per_core));
  kv("resources.dpr_margin", fp(c.resources.dpr_margin));
  kv("resources.timer", fp(c.resources.timer));
  for (const auto& [variant, delta] : c.resources.monolithic_corrections) {
    kv("resources.correction.monolithic." + variant, fp(delta));
  }
  for (const auto& [variant, delta] : c.resources.rm_corrections) kv("resources.correction.rm." + variant, fp(delta));
  kv("power.base_watts", format_real(c.power.base_watts));
  kv("power.per_core_watts", format_real(c.power.per_core_watts));
  kv("power.dpr_overhead_watts", format_real(c.power.dpr_overhead_watts));
  kv("power.static_fraction", format_real(c.power.static_fraction));
  kv("power.ps_fraction_of_dynamic", format_real(c.power.ps_fraction_of_dynamic));
  kv("bitstream.full_bits_per_slice", std::to_string(c.bitstream.full_bits_per_slice));
  kv("bitstream.partial_bits_per_slice", std::to_string(c.bitstream.partial_bits_per_slice));
  kv("port.jtag_bps", format_real(c.jtag_bps));
  kv("port.pcap_bps", format_real(c.pcap_bps));
  return out;
}

}  // namespace dprsvm::perf
