#include "dprsvm/fabric/bitstream.hpp"

#include <algorithm>
#include <set>

#include "dprsvm/errors.hpp"
#include "dprsvm/fabric/core.hpp"
#include "dprsvm/svm/io.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::fabric {

namespace {

constexpr std::string_view kMagic = "bitstream v1";

std::string_view keyed(std::string_view line, std::string_view key, std::size_t lineno) {
  if (line.size() <= key.size() + 1 || line.substr(0, key.size()) != key || line[key.size()] != ' ') {
    throw ParseError("expected '" + std::string(key) + " <value>'", lineno);
  }
  return line.substr(key.size() + 1);
}

}  // namespace

bool ReconfigurablePartition::admits(std::string_view rm) const {
  return std::find(admissible_rms.begin(), admissible_rms.end(), rm) != admissible_rms.end();
}

std::string_view to_string(BitstreamKind kind) { return kind == BitstreamKind::full ? "full" : "partial"; }

std::int64_t bitstream_size_bits(BitstreamKind kind, const ResourceFootprint& region, const BitstreamSizeModel& model) {
  const auto per_slice = kind == BitstreamKind::full ? model.full_bits_per_slice : model.partial_bits_per_slice;
  return per_slice * region.slices;
}

std::string serialize_bitstream(const Bitstream& bs) {
  std::string out;
  out += kMagic;
  out += "\nkind ";
  out += to_string(bs.kind);
  out += "\ntarget " + bs.target;
  out += "\nrm " + bs.rm_name;
  out += "\nsize_bits " + std::to_string(bs.size_bits);
  out += "\nfootprint " + format_footprint(bs.footprint) + "\n\n";
  out += svm::serialize_weight_artifact(bs.payload);
  return out;
}

Bitstream parse_bitstream(std::string_view bytes, const BitstreamSizeModel& model) {
  // Header is exactly seven lines; the payload starts after the blank seventh.
  std::size_t pos = 0;
  std::array<std::string_view, 7> header{};
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) throw ParseError("bitstream header is incomplete", i + 1);
    header[i] = bytes.substr(pos, nl - pos);
    pos = nl + 1;
  }
  if (header[0] != kMagic) throw ParseError("expected '" + std::string(kMagic) + "'", 1);

  const auto kind_text = keyed(header[1], "kind", 2);
  BitstreamKind kind;
  if (kind_text == "full") kind = BitstreamKind::full;
  else if (kind_text == "partial") kind = BitstreamKind::partial;
  else throw ParseError("kind must be full or partial", 2);

  const auto target = keyed(header[2], "target", 3);
  const auto rm = keyed(header[3], "rm", 4);
  if (!text::is_identifier(target)) throw ParseError("bad target", 3);
  if (!text::is_identifier(rm)) throw ParseError("bad rm name", 4);

  const auto size = text::parse_int(keyed(header[4], "size_bits", 5));
  if (!size || *size <= 0) throw ParseError("size_bits must be a positive integer", 5);

  ResourceFootprint footprint;
  try {
    footprint = parse_footprint(keyed(header[5], "footprint", 6));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), 6);
  }
  if (!footprint.nonnegative()) throw ParseError("footprint counts must be nonnegative", 6);
  if (!header[6].empty()) throw ParseError("expected blank line before payload", 7);

  const auto expected = bitstream_size_bits(kind, footprint, model);
  if (*size != expected) {
    throw StructuralError("size_bits " + std::to_string(*size) + " disagrees with size model (" +
                          std::to_string(expected) + " for this footprint)");
  }
  return Bitstream{kind, std::string(target), std::string(rm), *size, footprint,
                   svm::parse_weight_artifact(bytes.substr(pos))};
}

const Bitstream& ConfigurationLibrary::full(std::string_view rm) const {
  for (const auto& b : bitstreams) {
    if (b.kind == BitstreamKind::full && b.rm_name == rm) return b;
  }
  throw ConfigurationError("no full bitstream for module '" + std::string(rm) + "'");
}

const Bitstream& ConfigurationLibrary::partial(std::string_view rm) const {
  for (const auto& b : bitstreams) {
    if (b.kind == BitstreamKind::partial && b.rm_name == rm) return b;
  }
  throw ConfigurationError("no partial bitstream for module '" + std::string(rm) + "'");
}

const ReconfigurableModule& ConfigurationLibrary::module(std::string_view rm) const {
  for (const auto& m : modules) {
    if (m.name == rm) return m;
  }
  throw ConfigurationError("no module named '" + std::string(rm) + "'");
}

ConfigurationLibrary build_configuration_library(const Device& device, const ResourceFootprint& static_base,
                                                 std::vector<ReconfigurableModule> modules,
                                                 const LibraryOptions& options) {
  if (modules.empty()) throw StructuralError("configuration library needs at least one module");
  if (!text::is_identifier(options.partition_id)) throw StructuralError("bad partition id");
  if (!static_base.nonnegative() || !options.dpr_margin.nonnegative()) {
    throw StructuralError("footprints must be nonnegative");
  }
  std::sort(modules.begin(), modules.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

  std::set<std::string> names;
  ResourceFootprint widest;
  for (const auto& m : modules) {
    if (!text::is_identifier(m.name)) throw StructuralError("module name '" + m.name + "' is not an identifier");
    if (!names.insert(m.name).second) throw StructuralError("duplicate module name '" + m.name + "'");
    if (m.footprint.is_zero() || !m.footprint.nonnegative()) {
      throw StructuralError("module '" + m.name + "' needs a nonzero, nonnegative footprint");
    }
    if (m.weights.dimension() != modules.front().weights.dimension()) {
      throw DimensionError("module '" + m.name + "' has dimension " + std::to_string(m.weights.dimension()) +
                           ", module '" + modules.front().name + "' has " +
                           std::to_string(modules.front().weights.dimension()));
    }
    if (m.weights.dimension() > reg::max_features) {
      throw DimensionError("module '" + m.name + "' exceeds the core input window of " +
                           std::to_string(reg::max_features) + " features");
    }
    m.latency.validate();
    widest = max(widest, m.footprint);
  }

  ReconfigurablePartition rp{options.partition_id, widest + options.dpr_margin, {names.begin(), names.end()}};
  if (auto over = (static_base + rp.allocated).first_exceeding(device.capacity)) {
    throw CapacityError("static wrapper plus partition exceeds " + device.name + " capacity: " + std::string(*over));
  }

  ConfigurationLibrary lib{device, static_base, rp, {}, {}};
  for (const auto& m : modules) {
    lib.bitstreams.push_back({BitstreamKind::full, device.name, m.name,
                              bitstream_size_bits(BitstreamKind::full, device.capacity, options.size_model),
                              device.capacity, m.weights});
    lib.bitstreams.push_back({BitstreamKind::partial, rp.id, m.name,
                              bitstream_size_bits(BitstreamKind::partial, rp.allocated, options.size_model),
                              rp.allocated, m.weights});
  }
  lib.modules = std::move(modules);
  return lib;
}

}  // namespace dprsvm::fabric
