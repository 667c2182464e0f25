#pragma once

// Reconfigurable modules, the partition that hosts them, and the library of
// full/partial configuration bitstreams built from them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dprsvm/fabric/resources.hpp"
#include "dprsvm/perf/latency.hpp"
#include "dprsvm/svm/types.hpp"

namespace dprsvm::fabric {

struct ReconfigurableModule {
  std::string name;
  svm::WeightArtifact weights;
  ResourceFootprint footprint;
  perf::LatencyParams latency = perf::LatencyParams::pipelined_defaults();
};

struct ReconfigurablePartition {
  std::string id;
  ResourceFootprint allocated;
  std::vector<std::string> admissible_rms;  // sorted

  [[nodiscard]] bool admits(std::string_view rm) const;
};

enum class BitstreamKind { full, partial };

std::string_view to_string(BitstreamKind kind);

/// `footprint` is the programmed region: the whole device for a full bitstream,
/// the partition allocation for a partial one. size_bits follows from it.
struct Bitstream {
  BitstreamKind kind;
  std::string target;   // device name (full) or partition id (partial)
  std::string rm_name;
  std::int64_t size_bits;
  ResourceFootprint footprint;
  svm::WeightArtifact payload;

  friend bool operator==(const Bitstream&, const Bitstream&) = default;
};

std::int64_t bitstream_size_bits(BitstreamKind kind, const ResourceFootprint& region, const BitstreamSizeModel& model);

/// Canonical text form:
///   bitstream v1 / kind / target / rm / size_bits / footprint / blank line / weight artifact
std::string serialize_bitstream(const Bitstream& bs);

/// Rejects a size_bits that disagrees with `model` applied to the footprint line.
Bitstream parse_bitstream(std::string_view bytes, const BitstreamSizeModel& model = {});

struct ConfigurationLibrary {
  Device device;
  ResourceFootprint static_base;
  ReconfigurablePartition partition;
  std::vector<ReconfigurableModule> modules;  // sorted by name
  std::vector<Bitstream> bitstreams;          // per module in name order: full, then partial

  [[nodiscard]] const Bitstream& full(std::string_view rm) const;
  [[nodiscard]] const Bitstream& partial(std::string_view rm) const;
  [[nodiscard]] const ReconfigurableModule& module(std::string_view rm) const;
  /// Static wrapper plus the partition allocation.
  [[nodiscard]] ResourceFootprint footprint() const { return static_base + partition.allocated; }
};

struct LibraryOptions {
  ResourceFootprint dpr_margin{4, 9, 0, 0, 0};
  BitstreamSizeModel size_model;
  std::string partition_id = "rp0";
};

/// Sizes the partition to the component-wise maximum module footprint plus the
/// margin, then emits one full and one partial bitstream per module.
/// Errors: no modules or duplicate names (StructuralError), mixed dimensions
/// (DimensionError), static + partition over device capacity (CapacityError).
ConfigurationLibrary build_configuration_library(const Device& device, const ResourceFootprint& static_base,
                                                 std::vector<ReconfigurableModule> modules,
                                                 const LibraryOptions& options = {});

}  // namespace dprsvm::fabric
