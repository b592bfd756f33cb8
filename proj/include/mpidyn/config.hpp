#pragma once

#include "mpidyn/grid.hpp"
#include "mpidyn/recon.hpp"

#include <string>

namespace mpidyn {

struct PhantomSection {
  int spans_per_frame = default_spans_per_frame;
};

/// Full batch-run configuration. The defaults reproduce the reference scanner
/// and particle parameters; two grid profiles exist because the spectra
/// analyses use a 19x19x1 grid sampled at 1632 points while the
/// reconstruction experiments use 3x3x1 at 408 points and several frames.
struct RunConfig {
  ScannerConfig scanner;
  ParticleConfig particle;
  GridSpec grid;
  PhantomSection phantom;
  ReconConfig recon;
  std::vector<Channel> channels{Channel::x, Channel::y};
};

/// Reconstruction profile: 3x3x1 voxels, 408 samples/cycle, 4 frames.
RunConfig default_config();
/// Spectra profile: 19x19x1 voxels, 1632 samples/cycle, single frame.
RunConfig spectra_config();

/// Parses a flat-sectioned key-value config file ([section] / key = value /
/// '#' comments). Unknown keys and malformed lines raise ConfigError with
/// file:line positions; omitted keys keep their defaults.
RunConfig load_config(const std::string& path, const RunConfig& defaults = default_config());
RunConfig parse_config(const std::string& text, const std::string& origin,
                       const RunConfig& defaults = default_config());

/// Serializes a config in the same format load_config reads.
std::string serialize_config(const RunConfig& cfg);

/// Applies one "section.key = value" override.
void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

std::vector<Channel> parse_channels(const std::string& text);

}  // namespace mpidyn
