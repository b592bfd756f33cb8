#include "mpidyn/grid.hpp"

#include <cstring>

namespace mpidyn {

Grid Grid::make(const GridSpec& spec) {
  if (spec.nx <= 0 || spec.ny <= 0 || spec.nz <= 0)
    throw ConfigError("grid: voxel counts must be positive");
  if (!(spec.voxel_size.minCoeff() > 0.0))
    throw ConfigError("grid: voxel size must be positive");
  if (spec.samples_per_cycle < 2) throw ConfigError("grid: need at least 2 samples per cycle");
  if (spec.frame_count < 1) throw ConfigError("grid: frame count must be >= 1");
  if (!(spec.cycle_time > 0.0)) throw ConfigError("grid: cycle time must be positive");

  Grid g;
  g.spec_ = spec;
  g.centers_.reserve(static_cast<size_t>(spec.nx) * spec.ny * spec.nz);
  for (int iz = 0; iz < spec.nz; ++iz)
    for (int iy = 0; iy < spec.ny; ++iy)
      for (int ix = 0; ix < spec.nx; ++ix) {
        g.centers_.emplace_back((ix - 0.5 * (spec.nx - 1)) * spec.voxel_size.x(),
                                (iy - 0.5 * (spec.ny - 1)) * spec.voxel_size.y(),
                                (iz - 0.5 * (spec.nz - 1)) * spec.voxel_size.z());
      }
  return g;
}

Eigen::Vector3d Grid::voxel_center(int i) const {
  if (i < 0 || i >= voxel_count()) throw ConfigError("grid: voxel index out of range");
  return centers_[static_cast<size_t>(i)];
}

std::vector<double> Grid::cycle_times() const {
  std::vector<double> t(static_cast<size_t>(spec_.samples_per_cycle));
  for (int j = 0; j < spec_.samples_per_cycle; ++j) t[static_cast<size_t>(j)] = cycle_time_sample(j);
  return t;
}

std::vector<double> Grid::record_times() const {
  std::vector<double> t(static_cast<size_t>(record_length()));
  for (int j = 0; j < record_length(); ++j) t[static_cast<size_t>(j)] = record_time_sample(j);
  return t;
}

std::uint64_t Grid::hash() const {
  // FNV-1a over the little-endian bytes of the spatial layout and per-cycle
  // sampling. The frame count is deliberately excluded: system matrices span
  // one cycle and stay valid for any record length.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  const std::int32_t dims[3] = {spec_.nx, spec_.ny, spec_.nz};
  mix(dims, sizeof dims);
  const double vox[3] = {spec_.voxel_size.x(), spec_.voxel_size.y(), spec_.voxel_size.z()};
  mix(vox, sizeof vox);
  mix(&spec_.samples_per_cycle, sizeof spec_.samples_per_cycle);
  mix(&spec_.cycle_time, sizeof spec_.cycle_time);
  return h;
}

int frame_time_index(int j, int samples_per_cycle, int frame_count) {
  if (samples_per_cycle < 1 || frame_count < 1)
    throw ConfigError("frame_time_index: invalid sampling");
  if (j < 1 || j > samples_per_cycle * frame_count)
    throw ConfigError("frame_time_index: sample index out of range");
  return (j - 1) % samples_per_cycle + 1;
}

}  // namespace mpidyn
