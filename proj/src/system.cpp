#include "mpidyn/system.hpp"

#include "mpidyn/fft.hpp"
#include "mpidyn/parallel.hpp"
#include "mpidyn/physics.hpp"

namespace mpidyn {

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::x: return "x";
    case Channel::y: return "y";
    case Channel::z: return "z";
  }
  return "?";
}

int SystemMatrixPair::channel_index(Channel c) const {
  for (size_t k = 0; k < channels.size(); ++k)
    if (channels[k] == c) return static_cast<int>(k);
  throw ConfigError(std::string("system: channel ") + channel_name(c) + " not assembled");
}

SystemMatrixPair build_system_pair(const Grid& grid, const ScannerConfig& cfg,
                                   const ParticleConfig& particle,
                                   const std::vector<Channel>& channels, int threads) {
  cfg.validate();
  particle.validate();
  if (channels.empty()) throw ConfigError("system: need at least one receive channel");

  SystemMatrixPair pair;
  pair.grid = grid;
  pair.channels = channels;
  pair.signal_scale = -constants::mu0 * grid.voxel_volume();  // p := 1

  const int n_t = grid.samples_per_cycle();
  const int r = grid.voxel_count();
  for (size_t c = 0; c < channels.size(); ++c) {
    pair.s1.emplace_back(n_t, r);
    pair.s2.emplace_back(n_t, r);
  }

  // Drive samples are shared across voxels.
  std::vector<FieldSample> drive(static_cast<size_t>(n_t));
  for (int j = 0; j < n_t; ++j) drive[static_cast<size_t>(j)] = drive_field(grid.cycle_time_sample(j), cfg);

  parallel_for(
      r,
      [&](int i) {
        const Eigen::Vector3d hs = selection_field(grid.voxel_center(i), cfg);
        Eigen::Vector3d m, mdot;
        for (int j = 0; j < n_t; ++j) {
          mean_moment_pair(hs, drive[static_cast<size_t>(j)], particle, m, mdot);
          for (size_t c = 0; c < channels.size(); ++c) {
            const int axis = static_cast<int>(channels[c]);
            pair.s1[c](j, i) = mdot[axis];
            pair.s2[c](j, i) = m[axis];
          }
        }
      },
      threads);

  return pair;
}

SystemMatrixPair to_frequency(const SystemMatrixPair& pair) {
  if (!pair.has_time()) throw ConfigError("to_frequency: time-domain input required");
  SystemMatrixPair out = pair;
  out.s1_hat.clear();
  out.s2_hat.clear();
  for (size_t c = 0; c < pair.channels.size(); ++c) {
    out.s1_hat.push_back(dft_forward_columns(pair.s1[c]));
    out.s2_hat.push_back(dft_forward_columns(pair.s2[c]));
  }
  return out;
}

Eigen::MatrixXd static_matrix(const SystemMatrixPair& pair, Channel channel) {
  if (!pair.has_time()) throw ConfigError("static_matrix: time-domain pair required");
  return pair.signal_scale * pair.s1[static_cast<size_t>(pair.channel_index(channel))];
}

}  // namespace mpidyn
