#pragma once

#include "mpidyn/grid.hpp"
#include "mpidyn/types.hpp"

#include <vector>

namespace mpidyn {

enum class Channel : int { x = 0, y = 1, z = 2 };

const char* channel_name(Channel c);

/// Sampled system function pair per receive channel: S1(j,i) is the channel
/// component of dm/dt at (r_i, t_j) and S2(j,i) the component of m itself.
/// Entries are raw moment values; the scalar signal_scale = -mu0 * p * V_voxel
/// carries the coil sensitivity and the pixel-basis volume factor.
struct SystemMatrixPair {
  Grid grid;
  std::vector<Channel> channels;
  double signal_scale = 0.0;

  std::vector<Eigen::MatrixXd> s1, s2;             // time domain, n_T x R per channel
  std::vector<Eigen::MatrixXcd> s1_hat, s2_hat;    // frequency domain, n_T x R per channel

  bool has_time() const { return !s1.empty(); }
  bool has_frequency() const { return !s1_hat.empty(); }
  int channel_index(Channel c) const;
};

/// Samples both system functions at the voxel centers and cycle times
/// (midpoint collocation for the pixel basis). Deterministic for any thread
/// count: every column is written by exactly one worker.
SystemMatrixPair build_system_pair(const Grid& grid, const ScannerConfig& cfg,
                                   const ParticleConfig& particle,
                                   const std::vector<Channel>& channels = {Channel::x, Channel::y},
                                   int threads = 0);

/// Adds the columnwise forward DFTs of S1/S2 to the pair.
SystemMatrixPair to_frequency(const SystemMatrixPair& pair);

/// The classical static system matrix of the matrix-vector model: eta * S1.
Eigen::MatrixXd static_matrix(const SystemMatrixPair& pair, Channel channel);

}  // namespace mpidyn
