#pragma once

#include "mpidyn/phantom.hpp"
#include "mpidyn/system.hpp"

#include <complex>

namespace mpidyn {

/// Per-channel voltage record. Time-domain samples cover F*n_T record points;
/// frequency-domain spectra cover the n_T bins of a single cycle.
struct Signal {
  std::vector<Channel> channels;
  int frame_count = 1;
  int samples_per_cycle = 0;
  double cycle_time = 0.0;
  std::uint64_t grid_hash = 0;

  std::vector<Eigen::VectorXd> samples;   // time domain, per channel
  std::vector<Eigen::VectorXcd> spectra;  // frequency domain, per channel

  bool has_time() const { return !samples.empty(); }
  bool has_frequency() const { return !spectra.empty(); }
  int channel_index(Channel c) const;
  int record_length() const { return frame_count * samples_per_cycle; }
  double record_time_sample(int j) const {
    if (j == record_length() - 1) return frame_count * cycle_time;
    return static_cast<double>(j) * frame_count * cycle_time / (record_length() - 1);
  }
};

/// Static model u = eta * S1 * c over one cycle.
Signal forward_static(const SystemMatrixPair& pair, const Eigen::VectorXd& concentration);

/// Dynamic model u(tau_j) = eta * sum_i [S1(j',i) c_i(tau_j) + S2(j',i) dc_i/dt(tau_j)]
/// with j' the cycle-local index; handles multi-frame records.
Signal forward_dynamic(const SystemMatrixPair& pair, const SampledConcentration& conc);

/// Frequency-domain dynamic model for single-frame records:
/// u_hat = eta/n_T * sum_i [S1_hat_i (*) c_hat_i + S2_hat_i (*) dc_hat_i].
Signal forward_dynamic_freq(const SystemMatrixPair& pair, const SampledConcentration& conc,
                            int threads = 0);

/// The two summands of the frequency-domain dynamic model for one channel,
/// per voxel (columns) and summed: u_hat = eta * (a_sum + b_sum) / n_T ... the
/// 1/n_T convolution scaling is already folded into a and b.
struct SplitTerms {
  Eigen::MatrixXcd a;  // n_T x R: (1/n_T) S1_hat_i (*) c_hat_i
  Eigen::MatrixXcd b;  // n_T x R: (1/n_T) S2_hat_i (*) dc_hat_i
  Eigen::VectorXcd a_sum, b_sum;
};

SplitTerms signal_split(const SystemMatrixPair& pair, const SampledConcentration& conc,
                        Channel channel, int threads = 0);

}  // namespace mpidyn
