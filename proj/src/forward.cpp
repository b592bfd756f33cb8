#include "mpidyn/forward.hpp"

#include "mpidyn/fft.hpp"
#include "mpidyn/parallel.hpp"

namespace mpidyn {

int Signal::channel_index(Channel c) const {
  for (size_t k = 0; k < channels.size(); ++k)
    if (channels[k] == c) return static_cast<int>(k);
  throw ConfigError(std::string("signal: channel ") + channel_name(c) + " not present");
}

namespace {
Signal make_signal_shell(const SystemMatrixPair& pair, int frame_count) {
  Signal s;
  s.channels = pair.channels;
  s.frame_count = frame_count;
  s.samples_per_cycle = pair.grid.samples_per_cycle();
  s.cycle_time = pair.grid.cycle_time();
  s.grid_hash = pair.grid.hash();
  return s;
}

void require_conc_shape(const SystemMatrixPair& pair, const SampledConcentration& conc,
                        int frames) {
  if (conc.values.rows() != conc.rates.rows() || conc.values.cols() != conc.rates.cols())
    throw ConfigError("forward: concentration value/rate shape mismatch");
  if (conc.values.cols() != pair.grid.voxel_count())
    throw ConfigError("forward: concentration voxel count does not match the grid");
  if (conc.values.rows() != static_cast<Eigen::Index>(frames) * pair.grid.samples_per_cycle())
    throw ConfigError("forward: concentration record length does not match the frame count");
}
}  // namespace

Signal forward_static(const SystemMatrixPair& pair, const Eigen::VectorXd& concentration) {
  if (!pair.has_time()) throw ConfigError("forward_static: time-domain pair required");
  if (concentration.size() != pair.grid.voxel_count())
    throw ConfigError("forward_static: concentration size does not match the grid");
  Signal s = make_signal_shell(pair, 1);
  for (size_t c = 0; c < pair.channels.size(); ++c)
    s.samples.emplace_back(pair.signal_scale * (pair.s1[c] * concentration));
  return s;
}

Signal forward_dynamic(const SystemMatrixPair& pair, const SampledConcentration& conc) {
  if (!pair.has_time()) throw ConfigError("forward_dynamic: time-domain pair required");
  const int n_t = pair.grid.samples_per_cycle();
  const Eigen::Index rows = conc.values.rows();
  if (rows % n_t != 0)
    throw ConfigError("forward_dynamic: record length is not a whole number of cycles");
  const int frames = static_cast<int>(rows) / n_t;
  require_conc_shape(pair, conc, frames);

  Signal s = make_signal_shell(pair, frames);
  const int r = pair.grid.voxel_count();
  for (size_t c = 0; c < pair.channels.size(); ++c) {
    Eigen::VectorXd u(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
      const int jc = static_cast<int>(j) % n_t;  // cycle-local sample
      double acc = 0.0;
      for (int i = 0; i < r; ++i)
        acc += pair.s1[c](jc, i) * conc.values(j, i) + pair.s2[c](jc, i) * conc.rates(j, i);
      u[j] = pair.signal_scale * acc;
    }
    s.samples.emplace_back(std::move(u));
  }
  return s;
}

Signal forward_dynamic_freq(const SystemMatrixPair& pair, const SampledConcentration& conc,
                            int threads) {
  if (!pair.has_frequency())
    throw ConfigError("forward_dynamic_freq: frequency-domain pair required");
  const int n_t = pair.grid.samples_per_cycle();
  if (conc.values.rows() != n_t)
    throw ConfigError("forward_dynamic_freq: single-frame record required; "
                      "segment multi-frame data per frame first");
  require_conc_shape(pair, conc, 1);

  Signal s = make_signal_shell(pair, 1);
  s.samples.clear();
  const int r = pair.grid.voxel_count();
  const Eigen::MatrixXcd c_hat = dft_forward_columns(conc.values);
  const Eigen::MatrixXcd dc_hat = dft_forward_columns(conc.rates);
  const double scale = 1.0 / static_cast<double>(n_t);

  for (size_t c = 0; c < pair.channels.size(); ++c) {
    Eigen::MatrixXcd contrib(n_t, r);
    parallel_for(
        r,
        [&](int i) {
          contrib.col(i) = circular_convolution(pair.s1_hat[c].col(i), c_hat.col(i)) +
                           circular_convolution(pair.s2_hat[c].col(i), dc_hat.col(i));
        },
        threads);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n_t);
    for (int i = 0; i < r; ++i) u += contrib.col(i);  // fixed-order reduction
    s.spectra.emplace_back(pair.signal_scale * scale * u);
  }
  return s;
}

SplitTerms signal_split(const SystemMatrixPair& pair, const SampledConcentration& conc,
                        Channel channel, int threads) {
  if (!pair.has_frequency()) throw ConfigError("signal_split: frequency-domain pair required");
  const int n_t = pair.grid.samples_per_cycle();
  if (conc.values.rows() != n_t)
    throw ConfigError("signal_split: single-frame record required");
  require_conc_shape(pair, conc, 1);

  const int c = pair.channel_index(channel);
  const int r = pair.grid.voxel_count();
  const Eigen::MatrixXcd c_hat = dft_forward_columns(conc.values);
  const Eigen::MatrixXcd dc_hat = dft_forward_columns(conc.rates);
  const double scale = 1.0 / static_cast<double>(n_t);

  SplitTerms split;
  split.a.resize(n_t, r);
  split.b.resize(n_t, r);
  parallel_for(
      r,
      [&](int i) {
        split.a.col(i) =
            scale * circular_convolution(pair.s1_hat[static_cast<size_t>(c)].col(i), c_hat.col(i));
        split.b.col(i) =
            scale * circular_convolution(pair.s2_hat[static_cast<size_t>(c)].col(i), dc_hat.col(i));
      },
      threads);
  split.a_sum = Eigen::VectorXcd::Zero(n_t);
  split.b_sum = Eigen::VectorXcd::Zero(n_t);
  for (int i = 0; i < r; ++i) {
    split.a_sum += split.a.col(i);
    split.b_sum += split.b.col(i);
  }
  return split;
}

}  // namespace mpidyn
