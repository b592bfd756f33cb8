#include "mpidyn/recon.hpp"

#include <cmath>

namespace mpidyn {

namespace {

void require_time_signal(const SystemMatrixPair& pair, const Signal& signal) {
  if (!pair.has_time()) throw ConfigError("recon: time-domain system matrices required");
  if (!signal.has_time()) throw ConfigError("recon: time-domain signal required");
  if (signal.samples_per_cycle != pair.grid.samples_per_cycle())
    throw ConfigError("recon: signal sampling does not match the system matrices");
  if (signal.grid_hash != 0 && signal.grid_hash != pair.grid.hash())
    throw ConfigError("recon: signal was simulated on a different grid");
}

// Design operator of the parametric problem for one channel, voxel-major
// columns (col = voxel * M + m). Linear in the coefficients by construction.
Eigen::MatrixXd assemble_parametric_design(const SystemMatrixPair& pair, const Signal& signal,
                                           const CubicBsplineBasis& basis, Channel channel,
                                           bool use_s2) {
  const int n_t = pair.grid.samples_per_cycle();
  const int r = pair.grid.voxel_count();
  const int m = basis.size();
  const int rows = signal.record_length();
  const double record = signal.frame_count * signal.cycle_time;
  if (std::abs(basis.duration() - record) > 1e-9 * record)
    throw ConfigError("recon: spline basis span does not match the signal record");

  const int c = pair.channel_index(channel);
  const double eta = pair.signal_scale;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(m) * r);
  int first;
  std::array<double, 4> bv, bd;
  for (int j = 0; j < rows; ++j) {
    basis.evaluate(signal.record_time_sample(j), first, bv, bd);
    const int jc = j % n_t;
    for (int i = 0; i < r; ++i) {
      const double s1 = eta * pair.s1[static_cast<size_t>(c)](jc, i);
      const double s2 = use_s2 ? eta * pair.s2[static_cast<size_t>(c)](jc, i) : 0.0;
      for (int k = 0; k < 4; ++k) {
        a(j, static_cast<Eigen::Index>(i) * m + first + k) +=
            s1 * bv[static_cast<size_t>(k)] + s2 * bd[static_cast<size_t>(k)];
      }
    }
  }
  return a;
}

// CG on the normal equations, tracking the least-squares residual ||a x - u||.
Eigen::VectorXd cgnr(const Eigen::MatrixXd& a, const Eigen::VectorXd& u, int iterations,
                     std::vector<double>& history) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXd r = u;
  Eigen::VectorXd s = a.transpose() * r;
  Eigen::VectorXd p = s;
  double gamma = s.squaredNorm();
  const double u_norm = u.norm();
  double last = r.norm();
  history.clear();
  history.push_back(last);
  if (u_norm == 0.0 || gamma == 0.0) return x;

  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd q = a * p;
    const double qn = q.squaredNorm();
    if (qn == 0.0) break;
    const double alpha = gamma / qn;
    x += alpha * p;
    r -= alpha * q;
    const double rn = r.norm();
    history.push_back(rn);
    if (rn > 1e3 * u_norm)
      throw NumericError("reconstruct_parametric: residual diverged beyond 1e3 x initial");
    s.noalias() = a.transpose() * r;
    const double gamma_new = s.squaredNorm();
    if (gamma_new == 0.0) break;
    if (rn > last) {
      p = s;  // restart on a (roundoff) residual increase
    } else {
      p = s + (gamma_new / gamma) * p;
    }
    gamma = gamma_new;
    last = rn;
  }
  return x;
}

double largest_singular_value_sq(const Eigen::MatrixXd& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols()).normalized();
  double lam = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    lam = w.norm();
    if (lam == 0.0) return 0.0;
    v = w / lam;
  }
  return lam;
}

// 100-iteration gradient descent for ||a c - rhs||^2 with a fixed step; the
// step is chosen once by the caller.
Eigen::VectorXd gradient_descent(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs,
                                 int iterations, double step, std::vector<double>& history) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXd r = a * c - rhs;
  double last = r.norm();
  const double initial = last;
  history.push_back(last);
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd g = a.transpose() * r;
    c -= step * g;
    r = a * c - rhs;
    double rn = r.norm();
    int halvings = 0;
    while (rn > last * (1.0 + 1e-12) && halvings < 60) {
      // step proved too long for this problem; shrink and redo the move
      c += step * g;
      step *= 0.5;
      c -= step * g;
      r = a * c - rhs;
      rn = r.norm();
      ++halvings;
    }
    if (initial > 0.0 && rn > 1e3 * initial)
      throw NumericError("reconstruct_frames: residual diverged beyond 1e3 x initial");
    history.push_back(rn);
    last = rn;
  }
  return c;
}

}  // namespace

Eigen::VectorXd kaczmarz_static(const Eigen::MatrixXd& a, const Eigen::VectorXd& u, int sweeps,
                                double tikhonov) {
  if (a.rows() != u.size()) throw ConfigError("kaczmarz: row/measurement count mismatch");
  if (sweeps < 1) throw ConfigError("kaczmarz: need at least one sweep");

  const Eigen::Index n = a.rows();
  Eigen::VectorXd row_norm_sq(n);
  for (Eigen::Index j = 0; j < n; ++j) row_norm_sq[j] = a.row(j).squaredNorm();

  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.cols());
  const double lambda = tikhonov;
  const double sqrt_lambda = std::sqrt(lambda);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(lambda > 0.0 ? n : 0);

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double denom = row_norm_sq[j] + lambda;
      if (denom == 0.0) continue;  // zero row
      double resid = u[j] - a.row(j).dot(c);
      if (lambda > 0.0) resid -= sqrt_lambda * v[j];
      const double factor = resid / denom;
      c += factor * a.row(j).transpose();
      if (lambda > 0.0) v[j] += factor * sqrt_lambda;
    }
  }
  return c;
}

ParametricObjective objective_parametric(const Eigen::MatrixXd& coefficients,
                                         const SystemMatrixPair& pair, const Signal& signal,
                                         bool use_s2, const CubicBsplineBasis& basis,
                                         Channel channel) {
  require_time_signal(pair, signal);
  if (coefficients.rows() != basis.size() || coefficients.cols() != pair.grid.voxel_count())
    throw ConfigError("objective_parametric: coefficient matrix has the wrong shape");

  const Eigen::MatrixXd a = assemble_parametric_design(pair, signal, basis, channel, use_s2);
  const Eigen::VectorXd u = signal.samples[static_cast<size_t>(signal.channel_index(channel))];
  const Eigen::Map<const Eigen::VectorXd> x(coefficients.data(), coefficients.size());
  const Eigen::VectorXd r = a * x - u;

  ParametricObjective obj;
  obj.value = 0.5 * r.squaredNorm();
  const Eigen::VectorXd g = a.transpose() * r;
  obj.gradient = Eigen::Map<const Eigen::MatrixXd>(g.data(), coefficients.rows(),
                                                   coefficients.cols());
  return obj;
}

ParametricResult reconstruct_parametric(const SystemMatrixPair& pair, const Signal& signal,
                                        const ReconConfig& cfg, bool use_s2) {
  cfg.validate();
  require_time_signal(pair, signal);

  const CubicBsplineBasis basis(signal.frame_count * signal.cycle_time,
                                cfg.spans_per_frame * signal.frame_count);
  const int m = basis.size();
  const int r = pair.grid.voxel_count();

  ParametricResult result{SplineConcentration{basis, Eigen::MatrixXd::Zero(m, r),
                                              pair.grid.hash()},
                          {}, {}};

  if (cfg.joint_channels) {
    const Eigen::Index rows = signal.record_length();
    const Eigen::Index nch = static_cast<Eigen::Index>(signal.channels.size());
    Eigen::MatrixXd a(rows * nch, static_cast<Eigen::Index>(m) * r);
    Eigen::VectorXd u(rows * nch);
    for (Eigen::Index c = 0; c < nch; ++c) {
      a.middleRows(c * rows, rows) = assemble_parametric_design(
          pair, signal, basis, signal.channels[static_cast<size_t>(c)], use_s2);
      u.segment(c * rows, rows) = signal.samples[static_cast<size_t>(c)];
    }
    std::vector<double> history;
    const Eigen::VectorXd x = cgnr(a, u, cfg.cg_iterations, history);
    result.average.coefficients = Eigen::Map<const Eigen::MatrixXd>(x.data(), m, r);
    result.per_channel.push_back(result.average);
    result.residuals.push_back(std::move(history));
    return result;
  }

  for (Channel channel : signal.channels) {
    const Eigen::MatrixXd a = assemble_parametric_design(pair, signal, basis, channel, use_s2);
    const Eigen::VectorXd& u = signal.samples[static_cast<size_t>(signal.channel_index(channel))];
    std::vector<double> history;
    const Eigen::VectorXd x = cgnr(a, u, cfg.cg_iterations, history);
    SplineConcentration sc{basis, Eigen::Map<const Eigen::MatrixXd>(x.data(), m, r),
                           pair.grid.hash()};
    result.average.coefficients += sc.coefficients;
    result.per_channel.push_back(std::move(sc));
    result.residuals.push_back(std::move(history));
  }
  result.average.coefficients /= static_cast<double>(signal.channels.size());
  return result;
}

FrameResult reconstruct_frames(const SystemMatrixPair& pair, const Signal& signal,
                               const ReconConfig& cfg, bool use_s2) {
  cfg.validate();
  require_time_signal(pair, signal);

  const int n_t = signal.samples_per_cycle;
  const int frames = signal.frame_count;
  const int r = pair.grid.voxel_count();
  const double dt = cfg.frame_dt > 0.0 ? cfg.frame_dt : signal.cycle_time;
  const double eta = pair.signal_scale;

  FrameResult result;
  result.average = Eigen::MatrixXd::Zero(frames, r);

  for (Channel channel : signal.channels) {
    const int c = pair.channel_index(channel);
    const Eigen::MatrixXd& s1 = pair.s1[static_cast<size_t>(c)];
    const Eigen::MatrixXd& s2 = pair.s2[static_cast<size_t>(c)];
    const Eigen::MatrixXd a = use_s2 ? Eigen::MatrixXd(eta * (s1 + s2 / dt))
                                     : Eigen::MatrixXd(eta * s1);
    const double lam = largest_singular_value_sq(a);
    const double step = lam > 0.0 ? 1.0 / (1.05 * lam) : 0.0;

    const Eigen::VectorXd& u = signal.samples[static_cast<size_t>(signal.channel_index(channel))];
    Eigen::MatrixXd frames_out(frames, r);
    std::vector<double> history;
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(r);
    for (int f = 0; f < frames; ++f) {
      Eigen::VectorXd rhs = u.segment(static_cast<Eigen::Index>(f) * n_t, n_t);
      if (use_s2) rhs += (eta / dt) * (s2 * prev);
      const Eigen::VectorXd cf = gradient_descent(a, rhs, cfg.gd_iterations, step, history);
      frames_out.row(f) = cf.transpose();
      prev = cf;
    }
    result.average += frames_out;
    result.per_channel.push_back(std::move(frames_out));
    result.residuals.push_back(std::move(history));
  }
  result.average /= static_cast<double>(signal.channels.size());
  return result;
}

FrameResult reconstruct_frames_kaczmarz(const SystemMatrixPair& pair, const Signal& signal,
                                        const ReconConfig& cfg) {
  cfg.validate();
  require_time_signal(pair, signal);

  const int n_t = signal.samples_per_cycle;
  const int frames = signal.frame_count;
  const int r = pair.grid.voxel_count();

  FrameResult result;
  result.average = Eigen::MatrixXd::Zero(frames, r);
  for (Channel channel : signal.channels) {
    const Eigen::MatrixXd a = static_matrix(pair, channel);
    const Eigen::VectorXd& u = signal.samples[static_cast<size_t>(signal.channel_index(channel))];
    Eigen::MatrixXd frames_out(frames, r);
    std::vector<double> history;
    for (int f = 0; f < frames; ++f) {
      const Eigen::VectorXd uf = u.segment(static_cast<Eigen::Index>(f) * n_t, n_t);
      const Eigen::VectorXd cf = kaczmarz_static(a, uf, cfg.kaczmarz_sweeps, cfg.tikhonov);
      frames_out.row(f) = cf.transpose();
      history.push_back((a * cf - uf).norm());
    }
    result.average += frames_out;
    result.per_channel.push_back(std::move(frames_out));
    result.residuals.push_back(std::move(history));
  }
  result.average /= static_cast<double>(signal.channels.size());
  return result;
}

}  // namespace mpidyn
