// Acceptance suite: one printed verdict per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include "mpidyn/analysis.hpp"
#include "mpidyn/fft.hpp"
#include "mpidyn/io.hpp"
#include "mpidyn/physics.hpp"
#include "mpidyn/recon.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace mpidyn;

namespace {

int g_failures = 0;

void verdict(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Grid spectra_grid() {
  GridSpec s;
  s.nx = s.ny = 19;
  s.nz = 1;
  s.samples_per_cycle = 1632;
  s.frame_count = 1;
  return Grid::make(s);
}

Grid recon_grid(int frames, int n_t = 408) {
  GridSpec s;
  s.nx = s.ny = 3;
  s.nz = 1;
  s.samples_per_cycle = n_t;
  s.frame_count = frames;
  return Grid::make(s);
}

struct PeakInfo {
  double value = 0.0;
  double time = 0.0;
};

PeakInfo curve_peak(const SplineConcentration& sc, int voxel, const Grid& grid) {
  PeakInfo p;
  for (int j = 0; j < grid.record_length(); ++j) {
    const double t = grid.record_time_sample(j);
    const double v = sc.value(voxel, t);
    if (v > p.value) {
      p.value = v;
      p.time = t;
    }
  }
  return p;
}

// ---- criterion 1: system-matrix spectra ---------------------------------

void criterion_1(const SystemMatrixPair& freq_pair, double build_seconds) {
  bool ok = build_seconds < 60.0;
  std::string what = "system-matrix spectra; build " + fmt(build_seconds) + " s";

  for (Channel channel : {Channel::x, Channel::y}) {
    const int c = freq_pair.channel_index(channel);
    const Eigen::VectorXd m1 = max_spectrum(freq_pair.s1_hat[c]);
    const Eigen::VectorXd m2 = max_spectrum(freq_pair.s2_hat[c]);
    // peak structure on the DC-stripped curves (log-frequency plots start
    // above bin 0); the magnitude ratio keeps every bin
    const Eigen::VectorXd b1 = m1.segment(1, m1.size() - 1);
    const Eigen::VectorXd b2 = m2.segment(1, m2.size() - 1);
    const PeakMetrics p1 = peak_metrics(b1);
    const PeakMetrics p2 = peak_metrics(b2);
    const PeakMetrics h1 = peak_metrics(hull_approximation(b1, 15));
    const PeakMetrics h2 = peak_metrics(hull_approximation(b2, 15));
    const double ratio = m2.maxCoeff() / m1.maxCoeff();

    ok = ok && p1.spacing_defined && std::abs(p1.spacing_bins - 15.0) <= 2.0;
    ok = ok && p2.spacing_defined && std::abs(p2.spacing_bins - 15.0) <= 2.0;
    ok = ok && std::abs(h1.fwhm_bins - 33.0) <= 4.0 && std::abs(h2.fwhm_bins - 33.0) <= 4.0;
    ok = ok && ratio >= 1e-5 && ratio <= 1e-3;

    what += std::string("; [") + channel_name(channel) + "] spacing S1/S2 = " +
            fmt(p1.spacing_bins) + "/" + fmt(p2.spacing_bins) +
            " bins (want 15 +- 2), hull FWHM = " + fmt(h1.fwhm_bins) + "/" + fmt(h2.fwhm_bins) +
            " bins (want 33 +- 4), max|S2|/max|S1| = " + fmt(ratio) + " (want 1e-5..1e-3)";
  }
  verdict(1, ok, what);
}

// ---- criterion 2: example-concentration spectra --------------------------

void criterion_2() {
  bool ok = true;
  std::string what = "example-concentration spectral ratios (want 1e-4 within factor 5):";
  for (int kind = 1; kind <= 4; ++kind) {
    const ExampleConcentration ex = example_concentration(kind, 1632, 652.8e-6);
    const double ratio =
        ex.spectrum.cwiseAbs().maxCoeff() / ex.rate_spectrum.cwiseAbs().maxCoeff();
    ok = ok && ratio >= 0.2e-4 && ratio <= 5e-4;
    what += " k" + std::to_string(kind) + " = " + fmt(ratio);
  }
  verdict(2, ok, what);
}

// ---- criterion 3: A/B split ----------------------------------------------

void criterion_3(const SystemMatrixPair& freq_pair) {
  const Grid& grid = freq_pair.grid;
  const ExampleConcentration ex =
      example_concentration(3, grid.samples_per_cycle(), grid.cycle_time());
  SampledConcentration conc;
  conc.values = ex.values.replicate(1, grid.voxel_count());
  conc.rates = ex.rates.replicate(1, grid.voxel_count());

  const Signal full = forward_dynamic_freq(freq_pair, conc);
  bool ok = true;
  std::string what = "A/B split, example concentration 3:";
  for (Channel channel : {Channel::x, Channel::y}) {
    const int c = freq_pair.channel_index(channel);
    const SplitTerms split = signal_split(freq_pair, conc, channel);
    const Eigen::VectorXcd recombined = freq_pair.signal_scale * (split.a_sum + split.b_sum);
    const double rel = (recombined - full.spectra[c]).norm() / full.spectra[c].norm();
    const double max_a = split.a.cwiseAbs().maxCoeff();
    const double max_b = split.b.cwiseAbs().maxCoeff();
    const double factor = max_a > max_b ? max_a / max_b : max_b / max_a;
    ok = ok && rel <= 1e-12 && factor <= 2.0;
    what += std::string(" [") + channel_name(channel) + "] recombination rel = " + fmt(rel) +
            ", max|a| = " + fmt(max_a) + ", max|b| = " + fmt(max_b) + " (factor " + fmt(factor) +
            ", want <= 2)";
  }
  verdict(3, ok, what);
}

// ---- criteria 4 and 5: parametric reconstructions ------------------------

struct ParametricOutcome {
  PeakInfo dynamic_peak;
  PeakInfo static_peak;
};

ParametricOutcome run_parametric(OnePeakVariant variant, const SystemMatrixPair& pair,
                                 const Grid& grid) {
  const SplineConcentration truth = one_peak_phantom(variant, grid);
  const Signal u = forward_dynamic(pair, eval_spline(truth, grid));
  ReconConfig cfg;
  cfg.cg_iterations = 200;  // 200 CG iterations, no further regularization
  ParametricOutcome out;
  out.dynamic_peak = curve_peak(reconstruct_parametric(pair, u, cfg, true).average, 4, grid);
  out.static_peak = curve_peak(reconstruct_parametric(pair, u, cfg, false).average, 4, grid);
  return out;
}

std::string clause(bool ok, const std::string& text) {
  return std::string(ok ? "[ok] " : "[X] ") + text + "; ";
}

void criterion_4(const ParametricOutcome& r1f) {
  const double truth = 2.667;
  const bool amp_ok =
      r1f.dynamic_peak.value >= 0.9 * truth && r1f.dynamic_peak.value <= 1.25 * truth;
  const bool time_ok = std::abs(r1f.dynamic_peak.time - 0.4128e-3) <= 0.08e-3;
  const bool stat_ok = r1f.static_peak.value < 0.5 * truth;
  const bool order_ok =
      std::abs(r1f.dynamic_peak.value - truth) < std::abs(r1f.static_peak.value - truth);
  verdict(4, amp_ok && time_ok && stat_ok && order_ok,
          "one-peak 1F parametric: " +
              clause(amp_ok, "S1+S2 peak = " + fmt(r1f.dynamic_peak.value) + " (want 2.40..3.33)") +
              clause(time_ok, "at t = " + fmt(r1f.dynamic_peak.time * 1e3) +
                                  " ms (want 0.4128 +- 0.08 ms)") +
              clause(stat_ok, "S1-only peak = " + fmt(r1f.static_peak.value) + " (want < 1.33)") +
              clause(order_ok, "dynamic model closer to truth than static"));
}

void criterion_5(const ParametricOutcome& r2f, const ParametricOutcome& r4f) {
  const double truth = 2.667;
  const double dyn2 = r2f.dynamic_peak.value / truth;
  const double stat2 = r2f.static_peak.value / truth;
  const double dyn4 = r4f.dynamic_peak.value / truth;
  const double stat4 = r4f.static_peak.value / truth;
  const bool dyn2_ok = dyn2 >= 0.80;
  const bool stat2_ok = stat2 < 0.55;
  const bool dyn4_ok = dyn4 >= 0.80;
  const bool stat4_ok = stat4 >= 0.65 && stat4 <= 0.80;
  verdict(5, dyn2_ok && stat2_ok && dyn4_ok && stat4_ok,
          "one-peak 2F/4F parametric recovery: " +
              clause(dyn2_ok, "2F S1+S2 = " + fmt(100 * dyn2) + "% (want >= 80)") +
              clause(stat2_ok, "2F S1-only = " + fmt(100 * stat2) + "% (want < 55)") +
              clause(dyn4_ok, "4F S1+S2 = " + fmt(100 * dyn4) + "% (want >= 80)") +
              clause(stat4_ok, "4F S1-only = " + fmt(100 * stat4) + "% (want 65..80)"));
}

// ---- criterion 6: frame-by-frame, three-peak ------------------------------

void criterion_6() {
  const Grid grid = recon_grid(10);
  const SystemMatrixPair pair = build_system_pair(grid, ScannerConfig{}, ParticleConfig{});
  const SplineConcentration truth = three_peak_phantom(grid);
  const Signal u = forward_dynamic(pair, eval_spline(truth, grid));

  ReconConfig cfg;
  cfg.gd_iterations = 100;  // 100 gradient-descent iterations per frame
  const FrameResult dyn = reconstruct_frames(pair, u, cfg, true);
  const FrameResult stat = reconstruct_frames(pair, u, cfg, false);

  auto peak_frame = [](const Eigen::MatrixXd& frames, int voxel) {
    Eigen::Index arg = 0;
    frames.col(voxel).maxCoeff(&arg);
    return static_cast<int>(arg) + 1;  // 1-based frame
  };
  auto background = [](const Eigen::MatrixXd& frames) {
    double worst = 0.0;
    for (int i : {0, 1, 2, 6, 7, 8}) worst = std::max(worst, frames.col(i).cwiseAbs().maxCoeff());
    return worst;
  };

  const double expected[3] = {5.41, 4.96, 4.82};
  bool frames_ok = true;
  std::string frame_detail;
  for (int k = 0; k < 3; ++k) {
    const int fd = peak_frame(dyn.average, 3 + k);
    const int fs = peak_frame(stat.average, 3 + k);
    frames_ok = frames_ok && fd == 3 + k && fs == 3 + k;
    frame_detail += " " + std::to_string(fd) + "/" + std::to_string(fs);
  }
  bool amps_ok = true;
  std::string amp_detail;
  for (int k = 0; k < 3; ++k) {
    const double amp = dyn.average.col(3 + k).maxCoeff();
    amps_ok = amps_ok && std::abs(amp - expected[k]) <= 0.15 * expected[k];
    amp_detail += " " + fmt(amp);
  }
  const double bg_dyn = background(dyn.average);
  const double bg_stat = background(stat.average);
  const bool bg_dyn_ok = bg_dyn <= 0.6;
  const bool bg_stat_ok = bg_stat >= 0.9;
  verdict(6, frames_ok && amps_ok && bg_dyn_ok && bg_stat_ok,
          "three-peak frame-by-frame: " +
              clause(frames_ok, "peak frames dyn/stat =" + frame_detail + " (want 3/3 4/4 5/5)") +
              clause(amps_ok,
                     "dyn amplitudes =" + amp_detail + " (want 5.41/4.96/4.82 +- 15%)") +
              clause(bg_dyn_ok, "background dyn = " + fmt(bg_dyn) + " (want <= 0.6)") +
              clause(bg_stat_ok, "background stat = " + fmt(bg_stat) + " (want >= 0.9)"));
}

// ---- criterion 7: velocity metrics ----------------------------------------

void criterion_7() {
  const double tc = 652.8e-6;
  const BolusVelocity v = bolus_velocity(2e-3, 4.0 * tc, 2.667, 3065.0);
  const bool ok = std::abs(v.average - 1.53) <= 0.01 && std::abs(v.peak - 2.30) <= 0.01;
  verdict(7, ok,
          "bolus velocities: v_av = " + fmt(v.average) + " m/s (want 1.53 +- 0.01), v_max = " +
              fmt(v.peak) + " m/s (want 2.30 +- 0.01)");
}

// ---- criterion 8: property battery ----------------------------------------

void criterion_8() {
  const ScannerConfig scanner{};
  const ParticleConfig particle{};
  bool ok = true;
  std::string what = "property battery:";

  {  // static/dynamic equivalence for constant c, machine precision
    const Grid grid = recon_grid(1);
    const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
    Eigen::VectorXd c(9);
    for (int i = 0; i < 9; ++i) c[i] = 0.1 * (i + 1);
    SampledConcentration conc;
    conc.values = c.transpose().replicate(408, 1);
    conc.rates = Eigen::MatrixXd::Zero(408, 9);
    const double diff =
        (forward_dynamic(pair, conc).samples[0] - forward_static(pair, c).samples[0]).norm();
    ok = ok && diff == 0.0;
    what += " static/dynamic diff = " + fmt(diff) + ";";
  }

  {  // time/frequency equivalence
    const Grid grid = recon_grid(1);
    const SystemMatrixPair pair =
        to_frequency(build_system_pair(grid, scanner, particle, {Channel::x}));
    SplineConcentration ph = zero_phantom(grid);
    ph.coefficients.setRandom();
    ph.coefficients = ph.coefficients.cwiseAbs();
    const SampledConcentration conc = eval_spline(ph, grid);
    const Signal freq = forward_dynamic_freq(pair, conc);
    const Eigen::VectorXcd oracle = dft_forward(forward_dynamic(pair, conc).samples[0]);
    const double rel = (freq.spectra[0] - oracle).norm() / oracle.norm();
    ok = ok && rel <= 1e-10;
    what += " time/freq rel = " + fmt(rel) + " (want <= 1e-10);";
  }

  {  // analytic gradient vs finite differences
    const Grid grid = recon_grid(4, /*n_t*/ 64);
    const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
    const SplineConcentration truth = one_peak_phantom(OnePeakVariant::one_frame, grid);
    const Signal u = forward_dynamic(pair, eval_spline(truth, grid));
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd lambda(truth.basis.size(), 9);
    for (int m = 0; m < lambda.rows(); ++m)
      for (int i = 0; i < 9; ++i) lambda(m, i) = gauss(rng);
    const ParametricObjective at =
        objective_parametric(lambda, pair, u, true, truth.basis, Channel::x);
    double worst = 0.0;
    const double scale = std::max(1.0, at.gradient.cwiseAbs().maxCoeff());
    std::uniform_int_distribution<int> pick_m(0, static_cast<int>(lambda.rows()) - 1);
    std::uniform_int_distribution<int> pick_i(0, 8);
    for (int k = 0; k < 25; ++k) {
      const int m = pick_m(rng), i = pick_i(rng);
      Eigen::MatrixXd plus = lambda, minus = lambda;
      plus(m, i) += 1e-6;
      minus(m, i) -= 1e-6;
      const double fd =
          (objective_parametric(plus, pair, u, true, truth.basis, Channel::x).value -
           objective_parametric(minus, pair, u, true, truth.basis, Channel::x).value) /
          2e-6;
      worst = std::max(worst, std::abs(fd - at.gradient(m, i)) / scale);
    }
    ok = ok && worst <= 1e-5;
    what += " gradcheck rel = " + fmt(worst) + " (want <= 1e-5);";
  }

  {  // Langevin bound, oddness, monotonicity
    const double alpha = particle.magnetic_moment();
    const double ab = alpha * particle.beta();
    bool lang = true;
    double prev = langevin(-10.0 / ab, particle);
    for (int k = 1; k <= 2000; ++k) {
      const double z = (-10.0 + 20.0 * k / 2000.0) / ab;
      const double v = langevin(z, particle);
      lang = lang && v > prev && std::abs(v) < alpha &&
             langevin(-z, particle) == -v;
      prev = v;
    }
    ok = ok && lang;
    what += std::string(" langevin ") + (lang ? "ok" : "violated") + ";";
  }

  {  // FFP residual
    double worst = 0.0;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ts(0.0, scanner.cycle_time);
    for (int k = 0; k < 1000; ++k) {
      const double t = ts(rng);
      const Eigen::Vector3d r = ffp_position(t, scanner);
      worst = std::max(worst,
                       (selection_field(r, scanner) + drive_field(t, scanner).field).norm());
    }
    const double bound = 1e-12 * scanner.amplitude.norm();
    ok = ok && worst <= bound;
    what += " ffp residual = " + fmt(worst) + " (want <= " + fmt(bound) + ");";
  }

  {  // Kaczmarz vs pseudoinverse oracle
    std::mt19937 rng(17);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd a(14, 20);
    for (int j = 0; j < 14; ++j)
      for (int i = 0; i < 20; ++i) a(j, i) = gauss(rng);
    Eigen::VectorXd x0(20);
    for (int i = 0; i < 20; ++i) x0[i] = gauss(rng);
    const Eigen::VectorXd u = a * x0;
    const Eigen::VectorXd c = kaczmarz_static(a, u, 30000);
    const Eigen::VectorXd pinv =
        a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(u);
    const double rel = (c - pinv).norm() / pinv.norm();
    ok = ok && rel <= 1e-6;
    what += " kaczmarz vs pinv rel = " + fmt(rel) + " (want <= 1e-6)";
  }

  verdict(8, ok, what);
}

}  // namespace

int main() {
  std::printf("mpidyn acceptance suite\n");

  const auto t0 = std::chrono::steady_clock::now();
  const Grid grid19 = spectra_grid();
  SystemMatrixPair pair19 = build_system_pair(grid19, ScannerConfig{}, ParticleConfig{});
  const double build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  pair19 = to_frequency(pair19);

  criterion_1(pair19, build_seconds);
  criterion_2();
  criterion_3(pair19);

  const Grid grid4 = recon_grid(4);
  const SystemMatrixPair pair4 = build_system_pair(grid4, ScannerConfig{}, ParticleConfig{});
  const ParametricOutcome r1f = run_parametric(OnePeakVariant::one_frame, pair4, grid4);
  const ParametricOutcome r2f = run_parametric(OnePeakVariant::two_frame, pair4, grid4);
  const ParametricOutcome r4f = run_parametric(OnePeakVariant::four_frame, pair4, grid4);
  criterion_4(r1f);
  criterion_5(r2f, r4f);
  criterion_6();
  criterion_7();
  criterion_8();

  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion/criteria FAILED\n", g_failures);
  return g_failures;
}
