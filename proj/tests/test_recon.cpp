#include "mpidyn/recon.hpp"

#include <doctest.h>

#include <random>

using namespace mpidyn;

namespace {
const ScannerConfig scanner{};
const ParticleConfig particle{};

Grid recon_grid(int frames, int n_t = 408) {
  GridSpec s;
  s.nx = s.ny = 3;
  s.nz = 1;
  s.samples_per_cycle = n_t;
  s.frame_count = frames;
  return Grid::make(s);
}

Eigen::MatrixXd random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) a(j, i) = gauss(rng);
  return a;
}
}  // namespace

TEST_SUITE("recon") {

TEST_CASE("kaczmarz on the identity solves in one sweep") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(6, 6);
  Eigen::VectorXd u(6);
  u << 1, -2, 3, 0.5, 0, 4;
  const Eigen::VectorXd c = kaczmarz_static(a, u, 1);
  CHECK((c - u).norm() == 0.0);
}

TEST_CASE("kaczmarz matches the normal-equations oracle on a consistent system") {
  const Eigen::MatrixXd a = random_matrix(8, 4, 101);
  Eigen::VectorXd truth(4);
  truth << 1.0, -0.5, 2.0, 0.25;
  const Eigen::VectorXd u = a * truth;
  const Eigen::VectorXd c = kaczmarz_static(a, u, 500);
  const Eigen::VectorXd oracle = (a.transpose() * a).ldlt().solve(a.transpose() * u);
  CHECK((c - oracle).norm() <= 1e-6 * oracle.norm());
}

TEST_CASE("kaczmarz from zero stays at zero for zero data") {
  const Eigen::MatrixXd a = random_matrix(5, 3, 102);
  CHECK(kaczmarz_static(a, Eigen::VectorXd::Zero(5), 20).norm() == 0.0);
}

TEST_CASE("kaczmarz skips zero rows") {
  Eigen::MatrixXd a = random_matrix(6, 3, 103);
  a.row(2).setZero();
  Eigen::VectorXd truth(3);
  truth << 0.3, -1.0, 0.7;
  Eigen::VectorXd u = a * truth;
  const Eigen::VectorXd c = kaczmarz_static(a, u, 2000);
  CHECK((c - truth).norm() <= 1e-6 * truth.norm());
}

TEST_CASE("kaczmarz converges to the minimum-norm solution") {
  // underdetermined consistent system: the limit is pinv(a) u
  for (unsigned seed : {201u, 202u, 203u}) {
    const Eigen::MatrixXd a = random_matrix(12, 20, seed);
    const Eigen::VectorXd x0 = random_matrix(20, 1, seed + 50);
    const Eigen::VectorXd u = a * x0;
    const Eigen::VectorXd c = kaczmarz_static(a, u, 30000);
    const Eigen::VectorXd oracle =
        a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(u);
    CHECK((c - oracle).norm() <= 1e-6 * oracle.norm());
  }
}

TEST_CASE("kaczmarz with tikhonov approaches the regularized solution") {
  const Eigen::MatrixXd a = random_matrix(10, 6, 105);
  const Eigen::VectorXd u = random_matrix(10, 1, 106);
  const double lambda = 0.5;
  const Eigen::VectorXd c = kaczmarz_static(a, u, 20000, lambda);
  const Eigen::MatrixXd gram =
      a * a.transpose() + lambda * Eigen::MatrixXd::Identity(10, 10);
  const Eigen::VectorXd oracle = a.transpose() * gram.ldlt().solve(u);
  CHECK((c - oracle).norm() <= 1e-6 * oracle.norm());
}

TEST_CASE("kaczmarz recovers a delta voxel from its static simulation") {
  const Grid grid = recon_grid(1);
  const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(9);
  delta[4] = 1.0;
  const Signal u = forward_static(pair, delta);

  ReconConfig cfg;
  cfg.kaczmarz_sweeps = 50;
  const FrameResult res = reconstruct_frames_kaczmarz(pair, u, cfg);
  CHECK((res.average.row(0).transpose() - delta).norm() <= 0.05 * delta.norm());
}

TEST_CASE("parametric objective") {
  const Grid grid = recon_grid(4, 64);
  const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
  const SplineConcentration truth = one_peak_phantom(OnePeakVariant::one_frame, grid);
  const Signal u = forward_dynamic(pair, eval_spline(truth, grid));
  const CubicBsplineBasis& basis = truth.basis;

  SUBCASE("ground-truth coefficients fit exactly") {
    for (bool use_s2 : {true, false}) {
      Signal sim = use_s2 ? u : [&] {
        // consistent data for the S1-only model: drop the S2 term
        SystemMatrixPair p1 = pair;
        for (auto& s2 : p1.s2) s2.setZero();
        return forward_dynamic(p1, eval_spline(truth, grid));
      }();
      const ParametricObjective obj =
          objective_parametric(truth.coefficients, pair, sim, use_s2, basis, Channel::x);
      CHECK(obj.value <= 1e-20 * sim.samples[0].squaredNorm());
    }
  }

  SUBCASE("zero everything") {
    Signal zero = u;
    for (auto& s : zero.samples) s.setZero();
    const ParametricObjective obj = objective_parametric(
        Eigen::MatrixXd::Zero(basis.size(), 9), pair, zero, true, basis, Channel::x);
    CHECK(obj.value == 0.0);
    CHECK(obj.gradient.norm() == 0.0);
  }

  SUBCASE("gradient matches central finite differences") {
    std::mt19937 rng(111);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd lambda(basis.size(), 9);
    for (int m = 0; m < basis.size(); ++m)
      for (int i = 0; i < 9; ++i) lambda(m, i) = gauss(rng);

    for (bool use_s2 : {true, false}) {
      const ParametricObjective at =
          objective_parametric(lambda, pair, u, use_s2, basis, Channel::y);
      std::uniform_int_distribution<int> pick_m(0, basis.size() - 1), pick_i(0, 8);
      const double scale = std::max(1.0, at.gradient.cwiseAbs().maxCoeff());
      for (int k = 0; k < 20; ++k) {
        const int m = pick_m(rng), i = pick_i(rng);
        const double h = 1e-6;
        Eigen::MatrixXd plus = lambda, minus = lambda;
        plus(m, i) += h;
        minus(m, i) -= h;
        const double fd = (objective_parametric(plus, pair, u, use_s2, basis, Channel::y).value -
                           objective_parametric(minus, pair, u, use_s2, basis, Channel::y).value) /
                          (2.0 * h);
        CHECK(std::abs(fd - at.gradient(m, i)) <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("parametric reconstruction recovers spline-representable data") {
  const Grid grid = recon_grid(4, 256);
  const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
  const SplineConcentration truth = one_peak_phantom(OnePeakVariant::one_frame, grid);
  const Signal u = forward_dynamic(pair, eval_spline(truth, grid));

  ReconConfig cfg;
  cfg.cg_iterations = 800;
  const ParametricResult res = reconstruct_parametric(pair, u, cfg, true);

  for (size_t c = 0; c < res.residuals.size(); ++c) {
    const auto& h = res.residuals[c];
    CHECK(h.back() <= 1e-8 * u.samples[c].norm());
    for (size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1] * (1.0 + 1e-9));
  }

  // the channel-average curve reproduces the r_5 peak
  double best = 0.0;
  for (int j = 0; j < grid.record_length(); ++j)
    best = std::max(best, res.average.value(4, grid.record_time_sample(j)));
  CHECK(best == doctest::Approx(2.667).epsilon(0.05));
}

TEST_CASE("joint-channel stacking solves both channels at once") {
  const Grid grid = recon_grid(4, 128);
  const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);
  const SplineConcentration truth = one_peak_phantom(OnePeakVariant::two_frame, grid);
  const Signal u = forward_dynamic(pair, eval_spline(truth, grid));

  ReconConfig cfg;
  cfg.cg_iterations = 400;
  cfg.joint_channels = true;
  const ParametricResult res = reconstruct_parametric(pair, u, cfg, true);
  REQUIRE(res.residuals.size() == 1);  // one stacked solve

  double best = 0.0;
  for (int j = 0; j < grid.record_length(); ++j)
    best = std::max(best, res.average.value(4, grid.record_time_sample(j)));
  CHECK(best == doctest::Approx(2.667).epsilon(0.05));
}

TEST_CASE("frame-by-frame reconstruction") {
  const Grid grid = recon_grid(3, 96);
  const SystemMatrixPair pair = build_system_pair(grid, scanner, particle);

  SUBCASE("static concentration: both modes agree from frame 2 on") {
    Eigen::VectorXd c(9);
    for (int i = 0; i < 9; ++i) c[i] = 0.5 + 0.2 * i;
    SampledConcentration conc;
    conc.values = c.transpose().replicate(grid.record_length(), 1);
    conc.rates = Eigen::MatrixXd::Zero(grid.record_length(), 9);
    const Signal u = forward_dynamic(pair, conc);

    ReconConfig cfg;
    cfg.gd_iterations = 4000;
    const FrameResult dyn = reconstruct_frames(pair, u, cfg, true);
    const FrameResult stat = reconstruct_frames(pair, u, cfg, false);
    for (int f = 1; f < 3; ++f) {
      const double diff = (dyn.average.row(f) - stat.average.row(f)).norm();
      CHECK(diff <= 1e-6 * stat.average.row(f).norm());
    }
  }

  SUBCASE("residuals are non-increasing within every frame") {
    const Grid g4 = recon_grid(4, 96);
    const SystemMatrixPair p4 = build_system_pair(g4, scanner, particle);
    const SplineConcentration truth = one_peak_phantom(OnePeakVariant::two_frame, g4);
    const Signal u = forward_dynamic(p4, eval_spline(truth, g4));
    ReconConfig cfg;
    cfg.gd_iterations = 100;
    const FrameResult res = reconstruct_frames(p4, u, cfg, true);
    const size_t per_frame = static_cast<size_t>(cfg.gd_iterations) + 1;
    for (const auto& h : res.residuals) {
      REQUIRE(h.size() == per_frame * 4);
      for (size_t k = 1; k < h.size(); ++k) {
        if (k % per_frame == 0) continue;  // a new frame restarts from zero init
        CHECK(h[k] <= h[k - 1] * (1.0 + 1e-9));
      }
    }
  }
}

}  // TEST_SUITE
