#include "mpidyn/analysis.hpp"

#include "mpidyn/types.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mpidyn;

TEST_SUITE("analysis") {

TEST_CASE("max spectrum") {
  SUBCASE("single voxel passes through") {
    Eigen::MatrixXcd s(8, 1);
    for (int k = 0; k < 8; ++k) s(k, 0) = std::complex<double>(k, -k);
    const Eigen::VectorXd m = max_spectrum(s);
    CHECK(m.size() == 5);  // one-sided
    for (int k = 0; k < 5; ++k) CHECK(m[k] == doctest::Approx(std::abs(s(k, 0))).epsilon(1e-15));
  }

  SUBCASE("all zero") {
    const Eigen::VectorXd m = max_spectrum(Eigen::MatrixXcd::Zero(16, 4));
    CHECK(m.norm() == 0.0);
  }

  SUBCASE("invariant under voxel permutation") {
    std::mt19937 rng(81);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd s(32, 6);
    for (int k = 0; k < 32; ++k)
      for (int i = 0; i < 6; ++i) s(k, i) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::MatrixXcd perm(32, 6);
    const int order[6] = {3, 0, 5, 1, 4, 2};
    for (int i = 0; i < 6; ++i) perm.col(i) = s.col(order[i]);
    CHECK((max_spectrum(s) - max_spectrum(perm)).norm() == 0.0);
  }
}

TEST_CASE("hull approximation") {
  SUBCASE("never drops below the curve; constant input passes through") {
    std::mt19937 rng(84);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd m(120);
    for (int k = 0; k < 120; ++k) m[k] = uni(rng);
    const Eigen::VectorXd hull = hull_approximation(m, 15);
    for (int k = 0; k < 120; ++k) CHECK(hull[k] >= m[k]);

    const Eigen::VectorXd flat = hull_approximation(Eigen::VectorXd::Constant(40, 2.0), 15);
    CHECK((flat.array() - 2.0).abs().maxCoeff() == 0.0);
  }

  SUBCASE("monotone ramp: the hull is the window-shifted curve") {
    Eigen::VectorXd m(40);
    for (int k = 0; k < 40; ++k) m[k] = k;
    const Eigen::VectorXd hull = hull_approximation(m, 15);
    for (int k = 0; k < 40; ++k) CHECK(hull[k] == m[std::min(39, k + 15)]);
  }

  SUBCASE("hand-evaluated toy with one narrow triangle") {
    // peak at bin 7: the hull flat-tops over bins within window reach of it
    Eigen::VectorXd m = Eigen::VectorXd::Zero(40);
    m[6] = 0.5;
    m[7] = 1.0;
    m[8] = 0.5;
    const Eigen::VectorXd hull = hull_approximation(m, 15);
    for (int k = 0; k <= 22; ++k) CHECK(hull[k] == 1.0);
    CHECK(hull[23] == 0.5);  // window reaches only the shoulder at bin 8
    for (int k = 24; k < 40; ++k) CHECK(hull[k] == 0.0);
  }

  SUBCASE("a lone spectral line widens to 2*window+1 bins at half maximum") {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(101);
    m[50] = 1.0;
    const PeakMetrics pm = peak_metrics(hull_approximation(m, 15));
    CHECK(pm.fwhm_bins == doctest::Approx(31.0).epsilon(0.04));
  }

  SUBCASE("scale equivariance") {
    std::mt19937 rng(82);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd m(100);
    for (int k = 0; k < 100; ++k) m[k] = uni(rng);
    const Eigen::VectorXd h1 = hull_approximation(m, 15);
    const Eigen::VectorXd h2 = hull_approximation(3.5 * m, 15);
    CHECK((h2 - 3.5 * h1).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("window must be positive") {
    CHECK_THROWS_AS(hull_approximation(Eigen::VectorXd::Zero(4), 0), ConfigError);
  }
}

TEST_CASE("peak metrics") {
  SUBCASE("pure comb with period 10") {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(100);
    for (int k = 5; k < 100; k += 10) m[k] = 1.0;
    const PeakMetrics pm = peak_metrics(m);
    CHECK(pm.spacing_defined);
    CHECK(pm.spacing_bins == doctest::Approx(10.0).epsilon(1e-12));
  }

  SUBCASE("fewer than two peaks: spacing undefined") {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(50);
    m[20] = 1.0;
    const PeakMetrics pm = peak_metrics(m);
    CHECK_FALSE(pm.spacing_defined);
    CHECK(pm.peak_count == 1);
  }

  SUBCASE("all-zero input reports nothing") {
    const PeakMetrics pm = peak_metrics(Eigen::VectorXd::Zero(32));
    CHECK_FALSE(pm.spacing_defined);
    CHECK(pm.global_max == 0.0);
    CHECK(pm.peak_count == 0);
  }

  SUBCASE("fwhm of a triangle") {
    // triangle peaking at bin 10 with half-width 10: FWHM = 10
    Eigen::VectorXd m(21);
    for (int k = 0; k <= 20; ++k) m[k] = 1.0 - std::abs(k - 10) / 10.0;
    const PeakMetrics pm = peak_metrics(m);
    CHECK(pm.fwhm_bins == doctest::Approx(10.0).epsilon(1e-12));
  }

  SUBCASE("scale invariance") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd m(200);
    for (int k = 0; k < 200; ++k) m[k] = uni(rng);
    const PeakMetrics a = peak_metrics(m);
    const PeakMetrics b = peak_metrics(7.25 * m);
    CHECK(a.spacing_defined == b.spacing_defined);
    CHECK(a.spacing_bins == b.spacing_bins);
    CHECK(a.fwhm_bins == doctest::Approx(b.fwhm_bins).epsilon(1e-12));
  }
}

TEST_CASE("bolus velocity") {
  const double tc = 652.8e-6;

  // reference values: v_av = 2e-3 / (2 T_c) = 1.53 m/s for a 4-frame peak
  const BolusVelocity v = bolus_velocity(2e-3, 4.0 * tc, 2.667, 3065.0);
  CHECK(v.average == doctest::Approx(1.53).epsilon(0.005));
  CHECK(v.peak == doctest::Approx(2.30).epsilon(0.005));

  const BolusVelocity still = bolus_velocity(2e-3, 4.0 * tc, 2.667, 0.0);
  CHECK(still.peak == 0.0);

  CHECK_THROWS_AS(bolus_velocity(2e-3, 4.0 * tc, 0.0, 3065.0), ConfigError);
  CHECK_THROWS_AS(bolus_velocity(0.0, 4.0 * tc, 1.0, 1.0), ConfigError);
}

}  // TEST_SUITE
