#include "mpidyn/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace mpidyn {

namespace {
// FFTW planning is not thread-safe; execution on plan-local buffers is.
std::mutex planner_mutex;

void transform(const std::complex<double>* in, std::complex<double>* out, int n, int sign) {
  fftw_complex* buf_in;
  fftw_complex* buf_out;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    buf_in = fftw_alloc_complex(static_cast<size_t>(n));
    buf_out = fftw_alloc_complex(static_cast<size_t>(n));
    plan = fftw_plan_dft_1d(n, buf_in, buf_out, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft: plan creation failed");
  for (int i = 0; i < n; ++i) {
    buf_in[i][0] = in[i].real();
    buf_in[i][1] = in[i].imag();
  }
  fftw_execute(plan);
  for (int i = 0; i < n; ++i) out[i] = std::complex<double>(buf_out[i][0], buf_out[i][1]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
    fftw_free(buf_in);
    fftw_free(buf_out);
  }
}
}  // namespace

Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out(x.size());
  if (x.size() == 0) return out;
  transform(x.data(), out.data(), static_cast<int>(x.size()), FFTW_FORWARD);
  return out;
}

Eigen::VectorXcd dft_forward(const Eigen::VectorXd& x) {
  return dft_forward(Eigen::VectorXcd(x.cast<std::complex<double>>()));
}

Eigen::VectorXcd dft_inverse(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out(x.size());
  if (x.size() == 0) return out;
  transform(x.data(), out.data(), static_cast<int>(x.size()), FFTW_BACKWARD);
  out /= static_cast<double>(x.size());
  return out;
}

Eigen::MatrixXcd dft_forward_columns(const Eigen::MatrixXd& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    out.col(c) = dft_forward(Eigen::VectorXd(m.col(c)));
  return out;
}

Eigen::VectorXcd circular_convolution(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("circular_convolution: size mismatch");
  const Eigen::Index n = a.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index m = 0; m <= k; ++m) acc += a[m] * b[k - m];
    for (Eigen::Index m = k + 1; m < n; ++m) acc += a[m] * b[k - m + n];
    out[k] = acc;
  }
  return out;
}

}  // namespace mpidyn
