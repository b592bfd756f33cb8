#pragma once

#include <Eigen/Dense>

#include <complex>

namespace mpidyn {

// Repo-wide DFT convention: X_k = sum_j x_j e^{-2 pi i j k / n} (unnormalized
// forward), inverse carries the 1/n. With this pairing the convolution theorem
// reads DFT(x .* y) = (1/n) DFT(x) (*) DFT(y).

Eigen::VectorXcd dft_forward(const Eigen::VectorXd& x);
Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& x);
Eigen::VectorXcd dft_inverse(const Eigen::VectorXcd& x);

/// Columnwise forward DFT.
Eigen::MatrixXcd dft_forward_columns(const Eigen::MatrixXd& m);

/// Circular convolution of equal-length sequences, (a (*) b)_k = sum_m a_m b_{(k-m) mod n}.
/// Direct O(n^2) evaluation; the FFT route is reserved for the oracle side.
Eigen::VectorXcd circular_convolution(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace mpidyn
