#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "aqim/state.hpp"

namespace aqim {

/// Trace norm of a Hermitian matrix: sum of |eigenvalues|. The input is
/// symmetrized first; asymmetry beyond 1e-6 is rejected.
inline double trace_norm_hermitian(const MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm_hermitian: square input required");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-6) throw std::domain_error("trace_norm_hermitian: input is not Hermitian");
  const MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("trace_norm_hermitian: eigensolver did not converge");
  return es.eigenvalues().cwiseAbs().sum();
}

/// Schatten p-norm of a Hermitian matrix, p in {1, 2}.
inline double schatten_norm(const MatrixXcd& m, int p) {
  switch (p) {
    case 1:
      return trace_norm_hermitian(m);
    case 2: {
      if (m.rows() != m.cols()) throw std::invalid_argument("schatten_norm: square input required");
      const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (asym > 1e-6) throw std::domain_error("schatten_norm: input is not Hermitian");
      return (0.5 * (m + m.adjoint())).norm();
    }
    default:
      throw std::invalid_argument("schatten_norm: only p = 1 and p = 2 are supported");
  }
}

/// Trace distance in the convention without the 1/2 factor: D = ||rho - sigma||_1,
/// so orthogonal pure states are at distance 2.
inline double trace_distance(const MatrixXcd& rho, const MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return trace_norm_hermitian(rho - sigma);
}

inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

namespace detail {

inline MatrixXcd psd_sqrt(const MatrixXcd& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error(std::string(who) + ": eigensolver did not converge");
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-8) throw std::domain_error(std::string(who) + ": negative eigenvalue");
  // rounding noise on rank-deficient inputs turns into sqrt(eps)-sized
  // eigenvalues; zero everything far below the top of the spectrum
  const double floor = 1e-12 * std::max(0.0, ev.maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    ev[i] = ev[i] > floor ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Fidelity F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1, in [0, 1]. For pure
/// rho = |psi><psi| this reduces to sqrt(<psi|sigma|psi>).
inline double fidelity(const MatrixXcd& rho, const MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const MatrixXcd root = detail::psd_sqrt(0.5 * (rho + rho.adjoint()), "fidelity");
  const MatrixXcd inner = root * (0.5 * (sigma + sigma.adjoint())) * root;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("fidelity: eigensolver did not converge");
  if (es.eigenvalues().minCoeff() < -1e-8) throw std::domain_error("fidelity: negative eigenvalue");
  const double floor = 1e-12 * std::max(0.0, es.eigenvalues().maxCoeff());
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > floor) f += std::sqrt(es.eigenvalues()[i]);
  return std::min(f, 1.0 + 1e-9);
}

inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return fidelity(rho.matrix(), sigma.matrix());
}

/// Purity Tr(rho^2); equals the squared Frobenius norm for Hermitian rho.
inline double purity(const MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("purity: square input required");
  return rho.squaredNorm();
}

inline double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

/// Squared Hilbert-Schmidt distance ||a - b||_2^2.
inline double hs_distance_sq(const MatrixXcd& a, const MatrixXcd& b) {
  return (a - b).squaredNorm();
}

}  // namespace aqim
