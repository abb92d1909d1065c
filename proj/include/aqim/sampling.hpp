#pragma once

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "aqim/partition.hpp"
#include "aqim/rng.hpp"
#include "aqim/state.hpp"

namespace aqim {

namespace detail {

inline MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.gaussian_complex();
  return g;
}

/// Thin QR of a Ginibre matrix with the diagonal-phase correction. Without
/// rescaling Q by the phases of diag(R) the distribution is not Haar.
inline MatrixXcd haar_orthonormal_columns(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  const MatrixXcd g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(rows, cols);
  const auto rdiag = qr.matrixQR().diagonal().head(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double mag = std::abs(rdiag[j]);
    if (mag > 0.0) q.col(j) *= rdiag[j] / mag;
  }
  return q;
}

}  // namespace detail

/// Haar-random unitary on a d-dimensional space.
inline MatrixXcd haar_unitary(std::int64_t d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  if (d > kMaxTotalDim) throw std::length_error("haar_unitary: dimension exceeds capacity");
  return detail::haar_orthonormal_columns(d, d, rng);
}

/// Haar-random pure state: normalized standard complex Gaussian vector.
inline PureState haar_state(const PartitionSpec& part, RngStream& rng) {
  VectorXcd v(part.total_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.gaussian_complex();
  return PureState::normalized(std::move(v), part);
}

inline PureState haar_state(std::int64_t d, RngStream& rng) {
  return haar_state(PartitionSpec::single(d), rng);
}

/// D x d_C matrix with orthonormal columns; the column span of a random draw
/// is uniform on the Grassmannian.
class Isometry {
 public:
  Isometry(MatrixXcd columns, PartitionSpec ambient)
      : cols_(std::move(columns)), ambient_(std::move(ambient)) {
    if (cols_.rows() != ambient_.total_dim())
      throw std::invalid_argument("Isometry: row count does not match ambient dimension");
    if (cols_.cols() < 1 || cols_.cols() > cols_.rows())
      throw std::invalid_argument("Isometry: need 1 <= code_dim <= ambient dimension");
    const MatrixXcd gram = cols_.adjoint() * cols_;
    if ((gram - MatrixXcd::Identity(cols_.cols(), cols_.cols())).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("Isometry: columns are not orthonormal");
  }

  const MatrixXcd& columns() const { return cols_; }
  const PartitionSpec& ambient() const { return ambient_; }
  std::int64_t code_dim() const { return cols_.cols(); }
  std::int64_t ambient_dim() const { return cols_.rows(); }

  /// Apply to a code-space vector, producing an ambient pure state.
  PureState embed(const VectorXcd& code_vec) const {
    if (code_vec.size() != code_dim())
      throw std::invalid_argument("Isometry::embed: code vector has wrong length");
    return PureState::normalized(cols_ * code_vec, ambient_);
  }

  /// Reduction of the normalized code projector, Tr_{S^c}(V V^dag) / d_C,
  /// assembled column by column so the D x D projector is never formed.
  MatrixXcd code_projector_reduced(const SubsystemSelector& sel) const {
    const auto ds = sel.kept_dim(ambient_);
    MatrixXcd out = MatrixXcd::Zero(ds, ds);
    for (Eigen::Index c = 0; c < cols_.cols(); ++c)
      out += reduced_projector(cols_.col(c), ambient_, sel);
    return out / static_cast<double>(code_dim());
  }

 private:
  MatrixXcd cols_;
  PartitionSpec ambient_;
};

/// Random subspace of the ambient space: first d_C columns of a Haar unitary,
/// realized through the phase-corrected QR of a D x d_C Ginibre matrix.
inline Isometry random_isometry(const PartitionSpec& ambient, std::int64_t code_dim,
                                RngStream& rng) {
  if (code_dim < 1 || code_dim > ambient.total_dim())
    throw std::invalid_argument("random_isometry: need 1 <= code_dim <= ambient dimension");
  return Isometry(detail::haar_orthonormal_columns(ambient.total_dim(), code_dim, rng), ambient);
}

/// Haar-random pure state of the code space, embedded in the ambient space.
inline PureState subspace_state(const Isometry& v, RngStream& rng) {
  VectorXcd code(v.code_dim());
  for (Eigen::Index i = 0; i < code.size(); ++i) code[i] = rng.gaussian_complex();
  code.normalize();
  return v.embed(code);
}

struct OverlapPair {
  PureState first;
  PureState second;
  double overlap;  // |<first|second>|
};

/// Pair of ambient states with a prescribed overlap a: a Haar-rotated copy of
/// (a|0> + sqrt(1-a^2)|1>, |0>). Only the first two columns of the rotation
/// matter, so a D x 2 isometry is drawn.
inline OverlapPair sample_pair_with_overlap(const PartitionSpec& ambient, double a,
                                            RngStream& rng) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::invalid_argument("sample_pair_with_overlap: overlap must lie in [0, 1]");
  if (ambient.total_dim() < 2)
    throw std::invalid_argument("sample_pair_with_overlap: ambient dimension must be >= 2");
  const MatrixXcd q = detail::haar_orthonormal_columns(ambient.total_dim(), 2, rng);
  VectorXcd psi = a * q.col(0) + std::sqrt(std::max(0.0, 1.0 - a * a)) * q.col(1);
  return {PureState::normalized(std::move(psi), ambient),
          PureState::normalized(q.col(0), ambient), a};
}

/// Two independent Haar states of a shared random d_C-subspace, with their
/// realized overlap. With the overlap argument present, delegates to the
/// fixed-overlap construction above.
inline OverlapPair sample_overlap_pair(std::int64_t code_dim, const PartitionSpec& ambient,
                                       RngStream& rng, std::optional<double> a = std::nullopt) {
  if (code_dim < 2) throw std::invalid_argument("sample_overlap_pair: code_dim must be >= 2");
  if (a.has_value()) return sample_pair_with_overlap(ambient, *a, rng);
  const Isometry v = random_isometry(ambient, code_dim, rng);
  VectorXcd c1(code_dim), c2(code_dim);
  for (Eigen::Index i = 0; i < code_dim; ++i) c1[i] = rng.gaussian_complex();
  for (Eigen::Index i = 0; i < code_dim; ++i) c2[i] = rng.gaussian_complex();
  c1.normalize();
  c2.normalize();
  const double realized = std::abs(c1.dot(c2));
  return {v.embed(c1), v.embed(c2), realized};
}

}  // namespace aqim
