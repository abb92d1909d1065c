#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "aqim/partition.hpp"

namespace aqim {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace detail {

/// Flat offsets of every index of the chosen party subset, so that a global
/// basis index decomposes as offset_kept[s] + offset_comp[c].
inline std::vector<std::int64_t> subset_offsets(const PartitionSpec& part,
                                                const std::vector<int>& parties) {
  std::vector<std::int64_t> offsets{0};
  for (int p : parties) {
    const std::int64_t d = part.dim(p);
    const std::int64_t stride = part.stride(p);
    std::vector<std::int64_t> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(d));
    for (auto base : offsets)
      for (std::int64_t i = 0; i < d; ++i) next.push_back(base + i * stride);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace detail

/// Reduced projector Tr_{S^c}(|psi><psi|) straight from the amplitudes.
inline MatrixXcd reduced_projector(const VectorXcd& amps, const PartitionSpec& part,
                                   const SubsystemSelector& sel) {
  sel.check_against(part);
  if (amps.size() != part.total_dim())
    throw std::invalid_argument("reduced_projector: amplitude length does not match partition");
  const auto kept = detail::subset_offsets(part, sel.keep());
  const auto comp = detail::subset_offsets(part, sel.complement(part));
  const auto ds = static_cast<Eigen::Index>(kept.size());
  MatrixXcd rho = MatrixXcd::Zero(ds, ds);
  for (auto c : comp) {
    for (Eigen::Index a = 0; a < ds; ++a) {
      const std::complex<double> va = amps[kept[static_cast<std::size_t>(a)] + c];
      for (Eigen::Index b = 0; b <= a; ++b) {
        rho(a, b) += va * std::conj(amps[kept[static_cast<std::size_t>(b)] + c]);
      }
    }
  }
  rho = rho.selfadjointView<Eigen::Lower>();
  return rho;
}

/// Partial trace of a density operator over the complement of the kept set.
inline MatrixXcd reduced_matrix(const MatrixXcd& rho, const PartitionSpec& part,
                                const SubsystemSelector& sel) {
  sel.check_against(part);
  if (rho.rows() != part.total_dim() || rho.cols() != part.total_dim())
    throw std::invalid_argument("reduced_matrix: matrix size does not match partition");
  const auto kept = detail::subset_offsets(part, sel.keep());
  const auto comp = detail::subset_offsets(part, sel.complement(part));
  const auto ds = static_cast<Eigen::Index>(kept.size());
  MatrixXcd out = MatrixXcd::Zero(ds, ds);
  for (auto c : comp)
    for (Eigen::Index a = 0; a < ds; ++a)
      for (Eigen::Index b = 0; b < ds; ++b)
        out(a, b) += rho(kept[static_cast<std::size_t>(a)] + c,
                         kept[static_cast<std::size_t>(b)] + c);
  return out;
}

class DensityMatrix;

/// Normalized pure state tagged with its partition.
class PureState {
 public:
  PureState(VectorXcd amplitudes, PartitionSpec partition)
      : amps_(std::move(amplitudes)), part_(std::move(partition)) {
    if (amps_.size() != part_.total_dim())
      throw std::invalid_argument("PureState: amplitude length does not match partition");
    if (std::abs(amps_.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("PureState: vector is not normalized");
  }

  static PureState basis(const PartitionSpec& part, std::int64_t index) {
    if (index < 0 || index >= part.total_dim())
      throw std::invalid_argument("PureState::basis: index out of range");
    VectorXcd v = VectorXcd::Zero(part.total_dim());
    v[index] = 1.0;
    return PureState(std::move(v), part);
  }

  /// Normalizes the input vector; rejects (near-)zero vectors.
  static PureState normalized(VectorXcd v, PartitionSpec part) {
    const double n = v.norm();
    if (n < 1e-12) throw std::invalid_argument("PureState::normalized: zero vector");
    return PureState(v / n, std::move(part));
  }

  const VectorXcd& amplitudes() const { return amps_; }
  const PartitionSpec& partition() const { return part_; }
  std::int64_t dim() const { return part_.total_dim(); }

  DensityMatrix projector() const;

 private:
  VectorXcd amps_;
  PartitionSpec part_;
};

/// Hermitian, unit-trace, PSD operator tagged with the partition of the
/// space it lives on.
class DensityMatrix {
 public:
  DensityMatrix(MatrixXcd matrix, PartitionSpec partition)
      : mat_(std::move(matrix)), part_(std::move(partition)) {
    validate();
  }

  explicit DensityMatrix(MatrixXcd matrix)
      : mat_(std::move(matrix)), part_(PartitionSpec::single(mat_.rows())) {
    validate();
  }

  /// Fast path for matrices that satisfy the invariants by construction
  /// (reductions, mixtures of projectors). Symmetrizes away rounding noise
  /// but skips the eigenvalue check.
  static DensityMatrix unchecked(MatrixXcd matrix, PartitionSpec partition) {
    DensityMatrix out(Tag{}, std::move(matrix), std::move(partition));
    out.mat_ = 0.5 * (out.mat_ + out.mat_.adjoint().eval());
    return out;
  }

  const MatrixXcd& matrix() const { return mat_; }
  const PartitionSpec& partition() const { return part_; }
  std::int64_t dim() const { return mat_.rows(); }

 private:
  struct Tag {};
  DensityMatrix(Tag, MatrixXcd matrix, PartitionSpec partition)
      : mat_(std::move(matrix)), part_(std::move(partition)) {}

  void validate() {
    if (mat_.rows() != mat_.cols())
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    if (mat_.rows() != part_.total_dim())
      throw std::invalid_argument("DensityMatrix: size does not match partition");
    const double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > 1e-10 || std::abs(mat_.trace().imag()) > 1e-10)
      throw std::invalid_argument("DensityMatrix: trace must be 1");
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("DensityMatrix: eigenvalue check failed to converge");
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }

  MatrixXcd mat_;
  PartitionSpec part_;
};

inline DensityMatrix PureState::projector() const {
  return DensityMatrix::unchecked(amps_ * amps_.adjoint(), part_);
}

inline DensityMatrix maximally_mixed(const PartitionSpec& part) {
  const auto d = part.total_dim();
  return DensityMatrix::unchecked(MatrixXcd::Identity(d, d) / static_cast<double>(d), part);
}

inline DensityMatrix maximally_mixed(const PartitionSpec& part, const SubsystemSelector& sel) {
  return maximally_mixed(sel.kept_partition(part));
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
  const auto part = a.partition().concatenated(b.partition());  // throws on overflow
  const auto da = a.dim(), db = b.dim();
  VectorXcd out(da * db);
  for (std::int64_t i = 0; i < da; ++i)
    out.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
  return PureState(std::move(out), part);
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const auto part = a.partition().concatenated(b.partition());
  const auto da = a.dim(), db = b.dim();
  MatrixXcd out(da * db, da * db);
  for (std::int64_t i = 0; i < da; ++i)
    for (std::int64_t j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return DensityMatrix::unchecked(std::move(out), part);
}

inline DensityMatrix reduce(const PureState& psi, const SubsystemSelector& sel) {
  return DensityMatrix::unchecked(reduced_projector(psi.amplitudes(), psi.partition(), sel),
                                  sel.kept_partition(psi.partition()));
}

inline DensityMatrix reduce(const DensityMatrix& rho, const SubsystemSelector& sel) {
  return DensityMatrix::unchecked(reduced_matrix(rho.matrix(), rho.partition(), sel),
                                  sel.kept_partition(rho.partition()));
}

}  // namespace aqim
