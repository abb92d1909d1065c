#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aqim/metrics.hpp"
#include "aqim/sampling.hpp"
#include "aqim/state.hpp"

namespace aqim {

enum class MeritKind { exact_over_ensemble, mc_mean, mc_max_lower_estimate };

inline const char* to_string(MeritKind k) {
  switch (k) {
    case MeritKind::exact_over_ensemble: return "exact_over_ensemble";
    case MeritKind::mc_mean: return "mc_mean";
    case MeritKind::mc_max_lower_estimate: return "mc_max_lower_estimate";
  }
  return "?";
}

/// A figure-of-merit value. Exact finite-ensemble quantities carry no error
/// bar; Monte Carlo means carry a standard error; sampled maxima are lower
/// estimates of a supremum and are flagged as such.
struct MeritReport {
  double value = 0.0;
  double std_error = 0.0;
  MeritKind kind = MeritKind::exact_over_ensemble;
  std::int64_t samples = 0;
};

enum class AggregationMode { max, avg };

/// Finite set of pure states on a shared partition; the computational
/// stand-in for a set of image states.
class StateEnsemble {
 public:
  explicit StateEnsemble(std::vector<PureState> states) : states_(std::move(states)) {
    if (states_.empty()) throw std::invalid_argument("StateEnsemble: empty ensemble");
    for (const auto& s : states_)
      if (!s.partition().same_dims(states_.front().partition()))
        throw std::invalid_argument("StateEnsemble: states must share one partition");
  }

  /// The ensemble of all columns of an isometry; its mean state is exactly
  /// V V^dag / d_C.
  static StateEnsemble columns_of(const Isometry& v, std::optional<std::uint64_t> seed = {}) {
    std::vector<PureState> states;
    states.reserve(static_cast<std::size_t>(v.code_dim()));
    for (Eigen::Index c = 0; c < v.code_dim(); ++c)
      states.emplace_back(PureState::normalized(v.columns().col(c), v.ambient()));
    StateEnsemble out(std::move(states));
    out.provenance_isometry_ = v;
    out.provenance_seed_ = seed;
    return out;
  }

  const std::vector<PureState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const PartitionSpec& partition() const { return states_.front().partition(); }
  const std::optional<Isometry>& provenance_isometry() const { return provenance_isometry_; }
  std::optional<std::uint64_t> provenance_seed() const { return provenance_seed_; }

 private:
  std::vector<PureState> states_;
  std::optional<Isometry> provenance_isometry_;
  std::optional<std::uint64_t> provenance_seed_;
};

namespace detail {

inline std::vector<MatrixXcd> ensemble_reductions(const StateEnsemble& c,
                                                  const SubsystemSelector& sel) {
  std::vector<MatrixXcd> red;
  red.reserve(c.size());
  for (const auto& s : c.states())
    red.push_back(reduced_projector(s.amplitudes(), s.partition(), sel));
  return red;
}

inline MatrixXcd mean_of(const std::vector<MatrixXcd>& mats) {
  MatrixXcd acc = MatrixXcd::Zero(mats.front().rows(), mats.front().cols());
  for (const auto& m : mats) acc += m;
  return acc / static_cast<double>(mats.size());
}

/// Maximum pairwise trace distance of a reduction family.
inline double max_pairwise_distance(const std::vector<MatrixXcd>& red) {
  double best = 0.0;
  for (std::size_t i = 0; i < red.size(); ++i)
    for (std::size_t j = i + 1; j < red.size(); ++j)
      best = std::max(best, trace_norm_hermitian(red[i] - red[j]));
  return best;
}

/// Mean over ordered pairs drawn with replacement (the diagonal contributes
/// zero), mirroring an expectation over two independent draws.
inline double avg_pairwise_distance(const std::vector<MatrixXcd>& red) {
  const double n = static_cast<double>(red.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < red.size(); ++i)
    for (std::size_t j = i + 1; j < red.size(); ++j)
      acc += 2.0 * trace_norm_hermitian(red[i] - red[j]);
  return acc / (n * n);
}

inline double distance_to_reference(const std::vector<MatrixXcd>& red, const MatrixXcd& ref,
                                    AggregationMode mode) {
  if (mode == AggregationMode::max) {
    double best = 0.0;
    for (const auto& r : red) best = std::max(best, trace_norm_hermitian(r - ref));
    return best;
  }
  double acc = 0.0;
  for (const auto& r : red) acc += trace_norm_hermitian(r - ref);
  return acc / static_cast<double>(red.size());
}

}  // namespace detail

/// Sample mean state (1/n) sum |psi><psi|, optionally reduced to S.
inline DensityMatrix ensemble_mean_state(const StateEnsemble& c,
                                         std::optional<SubsystemSelector> sel = {}) {
  if (sel.has_value()) {
    sel->check_against(c.partition());
    return DensityMatrix::unchecked(detail::mean_of(detail::ensemble_reductions(c, *sel)),
                                    sel->kept_partition(c.partition()));
  }
  MatrixXcd acc = MatrixXcd::Zero(c.partition().total_dim(), c.partition().total_dim());
  for (const auto& s : c.states()) acc += s.amplitudes() * s.amplitudes().adjoint();
  return DensityMatrix::unchecked(acc / static_cast<double>(c.size()), c.partition());
}

/// Subsystem variation of the ensemble with respect to a fixed S: maximum or
/// average pairwise trace distance of the reductions.
inline MeritReport variation(const StateEnsemble& c, const SubsystemSelector& sel,
                             AggregationMode mode) {
  sel.check_against(c.partition());
  const auto red = detail::ensemble_reductions(c, sel);
  const double v = (mode == AggregationMode::max) ? detail::max_pairwise_distance(red)
                                                  : detail::avg_pairwise_distance(red);
  return {v, 0.0, MeritKind::exact_over_ensemble, static_cast<std::int64_t>(c.size())};
}

/// Order-k subsystem variation: the worst selector among all |S| = k.
inline MeritReport variation(const StateEnsemble& c, int k, AggregationMode mode) {
  const int m = c.partition().parties();
  if (k < 1 || k > m) throw std::invalid_argument("variation: order k out of range");
  double best = 0.0;
  for (const auto& sel : selectors_of_order(m, k))
    best = std::max(best, variation(c, sel, mode).value);
  return {best, 0.0, MeritKind::exact_over_ensemble, static_cast<std::int64_t>(c.size())};
}

enum class InaccuracyReference { mean, mixed };

/// Subsystem inaccuracy: distance of the reductions to the ensemble-mean
/// reduction, or to the maximally mixed state for the mixed variant.
inline MeritReport inaccuracy(const StateEnsemble& c, const SubsystemSelector& sel,
                              AggregationMode mode, InaccuracyReference reference) {
  sel.check_against(c.partition());
  const auto red = detail::ensemble_reductions(c, sel);
  const MatrixXcd ref =
      (reference == InaccuracyReference::mean)
          ? detail::mean_of(red)
          : MatrixXcd(MatrixXcd::Identity(red.front().rows(), red.front().cols()) /
                      static_cast<double>(red.front().rows()));
  return {detail::distance_to_reference(red, ref, mode), 0.0, MeritKind::exact_over_ensemble,
          static_cast<std::int64_t>(c.size())};
}

inline MeritReport inaccuracy(const StateEnsemble& c, int k, AggregationMode mode,
                              InaccuracyReference reference) {
  const int m = c.partition().parties();
  if (k < 1 || k > m) throw std::invalid_argument("inaccuracy: order k out of range");
  double best = 0.0;
  for (const auto& sel : selectors_of_order(m, k))
    best = std::max(best, inaccuracy(c, sel, mode, reference).value);
  return {best, 0.0, MeritKind::exact_over_ensemble, static_cast<std::int64_t>(c.size())};
}

/// Worst trace distance to the maximally mixed state over all k-party
/// reductions; zero iff the state is exactly k-uniform.
inline double k_uniform_defect(const PureState& psi, int k) {
  const int m = psi.partition().parties();
  if (k < 1 || k > m) throw std::invalid_argument("k_uniform_defect: order k out of range");
  double best = 0.0;
  for (const auto& sel : selectors_of_order(m, k)) {
    const MatrixXcd r = reduced_projector(psi.amplitudes(), psi.partition(), sel);
    const auto ds = r.rows();
    best = std::max(best, trace_norm_hermitian(
                              r - MatrixXcd::Identity(ds, ds) / static_cast<double>(ds)));
  }
  return best;
}

/// Generalized Meyer-Wallach entanglement measure
/// Q_k = d^k/(d^k - 1) * [1 - avg_S Tr(psi_S^2)], requiring equal local dims.
inline double gmw_qk(const PureState& psi, int k) {
  const auto& dims = psi.partition().dims();
  const int m = psi.partition().parties();
  if (k < 1 || k > m) throw std::invalid_argument("gmw_qk: order k out of range");
  for (auto d : dims)
    if (d != dims.front())
      throw std::invalid_argument("gmw_qk: mixed local dimensions are unsupported");
  if (dims.front() < 2) throw std::invalid_argument("gmw_qk: local dimension must be >= 2");
  const double d = static_cast<double>(dims.front());
  double purity_sum = 0.0;
  const auto sels = selectors_of_order(m, k);
  for (const auto& sel : sels)
    purity_sum += purity(reduced_projector(psi.amplitudes(), psi.partition(), sel));
  const double dk = std::pow(d, k);
  return dk / (dk - 1.0) * (1.0 - purity_sum / static_cast<double>(sels.size()));
}

/// True iff the ensemble is exactly k-uniformly masked up to tol: the
/// order-k maximum variation does not exceed tol.
inline bool exact_mask_check(const StateEnsemble& c, int k, double tol) {
  return variation(c, k, AggregationMode::max).value <= tol;
}

}  // namespace aqim
