#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aqim/ensemble.hpp"
#include "aqim/metrics.hpp"
#include "aqim/sampling.hpp"
#include "aqim/stats.hpp"

namespace aqim {

/// Figures of merit of a subspace (the set of all its pure states), estimated
/// by sampling. Averages are Monte Carlo means; maxima are lower estimates of
/// the supremum over the subspace sphere.
enum class SubspaceMerit {
  avg_variation,          // V^A: mean pairwise reduction distance
  max_variation,          // V^M: max over sampled pairs
  avg_inaccuracy,         // Lambda^A: mean distance to the reduced code projector
  max_inaccuracy,         // Lambda^M: max over samples
  avg_inaccuracy_mixed,   // mean distance to the maximally mixed state
  max_inaccuracy_mixed,   // max over samples
};

inline bool is_average_merit(SubspaceMerit m) {
  return m == SubspaceMerit::avg_variation || m == SubspaceMerit::avg_inaccuracy ||
         m == SubspaceMerit::avg_inaccuracy_mixed;
}

inline bool is_variation_merit(SubspaceMerit m) {
  return m == SubspaceMerit::avg_variation || m == SubspaceMerit::max_variation;
}

inline const char* to_string(SubspaceMerit m) {
  switch (m) {
    case SubspaceMerit::avg_variation: return "avg-variation";
    case SubspaceMerit::max_variation: return "max-variation";
    case SubspaceMerit::avg_inaccuracy: return "avg-inaccuracy";
    case SubspaceMerit::max_inaccuracy: return "max-inaccuracy";
    case SubspaceMerit::avg_inaccuracy_mixed: return "avg-inaccuracy-mixed";
    case SubspaceMerit::max_inaccuracy_mixed: return "max-inaccuracy-mixed";
  }
  return "?";
}

inline SubspaceMerit subspace_merit_from_string(const std::string& s) {
  for (auto m : {SubspaceMerit::avg_variation, SubspaceMerit::max_variation,
                 SubspaceMerit::avg_inaccuracy, SubspaceMerit::max_inaccuracy,
                 SubspaceMerit::avg_inaccuracy_mixed, SubspaceMerit::max_inaccuracy_mixed})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown merit id: " + s);
}

/// Either one explicit subsystem or every subsystem of k parties.
using SelectorOrOrder = std::variant<SubsystemSelector, int>;

namespace detail {

inline std::vector<SubsystemSelector> resolve_selectors(const PartitionSpec& part,
                                                        const SelectorOrOrder& which) {
  if (std::holds_alternative<SubsystemSelector>(which)) {
    auto sel = std::get<SubsystemSelector>(which);
    sel.check_against(part);
    return {sel};
  }
  const int k = std::get<int>(which);
  if (k < 1 || k > part.parties())
    throw std::invalid_argument("subspace merit: order k out of range");
  return selectors_of_order(part.parties(), k);
}

}  // namespace detail

/// Monte Carlo estimate of a subspace figure of merit for a fixed isometry.
/// Average merits report the per-selector mean and take the worst selector;
/// maxima report the sampled maximum, flagged as a lower estimate. The
/// reduced code projector is computed exactly from the isometry, never
/// sampled.
inline MeritReport subspace_merit_estimate(const Isometry& v, const SelectorOrOrder& which,
                                           SubspaceMerit merit, std::int64_t n_samples,
                                           RngStream& rng, int workers = 1) {
  if (n_samples < 1) throw std::invalid_argument("subspace_merit_estimate: need n_samples >= 1");
  if (is_average_merit(merit) && n_samples < 2)
    throw std::invalid_argument("subspace_merit_estimate: average merits need n_samples >= 2");
  const auto sels = detail::resolve_selectors(v.ambient(), which);

  std::vector<MatrixXcd> refs;
  refs.reserve(sels.size());
  for (const auto& sel : sels) {
    if (merit == SubspaceMerit::avg_inaccuracy || merit == SubspaceMerit::max_inaccuracy) {
      refs.push_back(v.code_projector_reduced(sel));
    } else if (!is_variation_merit(merit)) {
      const auto ds = sel.kept_dim(v.ambient());
      refs.push_back(MatrixXcd::Identity(ds, ds) / static_cast<double>(ds));
    }
  }

  // One row of per-selector distances per sample; pairs are drawn fresh for
  // the variation merits.
  auto rows = sample_map(n_samples, workers, rng, [&](RngStream& r, std::int64_t) {
    std::vector<double> row(sels.size());
    if (is_variation_merit(merit)) {
      const PureState psi = subspace_state(v, r);
      const PureState phi = subspace_state(v, r);
      for (std::size_t s = 0; s < sels.size(); ++s)
        row[s] = trace_norm_hermitian(
            reduced_projector(psi.amplitudes(), v.ambient(), sels[s]) -
            reduced_projector(phi.amplitudes(), v.ambient(), sels[s]));
    } else {
      const PureState psi = subspace_state(v, r);
      for (std::size_t s = 0; s < sels.size(); ++s)
        row[s] = trace_norm_hermitian(
            reduced_projector(psi.amplitudes(), v.ambient(), sels[s]) - refs[s]);
    }
    return row;
  });

  if (is_average_merit(merit)) {
    MeanSe best{-1.0, 0.0, 0};
    for (std::size_t s = 0; s < sels.size(); ++s) {
      std::vector<double> col(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][s];
      const MeanSe ms = mean_and_se(col);
      if (ms.mean > best.mean) best = ms;
    }
    return {best.mean, best.se, MeritKind::mc_mean, n_samples};
  }
  double best = 0.0;
  for (const auto& row : rows)
    for (double x : row) best = std::max(best, x);
  return {best, 0.0, MeritKind::mc_max_lower_estimate, n_samples};
}

struct QecInterval {
  MeritReport subsystem_variance;  // sampled lower estimate of Lambda^M(H_C, k)
  double lower = 0.0;              // eta / 4
  double upper = 0.0;              // sqrt(d_C * eta)
};

/// The replacement-channel QEC inaccuracy bracket [eta/4, sqrt(d_C eta)]
/// for plain eta.
inline std::pair<double, double> qec_inaccuracy_bounds(double eta, std::int64_t code_dim) {
  if (eta < 0 || code_dim < 1) throw std::invalid_argument("qec_inaccuracy_bounds: bad arguments");
  return {eta / 4.0, std::sqrt(static_cast<double>(code_dim) * eta)};
}

/// Estimates the overall subsystem variance eta(H_C, k) = Lambda^M(H_C, k)
/// and brackets the QEC inaccuracy for replacement noise on any k-party
/// subsystem. eta is a sampled lower estimate, so the bracket inherits that
/// caveat.
inline QecInterval qec_interval(const Isometry& v, int k, std::int64_t n_samples, RngStream& rng,
                                int workers = 1) {
  const int m = v.ambient().parties();
  if (k < 1 || k > m / 2) throw std::invalid_argument("qec_interval: need 1 <= k <= floor(m/2)");
  QecInterval out;
  if (v.code_dim() == 1) {
    // A one-dimensional code space has a single state; eta vanishes exactly.
    out.subsystem_variance = {0.0, 0.0, MeritKind::exact_over_ensemble, 1};
  } else {
    out.subsystem_variance =
        subspace_merit_estimate(v, k, SubspaceMerit::max_inaccuracy, n_samples, rng, workers);
  }
  const auto [lo, hi] = qec_inaccuracy_bounds(out.subsystem_variance.value, v.code_dim());
  out.lower = lo;
  out.upper = hi;
  return out;
}

}  // namespace aqim
