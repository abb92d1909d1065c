#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "aqim/special_functions.hpp"

namespace aqim {

/// Expectation ratio between the average subsystem variation of a random
/// d_C-dimensional subspace and that of the full space:
/// (2 d_C - 2)(2 d_12 - 1) / ((2 d_C - 1)(2 d_12 - 2)).
inline double ratio_factor(std::int64_t d_c, std::int64_t d_12) {
  if (d_12 < 2 || d_c < 1 || d_c > d_12)
    throw std::invalid_argument("ratio_factor: need 1 <= d_C <= d_12 and d_12 >= 2");
  const double a = static_cast<double>(d_c), b = static_cast<double>(d_12);
  return (2.0 * a - 2.0) * (2.0 * b - 1.0) / ((2.0 * a - 1.0) * (2.0 * b - 2.0));
}

/// Universal lower bound w = ratio_factor / 6 for the expected average
/// subsystem variation of a random subspace; exceeds 1/9 once d_C >= 2 and
/// approaches 1/6 for large dimensions.
inline double lower_bound_w(std::int64_t d_c, std::int64_t d_12) {
  if (d_c < 2) throw std::invalid_argument("lower_bound_w: needs d_C >= 2");
  return ratio_factor(d_c, d_12) / 6.0;
}

namespace detail {

/// The signed Pochhammer/binomial sum shared by the average-distance lower
/// bounds: sum_{i=1}^{d1} C(1/2,i) C(1/2,i-1) (d2)_{3/2-i} / (d1+1)_{-i}.
inline double fidelity_series_sum(std::int64_t d1, std::int64_t d2) {
  double acc = 0.0;
  for (std::int64_t i = 1; i <= d1; ++i) {
    const double fi = static_cast<double>(i);
    const double term = generalized_binomial(0.5, fi) * generalized_binomial(0.5, fi - 1.0) *
                        pochhammer(static_cast<double>(d2), 1.5 - fi) /
                        pochhammer(static_cast<double>(d1) + 1.0, -fi);
    acc += term;
  }
  return acc;
}

}  // namespace detail

enum class AvgDistanceBound {
  lb_identity_B1,     // lower bound on the mean distance of psi_B1 to maximally mixed
  lb_identity_B2,     // same for psi_B2
  lb_pair_B2_simple,  // 2 - 2 sqrt(d1/d2) lower bound for pair distances on B2
  v1,                 // subspace version: ratio_factor x lb_identity_B1
  v2,                 // subspace version: ratio_factor x lb_identity_B2
};

inline const char* to_string(AvgDistanceBound id) {
  switch (id) {
    case AvgDistanceBound::lb_identity_B1: return "lb-identity-B1";
    case AvgDistanceBound::lb_identity_B2: return "lb-identity-B2";
    case AvgDistanceBound::lb_pair_B2_simple: return "lb-pair-B2-simple";
    case AvgDistanceBound::v1: return "v1";
    case AvgDistanceBound::v2: return "v2";
  }
  return "?";
}

/// Closed-form lower bounds for average trace distances of Haar states in a
/// bipartite space (and their random-subspace counterparts v1/v2).
inline double avg_distance_bound(AvgDistanceBound id, std::int64_t d1, std::int64_t d2,
                                 std::int64_t d_c = 0) {
  if (d1 < 2 || d2 < d1) throw std::invalid_argument("avg_distance_bound: need 2 <= d1 <= d2");
  const double fd1 = static_cast<double>(d1), fd2 = static_cast<double>(d2);
  const std::int64_t d12 = d1 * d2;
  switch (id) {
    case AvgDistanceBound::lb_pair_B2_simple:
      return 2.0 - 2.0 * std::sqrt(fd1 / fd2);
    case AvgDistanceBound::lb_identity_B1:
      return 2.0 - 4.0 / (std::sqrt(fd1) * pochhammer(static_cast<double>(d12), 0.5)) *
                       detail::fidelity_series_sum(d1, d2);
    case AvgDistanceBound::lb_identity_B2:
      return 2.0 - 4.0 / (std::sqrt(fd2) * pochhammer(static_cast<double>(d12), 0.5)) *
                       detail::fidelity_series_sum(d1, d2);
    case AvgDistanceBound::v1:
      return ratio_factor(d_c, d12) * avg_distance_bound(AvgDistanceBound::lb_identity_B1, d1, d2);
    case AvgDistanceBound::v2:
      return ratio_factor(d_c, d12) * avg_distance_bound(AvgDistanceBound::lb_identity_B2, d1, d2);
  }
  throw std::invalid_argument("avg_distance_bound: unknown id");
}

struct BoundParams {
  std::int64_t d1 = 0;   // first party dimension (bipartite ids)
  std::int64_t d2 = 0;   // second party dimension (bipartite ids)
  std::int64_t d_c = 0;  // subspace dimension
  std::int64_t d = 0;    // common local dimension (multipartite ids)
  int m = 0;             // number of parties
  int k = 0;             // subsystem order
};

enum class BoundId { r, s, t, u, t_multi, rmt_factor };

inline const char* to_string(BoundId id) {
  switch (id) {
    case BoundId::r: return "r";
    case BoundId::s: return "s";
    case BoundId::t: return "t";
    case BoundId::u: return "u";
    case BoundId::t_multi: return "t-multi";
    case BoundId::rmt_factor: return "rmt-factor";
  }
  return "?";
}

/// Concentration centers for random subspaces. r and s bound the bipartite
/// inaccuracies with respect to the maximally mixed state and the reduced
/// code projector; t bounds the distance between those references; u and
/// t-multi are the equal-local-dimension multipartite versions; rmt-factor
/// is the random-matrix approximation (4 / 3pi) s of the average inaccuracy.
inline double bound_value(BoundId id, const BoundParams& p) {
  switch (id) {
    case BoundId::r: {
      if (p.d1 < 1 || p.d2 < 1) throw std::invalid_argument("bound r: need d1, d2 >= 1");
      const double d1 = static_cast<double>(p.d1);
      const double d12 = static_cast<double>(p.d1) * static_cast<double>(p.d2);
      return std::sqrt((d1 * d1 - 1.0) / (d12 + 1.0));
    }
    case BoundId::s: {
      if (p.d1 < 1 || p.d2 < 1 || p.d_c < 1 || p.d_c > p.d1 * p.d2)
        throw std::invalid_argument("bound s: need d1, d2 >= 1 and 1 <= d_C <= d1*d2");
      const double d1 = static_cast<double>(p.d1), dc = static_cast<double>(p.d_c);
      const double d12 = static_cast<double>(p.d1) * static_cast<double>(p.d2);
      if (d12 < 2.0) return 0.0;
      return std::sqrt((dc - 1.0) / dc * d12 * (d1 * d1 - 1.0) / (d12 * d12 - 1.0));
    }
    case BoundId::t: {
      if (p.d1 < 1 || p.d2 < 1 || p.d_c < 1 || p.d_c > p.d1 * p.d2)
        throw std::invalid_argument("bound t: need d1, d2 >= 1 and 1 <= d_C <= d1*d2");
      const double d1 = static_cast<double>(p.d1), dc = static_cast<double>(p.d_c);
      const double d12 = static_cast<double>(p.d1) * static_cast<double>(p.d2);
      if (d12 < 2.0) return 0.0;
      return std::sqrt((d12 - dc) / dc * (d1 * d1 - 1.0) / (d12 * d12 - 1.0));
    }
    case BoundId::u: {
      if (p.d < 2 || p.m < 1 || p.k < 1 || p.k > p.m || p.d_c < 1)
        throw std::invalid_argument("bound u: need d >= 2, 1 <= k <= m, d_C >= 1");
      const double dc = static_cast<double>(p.d_c);
      if (p.d_c == 1) return 0.0;
      const double ln_d = std::log(static_cast<double>(p.d));
      // log-space assembly: d^m (d^{2k}-1)/(d^{2m}-1) = d^{2k-m} (1-d^{-2k})/(1-d^{-2m})
      const double log_ratio = (2.0 * p.k - p.m) * ln_d +
                               std::log1p(-std::exp(-2.0 * p.k * ln_d)) -
                               std::log1p(-std::exp(-2.0 * p.m * ln_d));
      return std::sqrt((dc - 1.0) / dc) * std::exp(0.5 * log_ratio);
    }
    case BoundId::t_multi: {
      if (p.d < 2 || p.m < 1 || p.k < 1 || p.k > p.m || p.d_c < 1)
        throw std::invalid_argument("bound t-multi: need d >= 2, 1 <= k <= m, d_C >= 1");
      const double ln_d = std::log(static_cast<double>(p.d));
      const double log_dm = p.m * ln_d;
      const double log_dc = std::log(static_cast<double>(p.d_c));
      if (log_dc > log_dm + 1e-12)
        throw std::invalid_argument("bound t-multi: need d_C <= d^m");
      if (std::abs(log_dc - log_dm) < 1e-12) return 0.0;
      // (d^m - d_C)/d_C * (d^{2k}-1)/(d^{2m}-1), all in logs
      const double log_num = log_dm + std::log1p(-std::exp(log_dc - log_dm)) - log_dc;
      const double log_ratio = (2.0 * p.k - 2.0 * p.m) * ln_d +
                               std::log1p(-std::exp(-2.0 * p.k * ln_d)) -
                               std::log1p(-std::exp(-2.0 * p.m * ln_d));
      return std::exp(0.5 * (log_num + log_ratio));
    }
    case BoundId::rmt_factor:
      return 4.0 / (3.0 * M_PI) * bound_value(BoundId::s, p);
  }
  throw std::invalid_argument("bound_value: unknown id");
}

enum class ExpectationIdentity {
  hs2_state_vs_mixed,      // E ||psi_B1 - mixed||_2^2 over Haar states of the full space
  hs2_state_vs_projector,  // E ||psi_B1 - Pi_C^(B1)||_2^2 over subspaces and their states
  hs2_projector_vs_mixed,  // E ||Pi_C^(B1) - mixed||_2^2 over subspaces
};

inline const char* to_string(ExpectationIdentity id) {
  switch (id) {
    case ExpectationIdentity::hs2_state_vs_mixed: return "hs2-state-vs-mixed";
    case ExpectationIdentity::hs2_state_vs_projector: return "hs2-state-vs-projector";
    case ExpectationIdentity::hs2_projector_vs_mixed: return "hs2-projector-vs-mixed";
  }
  return "?";
}

/// Exact squared 2-norm expectation values; equalities, not bounds, so they
/// anchor the Monte Carlo machinery.
inline double expectation_identity(ExpectationIdentity id, std::int64_t d1, std::int64_t d2,
                                   std::int64_t d_c = 0) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("expectation_identity: need d1, d2 >= 1");
  const double fd1 = static_cast<double>(d1), fd2 = static_cast<double>(d2);
  const double d12 = fd1 * fd2;
  switch (id) {
    case ExpectationIdentity::hs2_state_vs_mixed:
      return (fd1 * fd1 - 1.0) / (fd1 * (d12 + 1.0));
    case ExpectationIdentity::hs2_state_vs_projector: {
      if (d_c < 1 || d_c > d1 * d2)
        throw std::invalid_argument("expectation_identity: need 1 <= d_C <= d1*d2");
      if (d1 * d2 < 2) return 0.0;
      const double dc = static_cast<double>(d_c);
      return (dc - 1.0) / dc * fd2 * (fd1 * fd1 - 1.0) / (d12 * d12 - 1.0);
    }
    case ExpectationIdentity::hs2_projector_vs_mixed: {
      if (d_c < 1 || d_c > d1 * d2)
        throw std::invalid_argument("expectation_identity: need 1 <= d_C <= d1*d2");
      if (d1 * d2 < 2) return 0.0;
      const double dc = static_cast<double>(d_c);
      return (d12 - dc) / (fd1 * dc) * (fd1 * fd1 - 1.0) / (d12 * d12 - 1.0);
    }
  }
  throw std::invalid_argument("expectation_identity: unknown id");
}

/// CDF of the overlap a = |<psi|phi>| of two independent Haar states in a
/// d_C-dimensional space: a^2 ~ Beta(1, d_C - 1).
inline double overlap_cdf_beta(double a, std::int64_t d_c) {
  if (d_c < 2) throw std::invalid_argument("overlap_cdf_beta: need d_C >= 2");
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - a * a, static_cast<double>(d_c - 1));
}

/// CDF of the sphere-derived candidate density proportional to
/// (1 - a^2)^(d_C - 3/2) on [0, 1], normalized; kept as a comparison curve.
inline double overlap_cdf_sphere(double a, std::int64_t d_c) {
  if (d_c < 2) throw std::invalid_argument("overlap_cdf_sphere: need d_C >= 2");
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  return regularized_incomplete_beta(0.5, static_cast<double>(d_c) - 0.5, a * a);
}

}  // namespace aqim
