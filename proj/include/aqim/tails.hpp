#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "aqim/special_functions.hpp"

namespace aqim {

inline constexpr double kLn2 = 0.6931471805599453;

struct TailParams {
  double alpha = 0.0;     // deviation from the concentration center
  std::int64_t d1 = 0;    // bipartite dimensions
  std::int64_t d2 = 0;
  std::int64_t d_c = 0;   // subspace dimension (epsilon-net ids)
  std::int64_t d = 0;     // common local dimension (multipartite ids)
  int m = 0;              // parties
  int k = 0;              // subsystem order
  double kappa = 0.0;     // Lipschitz constant (generic concentration ids)
  std::int64_t dim = 0;   // ambient dimension (generic concentration ids)
};

enum class TailId {
  thm2_average_variation,       // subspace average variation below w - alpha
  thm4_identity_net,            // bipartite max inaccuracy vs mixed above r + alpha
  thm5_projector_net,           // bipartite max inaccuracy vs projector above s + alpha
  prop3_projector_vs_mixed,     // reduced code projector far from mixed
  thm6_multipartite_identity,   // multipartite version of thm4 with the union bound
  thm7_multipartite_projector,  // multipartite version of thm5 / random-code failure
  prop4_multipartite_pi_mixed,  // multipartite version of prop3
  cor3_haar_kuniform,           // Haar state fails to be near k-uniform
  levy,                         // generic Levy tail on a sphere
  grassmann,                    // generic Grassmannian concentration
  su,                           // generic special-unitary concentration
  pair_distance,                // two-state reduction distance below its lower bound
};

inline const char* to_string(TailId id) {
  switch (id) {
    case TailId::thm2_average_variation: return "thm2-average-variation";
    case TailId::thm4_identity_net: return "thm4-identity-net";
    case TailId::thm5_projector_net: return "thm5-projector-net";
    case TailId::prop3_projector_vs_mixed: return "prop3-projector-vs-mixed";
    case TailId::thm6_multipartite_identity: return "thm6-multipartite-identity";
    case TailId::thm7_multipartite_projector: return "thm7-multipartite-projector";
    case TailId::prop4_multipartite_pi_mixed: return "prop4-multipartite-pi-mixed";
    case TailId::cor3_haar_kuniform: return "cor3-haar-kuniform";
    case TailId::levy: return "levy";
    case TailId::grassmann: return "grassmann";
    case TailId::su: return "su";
    case TailId::pair_distance: return "pair-distance";
  }
  return "?";
}

namespace detail {

inline double pow_as_double(std::int64_t d, int m) {
  // d^m may exceed the double range for pathological inputs; saturate so the
  // tail exponent stays a well-ordered -inf-free quantity.
  const double v = static_cast<double>(m) * std::log(static_cast<double>(d));
  if (v > 700.0) return std::exp(700.0);
  return std::exp(v);
}

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tail_bound: alpha must be positive");
}

inline void require_net_dims(const TailParams& p, bool multipartite) {
  if (multipartite) {
    if (p.d < 2 || p.m < 1 || p.k < 1 || p.k > p.m)
      throw std::invalid_argument("tail_bound: need d >= 2 and 1 <= k <= m");
  } else if (p.d1 < 1 || p.d2 < 1) {
    throw std::invalid_argument("tail_bound: need d1, d2 >= 1");
  }
}

}  // namespace detail

/// ln of the tail-probability right-hand sides. The value may be positive in
/// the vacuous-bound regime; clamp with tail_probability for a usable
/// probability.
inline double tail_bound(TailId id, const TailParams& p) {
  detail::require_alpha(p.alpha);
  const double a2 = p.alpha * p.alpha;
  switch (id) {
    case TailId::thm2_average_variation: {
      detail::require_net_dims(p, false);
      return -static_cast<double>(p.d1 * p.d2) * a2 / 16.0;
    }
    case TailId::thm4_identity_net: {
      detail::require_net_dims(p, false);
      if (p.d_c < 1) throw std::invalid_argument("tail_bound: need d_C >= 1");
      return kLn2 + 2.0 * static_cast<double>(p.d_c) * std::log(10.0 / p.alpha) -
             static_cast<double>(p.d1 * p.d2) * a2 / (72.0 * std::pow(M_PI, 3) * kLn2);
    }
    case TailId::thm5_projector_net: {
      detail::require_net_dims(p, false);
      if (p.d_c < 1) throw std::invalid_argument("tail_bound: need d_C >= 1");
      return 2.0 * static_cast<double>(p.d_c) * std::log(10.0 / p.alpha) -
             static_cast<double>(p.d1 * p.d2) * a2 / 256.0;
    }
    case TailId::prop3_projector_vs_mixed: {
      detail::require_net_dims(p, false);
      return -static_cast<double>(p.d1 * p.d2) * a2 / 16.0;
    }
    case TailId::thm6_multipartite_identity: {
      detail::require_net_dims(p, true);
      if (p.d_c < 1) throw std::invalid_argument("tail_bound: need d_C >= 1");
      return kLn2 + log_binomial(p.m, p.k) +
             2.0 * static_cast<double>(p.d_c) * std::log(10.0 / p.alpha) -
             detail::pow_as_double(p.d, p.m) * a2 / (72.0 * std::pow(M_PI, 3) * kLn2);
    }
    case TailId::thm7_multipartite_projector: {
      detail::require_net_dims(p, true);
      if (p.d_c < 1) throw std::invalid_argument("tail_bound: need d_C >= 1");
      return log_binomial(p.m, p.k) +
             2.0 * static_cast<double>(p.d_c) * std::log(10.0 / p.alpha) -
             detail::pow_as_double(p.d, p.m) * a2 / 256.0;
    }
    case TailId::prop4_multipartite_pi_mixed: {
      detail::require_net_dims(p, true);
      return log_binomial(p.m, p.k) - detail::pow_as_double(p.d, p.m) * a2 / 16.0;
    }
    case TailId::cor3_haar_kuniform: {
      detail::require_net_dims(p, true);
      return kLn2 + log_binomial(p.m, p.k) -
             detail::pow_as_double(p.d, p.m) * a2 / (18.0 * std::pow(M_PI, 3) * kLn2);
    }
    case TailId::levy: {
      if (p.dim < 1 || !(p.kappa > 0.0))
        throw std::invalid_argument("tail_bound: levy needs dim >= 1 and kappa > 0");
      return kLn2 - 2.0 * static_cast<double>(p.dim) * a2 /
                        (9.0 * std::pow(M_PI, 3) * kLn2 * p.kappa * p.kappa);
    }
    case TailId::grassmann: {
      if (p.d1 < 1 || p.d2 < 1 || !(p.kappa > 0.0))
        throw std::invalid_argument("tail_bound: grassmann needs d1, d2 >= 1 and kappa > 0");
      return -static_cast<double>(p.d1 * p.d2) * a2 / (2.0 * p.kappa * p.kappa);
    }
    case TailId::su: {
      if (p.dim < 1 || !(p.kappa > 0.0))
        throw std::invalid_argument("tail_bound: su needs dim >= 1 and kappa > 0");
      return -static_cast<double>(p.dim) * a2 / (4.0 * p.kappa * p.kappa);
    }
    case TailId::pair_distance: {
      detail::require_net_dims(p, false);
      return std::log(4.0) -
             static_cast<double>(p.d1 * p.d2) * a2 / (144.0 * M_PI * M_PI * kLn2);
    }
  }
  throw std::invalid_argument("tail_bound: unknown id");
}

/// Probability form of a tail bound, clamped at 1.
inline double tail_probability(TailId id, const TailParams& p) {
  return std::min(1.0, std::exp(tail_bound(id, p)));
}

enum class DcMaxId {
  bipartite_mixed,        // admissible d_C from the bipartite mixed-reference net bound
  multipartite_identity,  // multipartite version with the union-bound overhead
  random_code,            // admissible d_C for the random-code construction
};

inline const char* to_string(DcMaxId id) {
  switch (id) {
    case DcMaxId::bipartite_mixed: return "dc-bipartite-mixed";
    case DcMaxId::multipartite_identity: return "dc-multipartite-identity";
    case DcMaxId::random_code: return "dc-random-code";
  }
  return "?";
}

/// Upper bounds on the admissible subspace dimension d_C. May come out
/// negative, meaning no subspace dimension is admissible at these parameters.
inline double dc_max(DcMaxId id, const TailParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 10.0))
    throw std::invalid_argument("dc_max: need 0 < alpha < 10");
  const double denom = 2.0 * std::log(10.0 / p.alpha);
  const double a2 = p.alpha * p.alpha;
  switch (id) {
    case DcMaxId::bipartite_mixed: {
      detail::require_net_dims(p, false);
      return (static_cast<double>(p.d1 * p.d2) * a2 / (72.0 * std::pow(M_PI, 3) * kLn2) - kLn2) /
             denom;
    }
    case DcMaxId::multipartite_identity: {
      if (p.d < 2 || p.m < 1) throw std::invalid_argument("dc_max: need d >= 2 and m >= 1");
      return (detail::pow_as_double(p.d, p.m) * a2 / (72.0 * std::pow(M_PI, 3) * kLn2) -
              kLn2 * (p.m + 1.0)) /
             denom;
    }
    case DcMaxId::random_code: {
      detail::require_net_dims(p, true);
      return (detail::pow_as_double(p.d, p.m) * a2 / 256.0 -
              kLn2 * p.m * binary_entropy(static_cast<double>(p.k) / p.m)) /
             denom;
    }
  }
  throw std::invalid_argument("dc_max: unknown id");
}

}  // namespace aqim
