#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "aqim/special_functions.hpp"
#include "aqim/tails.hpp"

namespace aqim {

inline constexpr int kThresholdScanCap = 10000;

namespace detail {

/// Smallest m in [1, cap] with pred(m) true, assuming pred is false below the
/// crossing and true from there on: doubling to bracket, then bisection, then
/// a short walk left to confirm minimality.
template <class Pred>
int doubling_bisect_min(Pred&& pred, int cap, const char* who) {
  int hi = 1;
  while (hi <= cap && !pred(hi)) hi *= 2;
  if (hi > cap) {
    // One last look at the cap itself before giving up.
    if (!pred(cap)) throw std::runtime_error(std::string(who) + ": no threshold found below cap");
    hi = cap;
  }
  int lo = hi / 2;  // pred(lo) false (or lo == 0)
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  while (hi > 1 && pred(hi - 1)) --hi;
  return hi;
}

}  // namespace detail

/// Result of a masking-threshold scan: the criterion function f(m) for
/// plotting and the smallest m with f(m) >= 1.
struct MaskThreshold {
  std::function<double(int)> f;
  int m_star = 0;
};

struct MaskThresholdParams {
  std::int64_t d = 2;      // local dimension
  double d_c = 0.0;        // subspace dimension (2^l scale, hence double)
  double alpha = 0.0;      // case 1: fixed deviation constant
  double zeta = 0.0;       // cases 2-3: k/m ratio in (0, 1/2)
  int cap = kThresholdScanCap;
};

/// Appendix-style masking feasibility functions. Case 1 fixes alpha, case 2
/// takes alpha = d^{(zeta-1/2)m/2}, case 3 takes alpha = d^{(zeta-1/2)m};
/// in every case the subspace exists once f(m) >= 1, and m* is the smallest
/// such m. The exponential terms are compared in log space so the scan never
/// overflows.
inline MaskThreshold mask_threshold(int which_case, const MaskThresholdParams& p) {
  if (p.d < 2) throw std::invalid_argument("mask_threshold: need d >= 2");
  if (p.d_c < 2.0) throw std::invalid_argument("mask_threshold: need d_C >= 2");
  const double ln_d = std::log(static_cast<double>(p.d));
  const double net_const = 72.0 * std::pow(M_PI, 3) * kLn2;

  // f(m) = [exp(log_exp_term(m)) - linear_term(m)] / (m ln 2); f >= 1 is
  // decided as log_exp_term >= ln(linear_term + m ln 2).
  std::function<double(int)> log_exp_term;
  std::function<double(int)> linear_term;
  switch (which_case) {
    case 1:
      if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("mask_threshold case 1: need alpha in (0, 1)");
      log_exp_term = [=](int m) { return m * ln_d + 2.0 * std::log(p.alpha) - std::log(net_const); };
      linear_term = [=](int) { return 2.0 * p.d_c * std::log(10.0 / p.alpha) + kLn2; };
      break;
    case 2:
      if (!(p.zeta > 0.0 && p.zeta < 0.5))
        throw std::invalid_argument("mask_threshold case 2: need zeta in (0, 1/2)");
      log_exp_term = [=](int m) { return m * (p.zeta + 0.5) * ln_d - std::log(net_const); };
      linear_term = [=](int m) {
        return 2.0 * p.d_c * std::log(10.0) + m * (0.5 - p.zeta) * p.d_c * ln_d + kLn2;
      };
      break;
    case 3:
      if (!(p.zeta > 0.0 && p.zeta < 0.5))
        throw std::invalid_argument("mask_threshold case 3: need zeta in (0, 1/2)");
      log_exp_term = [=](int m) { return m * 2.0 * p.zeta * ln_d - std::log(net_const); };
      linear_term = [=](int m) {
        return 2.0 * p.d_c * std::log(10.0) + 2.0 * m * (0.5 - p.zeta) * p.d_c * ln_d + kLn2;
      };
      break;
    default:
      throw std::invalid_argument("mask_threshold: case must be 1, 2, or 3");
  }

  MaskThreshold out;
  out.f = [=](int m) {
    if (m < 1) throw std::invalid_argument("mask_threshold: m must be >= 1");
    const double le = log_exp_term(m);
    const double lin = linear_term(m);
    const double expv = le < 700.0 ? std::exp(le) : std::numeric_limits<double>::infinity();
    return (expv - lin) / (kLn2 * m);
  };
  auto pred = [=](int m) {
    return log_exp_term(m) >= std::log(linear_term(m) + kLn2 * m);
  };
  out.m_star = detail::doubling_bisect_min(pred, p.cap, "mask_threshold");
  return out;
}

enum class AqeccCase { fixed_eta, decaying_eta };

struct AqeccThresholdParams {
  std::int64_t d = 2;   // local dimension
  int l = 0;            // logical qudits; d_C = d^l
  double gamma = 0.0;   // k/m ratio in (0, 1/2)
  double eta0 = 0.0;    // fixed_eta: target QEC inaccuracy in (0, 1)
  double a = 0.0;       // decaying_eta: inaccuracy exponent scale in (0, 1/2)
  int cap = kThresholdScanCap;
};

/// Result of an AQECC threshold scan. T1 is the feasibility bound coming from
/// alpha > 0, T2 the one from a positive success probability; m* is the
/// smallest m exceeding both, and the asymptotic slope of m*(l) is reported
/// as `coefficient`.
struct AqeccThreshold {
  int m_star = 0;
  double code_rate = 0.0;  // l / m*
  double coefficient = 0.0;
  std::function<double(int)> t1;
  std::function<double(int)> t2;
  std::function<double(int)> alpha;  // recovered deviation parameter at given m
};

inline AqeccThreshold aqecc_threshold(AqeccCase which, const AqeccThresholdParams& p) {
  if (p.d < 2) throw std::invalid_argument("aqecc_threshold: need d >= 2");
  if (p.l < 1) throw std::invalid_argument("aqecc_threshold: need l >= 1");
  if (!(p.gamma > 0.0 && p.gamma < 0.5))
    throw std::invalid_argument("aqecc_threshold: need gamma in (0, 1/2)");
  const double ln_d = std::log(static_cast<double>(p.d));
  const double log_d_c = p.l * ln_d;  // ln d_C with d_C = d^l
  const double d_c = std::exp(log_d_c);

  AqeccThreshold out;
  if (which == AqeccCase::fixed_eta) {
    if (!(p.eta0 > 0.0 && p.eta0 < 1.0))
      throw std::invalid_argument("aqecc_threshold: need eta0 in (0, 1)");
    // alpha = eta0^2 / d_C - d^{(gamma-1/2)m}
    out.alpha = [=](int m) {
      return std::exp(2.0 * std::log(p.eta0) - log_d_c) -
             std::exp((p.gamma - 0.5) * m * ln_d);
    };
    out.t1 = [=](int) {
      return 2.0 / (1.0 - 2.0 * p.gamma) * (p.l - 2.0 * std::log(p.eta0) / ln_d);
    };
    out.t2 = [=, alpha = out.alpha](int m) {
      const double a = alpha(m);
      if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
      return 2.0 * p.l + std::log(256.0 / std::pow(p.eta0, 4)) / ln_d +
             std::log(kLn2 * m + 2.0 * d_c * std::log(10.0 / a)) / ln_d;
    };
    out.coefficient = std::max(3.0, 2.0 / (1.0 - 2.0 * p.gamma));
  } else {
    if (!(p.a > 0.0 && p.a < 0.5))
      throw std::invalid_argument("aqecc_threshold: need a in (0, 1/2)");
    // alpha = d^{2a(gamma-1/2)m} / d_C - d^{(gamma-1/2)m}
    out.alpha = [=](int m) {
      return std::exp(2.0 * p.a * (p.gamma - 0.5) * m * ln_d - log_d_c) -
             std::exp((p.gamma - 0.5) * m * ln_d);
    };
    out.t1 = [=](int) { return p.l / ((1.0 - 2.0 * p.a) * (0.5 - p.gamma)); };
    out.t2 = [=, alpha = out.alpha](int m) {
      const double a = alpha(m);
      if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
      return 2.0 * p.l + (std::log(256.0) - 4.0 * p.a * (p.gamma - 0.5) * m * ln_d) / ln_d +
             std::log(kLn2 * m + 2.0 * d_c * std::log(10.0 / a)) / ln_d;
    };
    out.coefficient = std::max(3.0, 1.0 / ((1.0 - 2.0 * p.a) * (0.5 - p.gamma)));
  }

  auto pred = [&](int m) {
    const double a = out.alpha(m);
    return a > 0.0 && m > out.t1(m) && m > out.t2(m);
  };
  try {
    out.m_star = detail::doubling_bisect_min(pred, p.cap, "aqecc_threshold");
  } catch (const std::runtime_error&) {
    throw std::runtime_error(
        "aqecc_threshold: no feasible m below cap; the deviation parameter stays nonpositive, "
        "i.e. gamma exceeds 1/2 + (2 log_d eta - log_d d_C)/m for every scanned m");
  }
  out.code_rate = static_cast<double>(p.l) / out.m_star;
  return out;
}

}  // namespace aqim
