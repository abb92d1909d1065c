#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace aqim {

/// ln|Gamma(x)| together with the sign of Gamma(x). Non-positive integers are
/// poles and rejected.
inline std::pair<double, int> log_gamma_signed(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("log_gamma_signed: pole at non-positive integer");
  const double lg = std::lgamma(x);
  int sign = 1;
  if (x < 0.0) {
    // Gamma alternates sign between consecutive negative integers.
    const auto k = static_cast<long long>(std::floor(x));
    sign = (k % 2 != 0) ? -1 : 1;
  }
  return {lg, sign};
}

/// Pochhammer symbol (alpha)_beta = Gamma(alpha + beta) / Gamma(alpha),
/// restricted to positive Gamma arguments.
inline double pochhammer(double alpha, double beta) {
  if (alpha <= 0.0 || alpha + beta <= 0.0)
    throw std::domain_error("pochhammer: requires alpha > 0 and alpha + beta > 0");
  return std::exp(std::lgamma(alpha + beta) - std::lgamma(alpha));
}

/// Generalized binomial coefficient
/// C(alpha, beta) = Gamma(alpha+1) / (Gamma(alpha-beta+1) Gamma(beta+1)),
/// signed; half-integer tops alternate sign through the Gamma reflection.
inline double generalized_binomial(double alpha, double beta) {
  const auto [la, sa] = log_gamma_signed(alpha + 1.0);
  const auto [lb, sb] = log_gamma_signed(alpha - beta + 1.0);
  const auto [lc, sc] = log_gamma_signed(beta + 1.0);
  return sa * sb * sc * std::exp(la - lb - lc);
}

/// Binary entropy H(p) = -p log2 p - (1-p) log2(1-p); endpoints by continuity.
inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p must be in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// ln C(n, k) for integers 0 <= k <= n, evaluated in log space.
inline double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("log_binomial: need 0 <= k <= n");
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

namespace detail {

/// Continued-fraction kernel of the regularized incomplete beta function
/// (modified Lentz method).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("betacf: continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("regularized_incomplete_beta: a, b > 0");
  if (x < 0.0 || x > 1.0) throw std::domain_error("regularized_incomplete_beta: x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

}  // namespace aqim
