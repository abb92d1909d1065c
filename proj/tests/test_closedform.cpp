#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "aqim/bounds.hpp"
#include "aqim/special_functions.hpp"
#include "aqim/tails.hpp"

using namespace aqim;
using Catch::Approx;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.7, 0.0) == Approx(1.0));
  CHECK(pochhammer(2.0, 3.0) == Approx(24.0).epsilon(1e-12));
  // Gamma(4.5)/Gamma(4) = (105/16) sqrt(pi) / 6
  CHECK(pochhammer(4.0, 0.5) == Approx(105.0 / 16.0 * kSqrtPi / 6.0).epsilon(1e-12));
  CHECK_THROWS_AS(pochhammer(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(pochhammer(2.0, -3.0), std::domain_error);
}

TEST_CASE("generalized binomial") {
  CHECK(generalized_binomial(7.0, 0.0) == Approx(1.0));
  CHECK(generalized_binomial(5.0, 2.0) == Approx(10.0).epsilon(1e-12));
  CHECK(generalized_binomial(0.5, 1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(generalized_binomial(0.5, 2.0) == Approx(-0.125).epsilon(1e-12));
  CHECK(generalized_binomial(0.5, 3.0) == Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK_THROWS_AS(generalized_binomial(-1.0, -1.0), std::domain_error);

  // the series terms with i >= 2 are all nonpositive
  for (std::int64_t d1 : {2, 3, 5, 8}) {
    for (std::int64_t i = 2; i <= d1; ++i) {
      const double term = generalized_binomial(0.5, static_cast<double>(i)) *
                          generalized_binomial(0.5, static_cast<double>(i - 1)) *
                          pochhammer(static_cast<double>(d1 * 3), 1.5 - i) /
                          pochhammer(static_cast<double>(d1) + 1.0, -static_cast<double>(i));
      CHECK(term <= 0.0);
    }
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == Approx(1.0).epsilon(1e-14));
  CHECK(binary_entropy(0.25) == Approx(0.8112781244591328).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("regularized incomplete beta") {
  // I_x(1, b) = 1 - (1-x)^b
  for (double x : {0.1, 0.4, 0.9})
    CHECK(regularized_incomplete_beta(1.0, 5.0, x) ==
          Approx(1.0 - std::pow(1.0 - x, 5.0)).epsilon(1e-12));
  // I_x(1/2, 1/2) = (2/pi) asin(sqrt(x))
  for (double x : {0.2, 0.5, 0.8})
    CHECK(regularized_incomplete_beta(0.5, 0.5, x) ==
          Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("ratio factor and the lower bound w") {
  CHECK(ratio_factor(1, 8) == 0.0);
  CHECK(ratio_factor(8, 8) == Approx(1.0));
  CHECK(ratio_factor(2, 4) == Approx(7.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS_AS(ratio_factor(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(ratio_factor(9, 8), std::invalid_argument);

  CHECK(lower_bound_w(2, 4) == Approx(7.0 / 54.0).epsilon(1e-14));
  CHECK(lower_bound_w(1000000, 4000000000000LL) == Approx(1.0 / 6.0).epsilon(1e-5));
  CHECK_THROWS_AS(lower_bound_w(1, 8), std::invalid_argument);

  for (std::int64_t dc : {2, 3, 7, 64})
    for (std::int64_t d12 : {4LL, 9LL, 100LL, 4096LL}) {
      if (dc > d12) continue;
      CHECK(lower_bound_w(dc, d12) > 1.0 / 9.0);
      CHECK(lower_bound_w(dc, d12) <= 1.0 / 6.0 + 1e-15);
    }
}

TEST_CASE("average-distance lower bounds") {
  CHECK(avg_distance_bound(AvgDistanceBound::lb_pair_B2_simple, 4, 4) == Approx(0.0).margin(1e-14));
  CHECK(avg_distance_bound(AvgDistanceBound::lb_pair_B2_simple, 2, 8) == Approx(1.0));

  // independent route for d1 = d2 = 2 from explicit half-integer Gamma values
  {
    const double term1 = 0.5 * 1.0 * (0.75 * kSqrtPi) / 0.5;           // i = 1
    const double term2 = (-0.125) * 0.5 * (0.5 * kSqrtPi) / 0.5;       // i = 2
    const double poch_4_half = 105.0 / 16.0 * kSqrtPi / 6.0;           // (4)_{1/2}
    const double expected = 2.0 - 4.0 / (std::sqrt(2.0) * poch_4_half) * (term1 + term2);
    CHECK(avg_distance_bound(AvgDistanceBound::lb_identity_B1, 2, 2) ==
          Approx(expected).epsilon(1e-12));
    CHECK(avg_distance_bound(AvgDistanceBound::lb_identity_B2, 2, 2) ==
          Approx(expected).epsilon(1e-12));
  }

  // the 1/3 floor across the full grid
  for (std::int64_t d1 = 2; d1 <= 64; d1 = d1 < 8 ? d1 + 1 : d1 * 2)
    for (std::int64_t d2 = d1; d2 <= 64; d2 = d2 < 8 ? d2 + 1 : d2 * 2) {
      const double sum = avg_distance_bound(AvgDistanceBound::lb_identity_B1, d1, d2) +
                         avg_distance_bound(AvgDistanceBound::lb_identity_B2, d1, d2);
      CHECK(sum >= 1.0 / 3.0 - 1e-12);
    }

  // subspace versions against the proof-chain floor
  for (std::int64_t d1 : {2, 3, 8, 32})
    for (std::int64_t d2 : {2, 5, 8, 32}) {
      if (d2 < d1) continue;
      for (std::int64_t dc : std::vector<std::int64_t>{2, 4, d1 * d2}) {
        const double v1 = avg_distance_bound(AvgDistanceBound::v1, d1, d2, dc);
        const double v2 = avg_distance_bound(AvgDistanceBound::v2, d1, d2, dc);
        CHECK(v1 + v2 >= ratio_factor(dc, d1 * d2) / 3.0 - 1e-12);
      }
    }

  CHECK_THROWS_AS(avg_distance_bound(AvgDistanceBound::lb_identity_B1, 1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(avg_distance_bound(AvgDistanceBound::lb_identity_B1, 4, 2),
                  std::invalid_argument);
}

TEST_CASE("bound values") {
  BoundParams p;
  p.d1 = 1;
  p.d2 = 7;
  CHECK(bound_value(BoundId::r, p) == 0.0);

  p.d1 = 2;
  p.d2 = 2;
  CHECK(bound_value(BoundId::r, p) == Approx(std::sqrt(0.6)).epsilon(1e-14));

  p.d_c = 1;
  CHECK(bound_value(BoundId::s, p) == 0.0);
  p.d_c = 4;
  CHECK(bound_value(BoundId::t, p) == 0.0);  // d_C = d_12
  p.d_c = 2;
  CHECK(bound_value(BoundId::s, p) ==
        Approx(std::sqrt(0.5 * 4.0 * 3.0 / 15.0)).epsilon(1e-12));
  CHECK(bound_value(BoundId::rmt_factor, p) ==
        Approx(4.0 / (3.0 * M_PI) * bound_value(BoundId::s, p)).epsilon(1e-14));

  // u, dual route: direct linear-space formula at modest dimensions
  BoundParams q;
  q.d = 2;
  q.k = 1;
  q.m = 6;
  q.d_c = 4;
  const double direct = std::sqrt(3.0 / 4.0 * 64.0 * 3.0 / 4095.0);
  CHECK(bound_value(BoundId::u, q) == Approx(direct).epsilon(1e-12));

  const double tm = bound_value(BoundId::t_multi, q);
  CHECK(tm == Approx(std::sqrt((64.0 - 4.0) / 4.0 * 3.0 / 4095.0)).epsilon(1e-12));

  // Prop. 4 remark: t_multi <= d^{k - m/2} / sqrt(d_C) once d^{m/2-k} >= 2
  for (std::int64_t d : {2, 3})
    for (int m = 4; m <= 10; ++m)
      for (int k = 1; 2 * k + 2 <= m; ++k)
        for (std::int64_t dc : {2, 4, 8}) {
          BoundParams bp;
          bp.d = d;
          bp.m = m;
          bp.k = k;
          bp.d_c = dc;
          const double lhs = bound_value(BoundId::t_multi, bp);
          const double rhs = std::pow(static_cast<double>(d), k - 0.5 * m) /
                             std::sqrt(static_cast<double>(dc));
          CHECK(lhs <= rhs + 1e-12);
        }

  // s approaches r for large dimensions
  for (auto [d1, d2, dc] : std::vector<std::array<std::int64_t, 3>>{
           {64, 64, 64}, {64, 128, 100}, {128, 128, 64}}) {
    BoundParams bp;
    bp.d1 = d1;
    bp.d2 = d2;
    bp.d_c = dc;
    const double s = bound_value(BoundId::s, bp);
    const double r = bound_value(BoundId::r, bp);
    CHECK(std::abs(s - r) / r < 0.01);
  }
}

TEST_CASE("digamma-free sanity check of the Pochhammer ratio inequality") {
  for (double x : {1.0, 1.5, 2.0, 4.0, 8.0, 32.0})
    for (double y : {1.0, 1.5, 2.0, 4.0, 8.0, 32.0})
      CHECK(std::sqrt(x) * pochhammer(y, 0.5) / pochhammer(x * y, 0.5) <= 1.0 + 1e-12);
}

TEST_CASE("tail bounds") {
  TailParams p;
  p.d1 = 16;
  p.d2 = 16;
  p.alpha = 0.5;
  CHECK(tail_bound(TailId::thm2_average_variation, p) == Approx(-4.0).epsilon(1e-14));

  p.alpha = 1e-9;
  CHECK(tail_bound(TailId::thm2_average_variation, p) == Approx(0.0).margin(1e-12));
  CHECK(tail_probability(TailId::thm2_average_variation, p) == Approx(1.0));

  // thm6 against an independent log-space evaluation
  {
    TailParams q;
    q.d = 2;
    q.m = 8;
    q.k = 1;
    q.d_c = 2;
    q.alpha = 0.25;
    const double expected = std::log(2.0) + std::log(8.0) + 4.0 * std::log(40.0) -
                            256.0 * 0.0625 / (72.0 * std::pow(M_PI, 3) * std::log(2.0));
    CHECK(tail_bound(TailId::thm6_multipartite_identity, q) == Approx(expected).epsilon(1e-12));
  }

  // vacuous regime of the epsilon-net bounds still clamps to probability 1
  {
    TailParams q;
    q.d1 = 4;
    q.d2 = 4;
    q.d_c = 2;
    q.alpha = 0.001;
    CHECK(tail_bound(TailId::thm4_identity_net, q) > 0.0);
    CHECK(tail_probability(TailId::thm4_identity_net, q) == 1.0);
  }

  // monotone decreasing in alpha, for every id with fixed dimensions
  {
    TailParams q;
    q.d1 = 8;
    q.d2 = 8;
    q.d_c = 3;
    q.d = 2;
    q.m = 8;
    q.k = 2;
    q.kappa = 2.0;
    q.dim = 64;
    for (auto id : {TailId::thm2_average_variation, TailId::thm4_identity_net,
                    TailId::thm5_projector_net, TailId::prop3_projector_vs_mixed,
                    TailId::thm6_multipartite_identity, TailId::thm7_multipartite_projector,
                    TailId::prop4_multipartite_pi_mixed, TailId::cor3_haar_kuniform, TailId::levy,
                    TailId::grassmann, TailId::su, TailId::pair_distance}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double alpha : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        q.alpha = alpha;
        const double v = tail_bound(id, q);
        CHECK(v < prev);
        CHECK(tail_probability(id, q) <= 1.0);
        prev = v;
      }
    }
  }
  CHECK_THROWS_AS(tail_bound(TailId::thm2_average_variation, TailParams{}),
                  std::invalid_argument);
}

TEST_CASE("admissible subspace dimension bounds") {
  TailParams p;
  p.d1 = 2;
  p.d2 = 2;
  p.alpha = 0.1;
  CHECK(dc_max(DcMaxId::bipartite_mixed, p) < 0.0);  // tiny d_12: nothing admissible

  // the multipartite identity form equals the bipartite form up to the
  // (m+1) ln 2 overhead when d^m is matched to d_12
  {
    TailParams bip;
    bip.d1 = 32;
    bip.d2 = 32;
    bip.alpha = 0.2;
    TailParams multi;
    multi.d = 2;
    multi.m = 10;
    multi.alpha = 0.2;
    const double gap = dc_max(DcMaxId::bipartite_mixed, bip) -
                       dc_max(DcMaxId::multipartite_identity, multi);
    const double expected_gap = kLn2 * 10.0 / (2.0 * std::log(10.0 / 0.2));
    CHECK(gap == Approx(expected_gap).epsilon(1e-12));
  }

  {
    TailParams q;
    q.d = 2;
    q.m = 20;
    q.k = 2;
    q.alpha = 0.1;
    CHECK(dc_max(DcMaxId::random_code, q) > 0.0);
  }
  TailParams bad;
  bad.d1 = 2;
  bad.d2 = 2;
  bad.alpha = 11.0;
  CHECK_THROWS_AS(dc_max(DcMaxId::bipartite_mixed, bad), std::invalid_argument);
}

TEST_CASE("expectation identities") {
  CHECK(expectation_identity(ExpectationIdentity::hs2_state_vs_mixed, 1, 5) == 0.0);
  CHECK(expectation_identity(ExpectationIdentity::hs2_state_vs_projector, 3, 3, 1) == 0.0);
  CHECK(expectation_identity(ExpectationIdentity::hs2_state_vs_mixed, 2, 2) ==
        Approx(0.3).epsilon(1e-14));
  CHECK(expectation_identity(ExpectationIdentity::hs2_projector_vs_mixed, 2, 2, 4) ==
        Approx(0.0).margin(1e-14));  // full-space projector is the mixed state
  CHECK_THROWS_AS(expectation_identity(ExpectationIdentity::hs2_state_vs_projector, 2, 2, 5),
                  std::invalid_argument);
}

TEST_CASE("overlap candidate CDFs") {
  for (std::int64_t dc : {2, 4, 9}) {
    CHECK(overlap_cdf_beta(0.0, dc) == 0.0);
    CHECK(overlap_cdf_beta(1.0, dc) == 1.0);
    CHECK(overlap_cdf_sphere(0.0, dc) == 0.0);
    CHECK(overlap_cdf_sphere(1.0, dc) == 1.0);
    double prev_b = -1.0, prev_s = -1.0;
    for (double a = 0.05; a < 1.0; a += 0.05) {
      CHECK(overlap_cdf_beta(a, dc) > prev_b);
      CHECK(overlap_cdf_sphere(a, dc) > prev_s);
      prev_b = overlap_cdf_beta(a, dc);
      prev_s = overlap_cdf_sphere(a, dc);
    }
  }
  // the two candidates genuinely disagree away from the endpoints
  CHECK(std::abs(overlap_cdf_beta(0.3, 4) - overlap_cdf_sphere(0.3, 4)) > 0.1);
}
