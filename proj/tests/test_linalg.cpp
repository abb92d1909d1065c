#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "aqim/metrics.hpp"
#include "aqim/partition.hpp"
#include "aqim/rng.hpp"
#include "aqim/sampling.hpp"
#include "aqim/state.hpp"

using namespace aqim;
using Catch::Approx;

namespace {

// Brute-force partial trace oracle: explicit digit bookkeeping, independent
// of the offset-table implementation under test.
MatrixXcd brute_force_reduce(const VectorXcd& amps, const std::vector<std::int64_t>& dims,
                             const std::vector<int>& keep) {
  const int m = static_cast<int>(dims.size());
  auto digits_of = [&](std::int64_t idx) {
    std::vector<std::int64_t> dg(m);
    for (int p = m - 1; p >= 0; --p) {
      dg[p] = idx % dims[p];
      idx /= dims[p];
    }
    return dg;
  };
  std::int64_t total = 1, ds = 1;
  for (auto d : dims) total *= d;
  for (int p : keep) ds *= dims[p - 1];
  auto kept_index = [&](const std::vector<std::int64_t>& dg) {
    std::int64_t s = 0;
    for (int p : keep) s = s * dims[p - 1] + dg[p - 1];
    return s;
  };
  auto comp_digits_equal = [&](const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b) {
    for (int p = 1; p <= m; ++p) {
      if (std::find(keep.begin(), keep.end(), p) != keep.end()) continue;
      if (a[p - 1] != b[p - 1]) return false;
    }
    return true;
  };
  MatrixXcd rho = MatrixXcd::Zero(ds, ds);
  for (std::int64_t i = 0; i < total; ++i)
    for (std::int64_t j = 0; j < total; ++j) {
      const auto di = digits_of(i), dj = digits_of(j);
      if (!comp_digits_equal(di, dj)) continue;
      rho(kept_index(di), kept_index(dj)) += amps[i] * std::conj(amps[j]);
    }
  return rho;
}

PureState bell_state() {
  VectorXcd v = VectorXcd::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return PureState(v, PartitionSpec::qubits(2));
}

PureState ghz_state(int m) {
  const PartitionSpec part = PartitionSpec::qubits(m);
  VectorXcd v = VectorXcd::Zero(part.total_dim());
  v[0] = v[part.total_dim() - 1] = 1.0 / std::sqrt(2.0);
  return PureState(v, part);
}

DensityMatrix random_density(std::int64_t d, RngStream& rng) {
  MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.gaussian_complex();
  MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho, PartitionSpec::single(d));
}

}  // namespace

TEST_CASE("partition and selector invariants") {
  const PartitionSpec p({2, 3, 4});
  CHECK(p.total_dim() == 24);
  CHECK(p.parties() == 3);
  CHECK(p.stride(1) == 12);
  CHECK(p.stride(3) == 1);
  CHECK_THROWS_AS(PartitionSpec(std::vector<std::int64_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec({1 << 12, 1 << 12}), std::length_error);

  CHECK_THROWS_AS(SubsystemSelector(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(SubsystemSelector({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SubsystemSelector({3, 1}), std::invalid_argument);
  const SubsystemSelector s({1, 3});
  CHECK(s.kept_dim(p) == 8);
  CHECK(s.complement(p) == std::vector<int>{2});
  CHECK_THROWS_AS(SubsystemSelector({4}).check_against(p), std::invalid_argument);

  CHECK(selectors_of_order(4, 2).size() == 6);
  CHECK(selectors_of_order(6, 3).size() == 20);
}

TEST_CASE("state invariants are enforced") {
  VectorXcd bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(PureState(bad, PartitionSpec::single(2)), std::invalid_argument);

  MatrixXcd nonherm(2, 2);
  nonherm << 0.5, 0.5, -0.5, 0.5;
  CHECK_THROWS_AS(DensityMatrix(nonherm, PartitionSpec::single(2)), std::invalid_argument);

  MatrixXcd wrong_trace = MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(wrong_trace, PartitionSpec::single(2)), std::invalid_argument);

  MatrixXcd indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(indefinite, PartitionSpec::single(2)), std::invalid_argument);
}

TEST_CASE("tensor product basics") {
  const auto zero = PureState::basis(PartitionSpec::single(2), 0);
  const auto one = PureState::basis(PartitionSpec::single(2), 1);
  const auto prod = tensor_product(zero, one);
  CHECK(prod.dim() == 4);
  CHECK(prod.amplitudes()[1] == std::complex<double>(1.0, 0.0));

  RngStream rng(7);
  const auto rho = random_density(2, rng);
  const auto mixed = maximally_mixed(PartitionSpec::single(3));
  const auto big = tensor_product(rho, mixed);
  const auto back = reduce(big, SubsystemSelector({1}));
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  // purity is multiplicative; oracle is plain matrix arithmetic on the
  // Kronecker product assembled by hand
  for (int rep = 0; rep < 25; ++rep) {
    const auto a = random_density(2, rng), b = random_density(2, rng);
    MatrixXcd kron(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) kron.block(2 * i, 2 * j, 2, 2) = a.matrix()(i, j) * b.matrix();
    CHECK(purity(tensor_product(a, b)) == Approx((kron * kron).trace().real()).margin(1e-12));
    CHECK(purity(tensor_product(a, b)) == Approx(purity(a) * purity(b)).margin(1e-12));
  }

  const PartitionSpec half(std::vector<std::int64_t>{1 << 11});
  const auto big1 = PureState::basis(half, 0);
  CHECK_THROWS_AS(tensor_product(tensor_product(big1, big1), big1), std::length_error);
}

TEST_CASE("reduce: known states") {
  const auto bell = bell_state();
  const auto r1 = reduce(bell, SubsystemSelector({1}));
  CHECK((r1.matrix() - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

  RngStream rng(11);
  const auto rho = random_density(3, rng);
  const auto zero_proj = PureState::basis(PartitionSpec::single(2), 0).projector();
  const auto prod = tensor_product(zero_proj, rho);
  const auto back = reduce(prod, SubsystemSelector({2}));
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  const auto ghz = ghz_state(3);
  const auto r13 = reduce(ghz, SubsystemSelector({1, 3}));
  const MatrixXcd oracle =
      brute_force_reduce(ghz.amplitudes(), {2, 2, 2}, {1, 3});
  CHECK((r13.matrix() - oracle).cwiseAbs().maxCoeff() < 1e-12);
  MatrixXcd expect = MatrixXcd::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK((r13.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(reduce(ghz, SubsystemSelector({4})), std::invalid_argument);
}

TEST_CASE("reduce matches brute force on random states and subsets") {
  RngStream rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::int64_t> dims;
    const int m = 2 + static_cast<int>(rng.uniform_below(3));
    for (int i = 0; i < m; ++i) dims.push_back(2 + static_cast<std::int64_t>(rng.uniform_below(2)));
    const PartitionSpec part{dims};
    const PureState psi = haar_state(part, rng);
    std::vector<int> keep;
    for (int pidx = 1; pidx <= m; ++pidx)
      if (rng.uniform() < 0.5) keep.push_back(pidx);
    if (keep.empty()) keep.push_back(1);
    const auto got = reduced_projector(psi.amplitudes(), part, SubsystemSelector(keep));
    const auto oracle = brute_force_reduce(psi.amplitudes(), dims, keep);
    CHECK((got - oracle).cwiseAbs().maxCoeff() < 1e-12);

    // density-matrix route agrees with the pure route
    const auto got_dm =
        reduced_matrix(psi.amplitudes() * psi.amplitudes().adjoint(), part, SubsystemSelector(keep));
    CHECK((got_dm - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("schatten norms") {
  MatrixXcd diag = MatrixXcd::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = -1.0;
  CHECK(schatten_norm(diag, 1) == Approx(2.0));
  CHECK(schatten_norm(MatrixXcd::Zero(3, 3), 1) == 0.0);
  CHECK(schatten_norm(MatrixXcd::Zero(3, 3), 2) == 0.0);

  // |0><0| - |+><+| has eigenvalues +-1/sqrt(2)
  MatrixXcd zero_minus_plus(2, 2);
  zero_minus_plus << 0.5, -0.5, -0.5, -0.5;
  CHECK(schatten_norm(zero_minus_plus, 1) == Approx(std::sqrt(2.0)).epsilon(1e-12));

  MatrixXcd nonherm(2, 2);
  nonherm << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(schatten_norm(nonherm, 1), std::domain_error);
  CHECK_THROWS_AS(schatten_norm(diag, 3), std::invalid_argument);
}

TEST_CASE("trace distance") {
  RngStream rng(17);
  const auto rho = random_density(4, rng);
  CHECK(trace_distance(rho, rho) == Approx(0.0).margin(1e-12));

  const auto e0 = PureState::basis(PartitionSpec::single(2), 0).projector();
  const auto e1 = PureState::basis(PartitionSpec::single(2), 1).projector();
  CHECK(trace_distance(e0, e1) == Approx(2.0));  // no 1/2 in the convention
  CHECK(trace_distance(e0, maximally_mixed(PartitionSpec::single(2))) == Approx(1.0));

  CHECK_THROWS_AS(trace_distance(e0.matrix(), MatrixXcd::Identity(3, 3) / 3.0),
                  std::invalid_argument);
}

TEST_CASE("fidelity") {
  RngStream rng(19);
  const auto rho = random_density(3, rng);
  CHECK(fidelity(rho, rho) == Approx(1.0).margin(1e-9));

  const auto e0 = PureState::basis(PartitionSpec::single(2), 0).projector();
  const auto e1 = PureState::basis(PartitionSpec::single(2), 1).projector();
  CHECK(fidelity(e0, e1) == Approx(0.0).margin(1e-9));
  CHECK(fidelity(e0, maximally_mixed(PartitionSpec::single(2))) ==
        Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

  // pure-state shortcut sqrt(<psi|sigma|psi>)
  for (int rep = 0; rep < 10; ++rep) {
    const auto psi = haar_state(3, rng);
    const auto sigma = random_density(3, rng);
    const double direct = std::sqrt(
        (psi.amplitudes().adjoint() * sigma.matrix() * psi.amplitudes())(0).real());
    CHECK(fidelity(psi.projector(), sigma) == Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("purity and maximally mixed") {
  RngStream rng(23);
  const auto psi = haar_state(5, rng);
  CHECK(purity(psi.projector()) == Approx(1.0).epsilon(1e-10));
  CHECK(purity(maximally_mixed(PartitionSpec::single(4))) == Approx(0.25));
  CHECK(purity(reduce(bell_state(), SubsystemSelector({1}))) == Approx(0.5));

  const auto mixed1 = maximally_mixed(PartitionSpec::single(1));
  CHECK(mixed1.matrix()(0, 0).real() == Approx(1.0));
  const auto mixed2 = maximally_mixed(PartitionSpec::single(2));
  CHECK(mixed2.matrix()(0, 0).real() == Approx(0.5));
  CHECK(trace_distance(mixed2, mixed2) == 0.0);
}

TEST_CASE("property: trace distance contracts under partial trace") {
  RngStream rng(29);
  for (int rep = 0; rep < 200; ++rep) {
    const PartitionSpec part = PartitionSpec::bipartite(2 + rng.uniform_below(3),
                                                        2 + rng.uniform_below(3));
    const auto psi = haar_state(part, rng);
    const auto phi = haar_state(part, rng);
    const double full = trace_norm_hermitian(psi.amplitudes() * psi.amplitudes().adjoint() -
                                             phi.amplitudes() * phi.amplitudes().adjoint());
    const SubsystemSelector b1({1});
    const double reduced = trace_norm_hermitian(
        reduced_projector(psi.amplitudes(), part, b1) -
        reduced_projector(phi.amplitudes(), part, b1));
    CHECK(reduced <= full + 1e-9);
  }
}

TEST_CASE("property: Schmidt spectra of the two cuts agree") {
  RngStream rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t d1 = 2 + rng.uniform_below(3), d2 = 2 + rng.uniform_below(4);
    const PartitionSpec part = PartitionSpec::bipartite(d1, d2);
    const auto psi = haar_state(part, rng);
    const auto r1 = reduced_projector(psi.amplitudes(), part, SubsystemSelector({1}));
    const auto r2 = reduced_projector(psi.amplitudes(), part, SubsystemSelector({2}));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> e1(r1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> e2(r2, Eigen::EigenvaluesOnly);
    // nonzero spectra coincide; compare the top min(d1,d2) eigenvalues
    const auto k = std::min<Eigen::Index>(d1, d2);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double a = e1.eigenvalues()[e1.eigenvalues().size() - 1 - i];
      const double b = e2.eigenvalues()[e2.eigenvalues().size() - 1 - i];
      CHECK(std::abs(a - b) < 1e-8);
    }
  }
}

TEST_CASE("property: distance dominates 2 - 2F in this convention") {
  RngStream rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t d = 2 + rng.uniform_below(4);
    const auto rho = random_density(d, rng);
    const auto sigma = random_density(d, rng);
    CHECK(trace_distance(rho, sigma) >= 2.0 - 2.0 * fidelity(rho, sigma) - 1e-8);
  }
}

TEST_CASE("property: norm sandwich ||M||_2 <= ||M||_1 <= sqrt(rank)||M||_2") {
  RngStream rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t d = 2 + rng.uniform_below(5);
    MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.gaussian_complex();
    const MatrixXcd h = 0.5 * (g + g.adjoint());
    const double n1 = schatten_norm(h, 1), n2 = schatten_norm(h, 2);
    CHECK(n2 <= n1 + 1e-9);
    CHECK(n1 <= std::sqrt(static_cast<double>(d)) * n2 + 1e-9);
  }
}
