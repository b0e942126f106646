#include <doctest.h>

#include <Eigen/Dense>

#include "pwdirac/algebra.hpp"
#include "test_support.hpp"

using namespace pwdirac;

namespace {

Eigen::Matrix4cd to_eigen(const Matrix4c& m) {
  Eigen::Matrix4cd e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("generator matrices have the exact textbook entries") {
  const Matrix4c s3 = dirac_matrix(DiracKind::pauli3);
  CHECK(s3(0, 0) == complex{1.0, 0.0});
  CHECK(s3(1, 1) == complex{-1.0, 0.0});
  CHECK(s3(0, 1) == complex{0.0, 0.0});

  const Matrix4c s2 = dirac_matrix(DiracKind::pauli2);
  CHECK(s2(0, 1) == complex{0.0, -1.0});
  CHECK(s2(1, 0) == complex{0.0, 1.0});

  const Matrix4c beta = dirac_matrix(DiracKind::beta);
  for (int i = 0; i < 4; ++i) CHECK(beta(i, i) == complex{i < 2 ? 1.0 : -1.0, 0.0});

  const Matrix4c a1 = dirac_matrix(DiracKind::alpha1);
  CHECK(a1(0, 3) == complex{1.0, 0.0});
  CHECK(a1(2, 1) == complex{1.0, 0.0});
  CHECK(a1(0, 0) == complex{0.0, 0.0});

  CHECK((a1 * a1).max_abs_diff(Matrix4c::identity()) == 0.0);
  CHECK_THROWS_AS(dirac_kind_from_string("alpha4"), std::invalid_argument);
}

TEST_CASE("anticommutation relations are exact") {
  const Matrix4c a1 = dirac_matrix(DiracKind::alpha1);
  const Matrix4c a2 = dirac_matrix(DiracKind::alpha2);
  const Matrix4c beta = dirac_matrix(DiracKind::beta);
  CHECK(anticommutator(a1, a2).max_abs() == 0.0);
  CHECK(anticommutator(a1, beta).max_abs() == 0.0);
  CHECK(anticommutator(beta, beta).max_abs_diff(complex{2.0, 0.0} * Matrix4c::identity()) == 0.0);
}

TEST_CASE("alpha_dot: unit directions square to the identity") {
  CHECK((alpha_dot({1, 0, 0}) * alpha_dot({1, 0, 0})).max_abs_diff(Matrix4c::identity()) == 0.0);
  CHECK(alpha_dot({0, 0, 0}).max_abs() == 0.0);

  auto rng = testing::seeded_rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 3> v{u(rng), u(rng), u(rng)};
    const Matrix4c m = alpha_dot(v);
    CHECK(m.is_hermitian(0.0));
    const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    CHECK((m * m).max_abs_diff(complex{vv, 0.0} * Matrix4c::identity()) < 1e-15);
  }
}

TEST_CASE("clifford_report: every identity passes") {
  const CliffordReport rep = clifford_report();
  CHECK(rep.all_pass);
  CHECK(rep.checks.size() == 20);  // 15 generator identities + 3 spin + 2 derived
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
  CHECK(rep.to_json().find("\"all_pass\":true") != std::string::npos);
}

TEST_CASE("hermitian eigenvalues agree with the dense eigensolver oracle") {
  // the potential-matrix example: eig(2 I + 1 * i beta (alpha.e1))
  const Matrix4c v = complex{2.0, 0.0} * Matrix4c::identity() + ibeta_alpha({1.0, 0.0, 0.0});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(to_eigen(v));
  const auto oracle = es.eigenvalues();
  const auto ours = hermitian_eigenvalues(v);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ours[i] - oracle(i)) < 1e-12);
  CHECK(std::abs(ours[0] - 1.0) < 1e-12);
  CHECK(std::abs(ours[1] - 1.0) < 1e-12);
  CHECK(std::abs(ours[2] - 3.0) < 1e-12);
  CHECK(std::abs(ours[3] - 3.0) < 1e-12);

  auto rng = testing::seeded_rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const complex z = testing::random_complex(rng);
        m(i, j) = (i == j) ? complex{z.real(), 0.0} : z;
        m(j, i) = std::conj(m(i, j));
      }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> oes(to_eigen(m));
    const auto got = hermitian_eigenvalues(m);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - oes.eigenvalues()(i)) < 1e-12);
  }
}

TEST_CASE("operator norm of V1 I + V2 i beta (alpha.xhat) is |V1| + |V2|") {
  auto rng = testing::seeded_rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> uang(0.0, 3.14159);
  for (int trial = 0; trial < 25; ++trial) {
    const double v1 = u(rng), v2 = u(rng);
    const double th = uang(rng), ph = 2.0 * uang(rng);
    const std::array<double, 3> xhat{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                     std::cos(th)};
    const Matrix4c m = complex{v1, 0.0} * Matrix4c::identity() + complex{v2, 0.0} * ibeta_alpha(xhat);
    const auto ev = hermitian_eigenvalues(m);
    const double norm = std::max(std::abs(ev[0]), std::abs(ev[3]));
    CHECK(norm == doctest::Approx(std::abs(v1) + std::abs(v2)).epsilon(1e-12));
  }
}

TEST_CASE("spinor product is sesquilinear with nonnegative norm") {
  auto rng = testing::seeded_rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    Spinor4 v, w;
    for (int i = 0; i < 4; ++i) {
      v[i] = testing::random_complex(rng);
      w[i] = testing::random_complex(rng);
    }
    const complex lam = testing::random_complex(rng);
    CHECK(std::abs(dot(lam * v, w) - std::conj(lam) * dot(v, w)) < 1e-14);
    CHECK(std::abs(dot(v, lam * w) - lam * dot(v, w)) < 1e-14);
    CHECK(norm2(v) >= 0.0);
  }
}

TEST_SUITE_END();
