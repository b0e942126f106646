#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwdirac/angular.hpp"
#include "pwdirac/experiments.hpp"
#include "pwdirac/quadrature.hpp"
#include "test_support.hpp"

using namespace pwdirac;

namespace {
constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};
}  // namespace

TEST_SUITE_BEGIN("angular");

TEST_CASE("Gauss-Legendre integrates monomials exactly up to degree 2n-1") {
  const GaussLegendre gl(6);
  for (int k = 0; k <= 11; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      acc += gl.weights[i] * std::pow(gl.nodes[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("associated Legendre values") {
  auto rng = testing::seeded_rng(21);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);

  CHECK(legendre(0, 0, 0.3) == 1.0);
  CHECK(legendre(1, 1, 0.5) == doctest::Approx(-std::sqrt(0.75)).epsilon(1e-15));
  for (int t = 0; t < 10; ++t) {
    const double x = ux(rng);
    CHECK(legendre(1, 0, x) == doctest::Approx(x).epsilon(1e-15));
    // closed forms as an independent route
    CHECK(legendre(2, 1, x) == doctest::Approx(-3.0 * x * std::sqrt(1 - x * x)).epsilon(1e-13));
    CHECK(legendre(2, 2, x) == doctest::Approx(3.0 * (1 - x * x)).epsilon(1e-13));
    CHECK(legendre(3, 2, x) == doctest::Approx(15.0 * x * (1 - x * x)).epsilon(1e-13));
    CHECK(legendre(2, -1, x) == doctest::Approx(0.5 * x * std::sqrt(1 - x * x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(legendre(1, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(legendre(1, 0, 1.5), std::invalid_argument);
}

TEST_CASE("spherical harmonics: normalization and low-degree closed forms") {
  CHECK(std::abs(sph_harm(0, 0, 0.7, 1.3) - 1.0 / (2.0 * std::sqrt(pi))) < 1e-15);
  const double th = 0.9, ph = 2.1;
  CHECK(std::abs(sph_harm(1, 0, th, ph) - std::sqrt(3.0 / (4.0 * pi)) * std::cos(th)) < 1e-15);
  const complex y11 = -std::sqrt(3.0 / (8.0 * pi)) * std::sin(th) * std::polar(1.0, ph);
  CHECK(std::abs(sph_harm(1, 1, th, ph) - y11) < 1e-15);
  const complex y1m1 = std::sqrt(3.0 / (8.0 * pi)) * std::sin(th) * std::polar(1.0, -ph);
  CHECK(std::abs(sph_harm(1, -1, th, ph) - y1m1) < 1e-15);
  CHECK_THROWS_AS(sph_harm(1, 2, th, ph), std::invalid_argument);

  // quadrature <Y_1^0, Y_1^0> = 1
  auto grid = std::make_shared<const SphereGrid>(24, 16);
  SphereField f(grid);
  for (int i = 0; i < grid->ntheta(); ++i)
    for (int j = 0; j < grid->nphi(); ++j)
      f.at(i, j, 0) = sph_harm(1, 0, grid->theta(i), grid->phi(j));
  CHECK(std::abs(inner_s2(f, f) - 1.0) < 1e-12);
}

TEST_CASE("spec examples for the basis evaluator") {
  const double c = 1.0 / (2.0 * std::sqrt(pi));
  {
    const Spinor4 s = spinor_harmonic(Sign::plus, AngularIndex(1, 1, -1), 0.8, 1.7);
    CHECK(std::abs(s[0] - I * c) < 1e-15);
    CHECK(std::abs(s[1]) + std::abs(s[2]) + std::abs(s[3]) < 1e-15);
  }
  {
    const Spinor4 s = spinor_harmonic(Sign::minus, AngularIndex(1, -1, 1), 0.8, 1.7);
    CHECK(std::abs(s[3] - c) < 1e-15);
    CHECK(std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]) < 1e-15);
  }
  {
    const Spinor4 s = spinor_harmonic(Sign::plus, AngularIndex(1, 1, 1), pi / 2.0, 0.0);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1] - I * c) < 1e-15);
  }
}

TEST_CASE("AngularIndex validation") {
  CHECK_THROWS_AS(AngularIndex(2, 0, 1), std::invalid_argument);   // integer j
  CHECK_THROWS_AS(AngularIndex(1, 3, 1), std::invalid_argument);   // |mj| > j
  CHECK_THROWS_AS(AngularIndex(1, 1, 2), std::invalid_argument);   // |kj| != j + 1/2
  CHECK(AngularIndex::from_doubles(1.5, -0.5, 2.0).two_j == 3);
  CHECK(half_channels().size() == 4);
}

TEST_CASE("orthonormality: Gram matrix of the j <= 5/2 basis is the identity") {
  auto grid = std::make_shared<const SphereGrid>(64, 128);
  std::vector<SphereField> basis;
  for (int two_j : {1, 3, 5})
    for (int two_mj = -two_j; two_mj <= two_j; two_mj += 2)
      for (int kj : {-(two_j + 1) / 2, (two_j + 1) / 2})
        for (Sign sg : {Sign::plus, Sign::minus})
          basis.push_back(sample_basis(sg, AngularIndex(two_j, two_mj, kj), grid));
  REQUIRE(basis.size() == 48);
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b)
      worst = std::max(worst,
                       std::abs(inner_s2(basis[a], basis[b]) - (a == b ? 1.0 : 0.0)));
  CHECK(worst < 1e-10);
}

TEST_CASE("inner_s2 rejects grid mismatch") {
  auto g1 = std::make_shared<const SphereGrid>(16, 8);
  auto g2 = std::make_shared<const SphereGrid>(24, 8);
  SphereField a(g1), b(g2);
  CHECK_THROWS_AS(inner_s2(a, b), std::invalid_argument);
}

TEST_CASE("angular operators: eigenrelations and grid refusal") {
  const AngularIndex idx(1, 1, 1);
  auto grid = std::make_shared<const SphereGrid>(48, 16);
  const SphereField f = sample_basis(Sign::plus, idx, grid);

  auto rel_err = [&](AngularOp op, double eig) {
    SphereField g = apply_angular_op(op, f);
    for (std::size_t t = 0; t < g.values.size(); ++t) g.values[t] -= eig * f.values[t];
    return norm_s2(g);
  };
  CHECK(rel_err(AngularOp::K, -1.0) < 2e-3);          // K Phi = -k Phi
  CHECK(rel_err(AngularOp::J2, 0.75) < 2e-2);         // J^2 Phi = j(j+1) Phi
  CHECK(rel_err(AngularOp::J3, 0.5) < 1e-12);         // J3 Phi = m_j Phi (exact in modes)

  // L^2 on a single-component Y_1^0 sample: eigenvalue l(l+1) = 2
  SphereField y(grid);
  for (int i = 0; i < grid->ntheta(); ++i)
    for (int j = 0; j < grid->nphi(); ++j)
      y.at(i, j, 0) = sph_harm(1, 0, grid->theta(i), grid->phi(j));
  SphereField l2y = apply_angular_op(AngularOp::L2, y);
  for (std::size_t t = 0; t < l2y.values.size(); ++t) l2y.values[t] -= 2.0 * y.values[t];
  CHECK(norm_s2(l2y) < 2e-2);

  auto coarse = std::make_shared<const SphereGrid>(8, 16);
  CHECK_THROWS_AS(apply_angular_op(AngularOp::K, SphereField(coarse)), std::invalid_argument);
  auto oddphi = std::make_shared<const SphereGrid>(24, 12);
  CHECK_THROWS_AS(apply_angular_op(AngularOp::K, SphereField(oddphi)), std::invalid_argument);
}

TEST_CASE("eigenrelation errors decrease at second order in the theta grid") {
  const AngularIndex idx(1, -1, -1);
  for (AngularOp op : {AngularOp::K, AngularOp::J2}) {
    std::vector<double> errs;
    for (int nth : {16, 32, 64}) {
      auto grid = std::make_shared<const SphereGrid>(nth, 16);
      const SphereField f = sample_basis(Sign::minus, idx, grid);
      const double eig = (op == AngularOp::K) ? 1.0 : 0.75;
      SphereField g = apply_angular_op(op, f);
      for (std::size_t t = 0; t < g.values.size(); ++t) g.values[t] -= eig * f.values[t];
      errs.push_back(norm_s2(g));
    }
    CHECK(fit_order(errs) >= 1.8);
  }
}

TEST_CASE("ladder action of i(alpha.xhat) on the basis") {
  CHECK(alpha_radial_action(Sign::plus, AngularIndex(1, 1, 1)).scalar == -1.0);
  CHECK(alpha_radial_action(Sign::plus, AngularIndex(1, 1, 1)).sign == Sign::minus);
  CHECK(alpha_radial_action(Sign::minus, AngularIndex(3, 1, 2)).scalar == 1.0);

  auto rng = testing::seeded_rng(22);
  std::uniform_real_distribution<double> uth(0.05, pi - 0.05), uph(0.0, 2.0 * pi);
  double worst = 0.0;
  const AngularIndex idx(1, 1, 1);
  for (int t = 0; t < 20; ++t) {
    const double th = uth(rng), ph = uph(rng);
    const Matrix4c ax =
        alpha_dot({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const Spinor4 lhs = I * (ax * spinor_harmonic(sg, idx, th, ph));
      const RadialAction act = alpha_radial_action(sg, idx);
      Spinor4 rhs = spinor_harmonic(act.sign, idx, th, ph);
      rhs *= complex{act.scalar, 0.0};
      for (int comp = 0; comp < 4; ++comp) worst = std::max(worst, std::abs(lhs[comp] - rhs[comp]));
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("basis CSV table has the documented layout") {
  const SphereGrid grid(16, 8);
  const std::string csv = basis_table_csv(Sign::plus, AngularIndex(1, 1, 1), grid);
  CHECK(csv.rfind("theta,phi,", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == 1 + 16 * 8);
}

TEST_SUITE_END();
