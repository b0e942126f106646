#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwdirac/algebra.hpp"
#include "pwdirac/evolution.hpp"
#include "pwdirac/experiments.hpp"
#include "pwdirac/oracle3d.hpp"
#include "test_support.hpp"

using namespace pwdirac;

namespace {
constexpr double pi = std::numbers::pi;

CartesianSpinorField gaussian_field(int n, double L) {
  CartesianSpinorField f(n, L);
  f.sample([](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    Spinor4 s;
    s[0] = std::exp(-r2);
    s[1] = complex{0.0, 0.5} * std::exp(-0.8 * r2);
    s[2] = 0.25 * x * std::exp(-r2);
    return s;
  });
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("oracle3d");

TEST_CASE("free symbol at t = 0 is the identity") {
  const CartesianSpinorField f = gaussian_field(32, 8.0);
  CartesianSpinorField g = free_step_symbol(f, 0.0);
  g -= f;
  CHECK(g.l2_norm() < 1e-14 * f.l2_norm());
}

TEST_CASE("free symbol is unitary and forms a one-parameter group") {
  const CartesianSpinorField f = gaussian_field(32, 8.0);
  const double n0 = f.l2_norm();
  const CartesianSpinorField g = free_step_symbol(f, 0.7);
  CHECK(std::abs(g.l2_norm() - n0) < 1e-12 * n0);

  CartesianSpinorField two_steps = free_step_symbol(free_step_symbol(f, 0.3), 0.4);
  two_steps -= g;
  CHECK(two_steps.l2_norm() < 1e-12 * n0);
}

TEST_CASE("assembled half-wave multipliers reproduce the symbol") {
  const CartesianSpinorField f = gaussian_field(32, 8.0);
  const double t = 0.55;
  CartesianSpinorField a = free_step_symbol(f, t);
  const CartesianSpinorField b = free_flow_assembled(f, t);
  a -= b;
  // max pointwise difference
  double worst = 0.0;
  for (int c = 0; c < 4; ++c) {
    const complex* p = a.component(c);
    for (int i = 0; i < 32 * 32 * 32; ++i) worst = std::max(worst, std::abs(p[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("second-order identity: D(Df) = -Laplacian f") {
  // single Fourier mode: exact to roundoff
  CartesianSpinorField plane(32, 8.0);
  const double k = 2.0 * pi / 16.0 * 3.0;
  plane.sample([k](double x, double y, double) {
    Spinor4 s;
    s[0] = std::polar(1.0, k * x);
    s[2] = std::polar(0.5, k * y);
    return s;
  });
  CHECK(dsquared_residual(plane) < 1e-13);

  CHECK(dsquared_residual(gaussian_field(32, 8.0)) < 1e-10);

  const CartesianSpinorField zero(16, 4.0);
  CHECK(dsquared_residual(zero) == 0.0);
}

TEST_CASE("free flow preserves the partial-wave channel") {
  const AngularIndex idx(1, 1, 1);
  auto prof = make_profile("gaussian", 1.0, 0.9, 2.5, 0.0);
  const CartesianSpinorField f0 =
      reconstruct_box_analytic(idx, prof, {}, 64, 8.0);
  const CartesianSpinorField f1 = free_step_symbol(f0, 0.4);

  const RadialGrid prg(7.5, 96);
  auto sg = default_product_sphere();
  const ProductField p0 = sample_product(f0, prg, sg);
  const ProductField p1 = sample_product(f1, prg, sg);
  const double r0 = project(p0, idx).offspace_residual / p0.l2_norm();
  const double r1 = project(p1, idx).offspace_residual / p1.l2_norm();
  MESSAGE("off-channel residuals: ", r0, " -> ", r1);
  CHECK(r1 <= 10.0 * r0 + 1e-12);
}

TEST_CASE("radial data of the form f1 + D f2 stays in the j = 1/2 sector") {
  // componentwise-radial f1, f2; D f2 computed spectrally
  const int n = 64;
  const double L = 8.0;
  CartesianSpinorField f1(n, L), f2(n, L);
  f1.sample([](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    Spinor4 s;
    s[0] = std::exp(-r2);
    s[3] = complex{0.0, 0.6} * std::exp(-1.3 * r2);
    return s;
  });
  f2.sample([](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    Spinor4 s;
    s[1] = 0.8 * std::exp(-0.9 * r2);
    return s;
  });
  CartesianSpinorField f = apply_dirac(f2);
  for (int c = 0; c < 4; ++c) {
    complex* p = f.component(c);
    const complex* q = f1.component(c);
    for (int i = 0; i < n * n * n; ++i) p[i] += q[i];
  }

  const RadialGrid prg(7.5, 96);
  auto sg = default_product_sphere();
  auto sector_residual = [&](const CartesianSpinorField& field) {
    const ProductField p = sample_product(field, prg, sg);
    // subtract the reconstruction of every j = 1/2 channel projection
    ProductField rest = p;
    for (const auto& idx : half_channels()) {
      const Projection pr = project(p, idx);
      const ProductField rec = reconstruct(pr.pair, sg);
      for (std::size_t i = 0; i < rest.values.size(); ++i) rest.values[i] -= rec.values[i];
    }
    return rest.l2_norm() / p.l2_norm();
  };
  const double before = sector_residual(f);
  const double after = sector_residual(free_step_symbol(f, 0.5));
  MESSAGE("j = 1/2 sector residuals: ", before, " -> ", after);
  CHECK(before < 5e-3);  // tricubic sampling floor at this box resolution
  CHECK(after <= 10.0 * before + 1e-12);
}

TEST_CASE("oracle_compare converges at second order against the spectral flow") {
  const AngularIndex idx(1, 1, 1);
  auto prof = make_profile("gaussian", 1.0, 0.7, 3.0, 0.0);
  std::vector<double> errs;
  OracleCompareReport rep;
  for (int k = 0; k < 2; ++k) {
    const RadialGrid grid(8.0, 64 << k);
    const RadialPair f = RadialPair::from_profiles(idx, grid, prof, {});
    rep = oracle_compare(f, 0.5, 16 << k, 64, 8.0);
    errs.push_back(rep.rel_discrepancy);
  }
  MESSAGE("discrepancies: ", errs[0], " -> ", errs[1]);
  CHECK(errs[0] / errs[1] >= 3.5);
  CHECK_FALSE(rep.boundary_warning);
  CHECK(rep.to_json().find("rel_discrepancy") != std::string::npos);

  // t = 0: only reconstruction/sampling error remains
  const RadialGrid grid(8.0, 128);
  const RadialPair f = RadialPair::from_profiles(idx, grid, prof, {});
  const auto rep0 = oracle_compare(f, 1e-30, 1, 32, 8.0);
  CHECK(rep0.rel_discrepancy < 1e-4);
}

TEST_CASE("discrepancy is invariant under the m_j sign swap") {
  auto prof = make_profile("gaussian", 1.0, 1.0, 2.5, 0.0);
  double d[2];
  int slot = 0;
  for (int two_mj : {1, -1}) {
    const AngularIndex idx(1, two_mj, 1);
    const RadialGrid grid(8.0, 96);
    const RadialPair f = RadialPair::from_profiles(idx, grid, prof, {});
    d[slot++] = oracle_compare(f, 0.4, 24, 32, 8.0).rel_discrepancy;
  }
  CHECK(d[0] == doctest::Approx(d[1]).epsilon(1e-10));
}

TEST_SUITE_END();
