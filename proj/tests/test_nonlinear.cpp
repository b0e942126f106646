#include <doctest.h>

#include <cmath>

#include "pwdirac/nonlinear.hpp"
#include "test_support.hpp"

using namespace pwdirac;

TEST_SUITE_BEGIN("nonlinear");

TEST_CASE("pointwise cubic on unit spinors") {
  Spinor4 e0;
  e0[0] = 1.0;
  const Spinor4 f1 = F_full(e0, NonlinearityKind::F1);
  const Spinor4 f2 = F_full(e0, NonlinearityKind::F2);
  CHECK(std::abs(f1[0] - complex{1.0, 0.0}) == 0.0);
  CHECK(std::abs(f2[0] - complex{1.0, 0.0}) == 0.0);

  Spinor4 e2;
  e2[2] = 1.0;
  const Spinor4 g2 = F_full(e2, NonlinearityKind::F2);
  CHECK(std::abs(g2[2] + complex{1.0, 0.0}) == 0.0);  // lower block of beta is -1
}

TEST_CASE("cubic homogeneity: F(lam u) = lam |lam|^2 F(u)") {
  auto rng = testing::seeded_rng(41);
  for (int t = 0; t < 50; ++t) {
    Spinor4 u;
    for (int i = 0; i < 4; ++i) u[i] = testing::random_complex(rng);
    const complex lam = testing::random_complex(rng, 2.0);
    for (NonlinearityKind k : {NonlinearityKind::F1, NonlinearityKind::F2}) {
      const Spinor4 a = F_full(lam * u, k);
      Spinor4 b = F_full(u, k);
      b *= lam * std::norm(lam);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
  }
}

TEST_CASE("gauge covariance: F(e^{i gamma} u) = e^{i gamma} F(u)") {
  auto rng = testing::seeded_rng(42);
  std::uniform_real_distribution<double> ug(0.0, 6.28);
  for (int t = 0; t < 20; ++t) {
    Spinor4 u;
    for (int i = 0; i < 4; ++i) u[i] = testing::random_complex(rng);
    const complex phase = std::polar(1.0, ug(rng));
    for (NonlinearityKind k : {NonlinearityKind::F1, NonlinearityKind::F2}) {
      const Spinor4 a = F_full(phase * u, k);
      Spinor4 b = F_full(u, k);
      b *= phase;
      for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
    }
  }
}

TEST_CASE("reduced form: edge cases and the j = 1/2 restriction") {
  const RadialGrid g(10.0, 96);
  const AngularIndex idx(1, 1, 1);
  auto rng = testing::seeded_rng(43);

  RadialPair s = testing::random_state(idx, g, rng);
  for (auto& v : s.uminus) v = 0.0;
  RadialPair a = F_reduced(s, NonlinearityKind::F1);
  RadialPair b = F_reduced(s, NonlinearityKind::F2);
  a -= b;
  CHECK(a.l2_norm() == 0.0);  // u- = 0 makes both kinds coincide

  RadialPair zero(idx, g);
  CHECK(F_reduced(zero, NonlinearityKind::F1).l2_norm() == 0.0);

  const RadialPair high = testing::random_state(AngularIndex(3, 1, 2), g, rng);
  CHECK_THROWS_AS(F_reduced(high, NonlinearityKind::F1), std::invalid_argument);
}

TEST_CASE("reduced form equals the projected full cubic (primary oracle)") {
  const RadialGrid g(10.0, 96);
  auto rng = testing::seeded_rng(44);
  for (const auto& idx : half_channels())
    for (NonlinearityKind k : {NonlinearityKind::F1, NonlinearityKind::F2}) {
      const RadialPair u = testing::random_state(idx, g, rng);
      const RadialPair direct = F_reduced(u, k);
      const Projection via3d = project(F_full(reconstruct(u), k), idx);
      RadialPair diff = via3d.pair;
      diff -= direct;
      CHECK(diff.l2_norm() / direct.l2_norm() < 1e-10);
    }
}

TEST_CASE("channel invariance of both cubics on all four j = 1/2 channels") {
  const RadialGrid g(10.0, 96);
  auto rng = testing::seeded_rng(45);
  for (const auto& idx : half_channels())
    for (NonlinearityKind k : {NonlinearityKind::F1, NonlinearityKind::F2}) {
      const RadialPair u = testing::random_state(idx, g, rng);
      CHECK(invariance_residual(u, k) < 1e-9);
    }
}

TEST_CASE("the scalars <u,u> and <beta u,u> carry no angular dependence") {
  const RadialGrid g(8.0, 48);
  auto rng = testing::seeded_rng(46);
  auto sgrid = std::make_shared<const SphereGrid>(16, 8);
  const RadialPair u = testing::random_state(AngularIndex(1, -1, -1), g, rng);
  const ProductField f = reconstruct(u, sgrid);
  for (int ir = 8; ir < g.N; ir += 16) {
    for (bool with_beta : {false, true}) {
      double mean = 0.0, var = 0.0;
      std::vector<double> vals;
      for (int iq = 0; iq < sgrid->size(); ++iq) {
        Spinor4 v = f.spinor(ir, iq);
        Spinor4 bv = v;
        if (with_beta) {
          bv[2] = -bv[2];
          bv[3] = -bv[3];
        }
        vals.push_back(dot(bv, v).real());
      }
      for (double x : vals) mean += x;
      mean /= vals.size();
      for (double x : vals) var += (x - mean) * (x - mean);
      var /= vals.size();
      if (std::abs(mean) > 0.0) CHECK(var / (mean * mean) < 1e-20);
    }
  }
}

TEST_CASE("counter-control: a j = 3/2 channel is NOT invariant") {
  const RadialGrid g(10.0, 96);
  auto rng = testing::seeded_rng(47);
  const RadialPair u = testing::random_state(AngularIndex(3, 1, 2), g, rng);
  const double res = invariance_residual(u, NonlinearityKind::F1);
  MESSAGE("j = 3/2 off-channel residual of F1: ", res);
  CHECK(res > 1e-4);  // the invariance genuinely fails outside j = 1/2
}

TEST_SUITE_END();
