#include <doctest.h>

#include <cmath>

#include "pwdirac/evolution.hpp"
#include "pwdirac/experiments.hpp"
#include "test_support.hpp"

using namespace pwdirac;

TEST_SUITE_BEGIN("evolution");

TEST_CASE("Cayley step preserves the discrete charge to solver accuracy") {
  const RadialGrid g(12.0, 256);
  const AngularIndex idx(1, 1, 1);
  auto rng = testing::seeded_rng(51);
  const PotentialSpec pot = PotentialSpec::sampled(
      g, [](double r) { return 0.3 * std::exp(-0.5 * r); },
      [](double r) { return 0.2 * std::exp(-r); }, 1.5, 0.5);
  RadialPair u = testing::random_state(idx, g, rng);
  const double n0 = u.l2_norm();
  const CayleyStepper stepper(idx, g, &pot, 0.01);
  for (int m = 0; m < 10; ++m) stepper.step_in_place(u);
  CHECK(std::abs(u.l2_norm() - n0) < 1e-13 * n0);
}

TEST_CASE("Cayley step is first-order consistent with the generator") {
  const RadialGrid g(12.0, 512);
  const AngularIndex idx(1, 1, -1);
  auto prof = make_profile("gaussian", 1.0, 0.9, 4.0, 0.0);
  const RadialPair u = RadialPair::from_profiles(idx, g, prof, prof);
  auto defect = [&](double dt) {
    // step(u) - u + i dt d(u) should be O(dt^2)
    RadialPair s = cayley_step(u, nullptr, dt);
    s -= u;
    RadialPair du = d_apply(u);
    du *= complex{0.0, dt};
    s += du;
    return s.l2_norm();
  };
  const double e1 = defect(0.02), e2 = defect(0.01);
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("steps at fixed dt compose additively in count") {
  const RadialGrid g(10.0, 128);
  const AngularIndex idx(1, -1, 1);
  auto rng = testing::seeded_rng(52);
  const RadialPair f = testing::random_state(idx, g, rng);
  const TimeGrid tg(0.5, 25);
  const Trajectory whole = linear_evolve(f, nullptr, tg);
  // same run split into two stages through an intermediate state
  const TimeGrid ta(0.3, 15), tb(0.2, 10);
  const Trajectory first = linear_evolve(f, nullptr, ta);
  const Trajectory second = linear_evolve(first.states.back(), nullptr, tb);
  RadialPair diff = second.states.back();
  diff -= whole.states.back();
  CHECK(diff.l2_norm() == 0.0);  // identical operator, identical arithmetic
}

TEST_CASE("duhamel: zero forcing, linearity, manufactured convergence") {
  const RadialGrid g(12.0, 256);
  const AngularIndex idx(1, 1, 1);
  const TimeGrid tg(1.0, 40);

  RadialPair zero(idx, g);
  const Trajectory z = duhamel([&](int) { return zero; }, idx, g, nullptr, tg);
  for (const auto& s : z.states) CHECK(s.l2_norm() == 0.0);

  // linearity to machine precision
  auto rng = testing::seeded_rng(53);
  const RadialPair f1 = testing::random_state(idx, g, rng);
  const RadialPair f2 = testing::random_state(idx, g, rng);
  const complex a{0.7, -0.3}, b{-1.1, 0.2};
  auto combo = [&](int m) {
    const double w = std::sin(0.3 * m);
    RadialPair x = f1;
    x *= a * w;
    RadialPair y = f2;
    y *= b * w;
    x += y;
    return x;
  };
  const Trajectory tc = duhamel(combo, idx, g, nullptr, tg);
  const Trajectory t1 = duhamel([&](int m) { RadialPair x = f1; x *= std::sin(0.3 * m); return x; },
                                idx, g, nullptr, tg);
  const Trajectory t2 = duhamel([&](int m) { RadialPair x = f2; x *= std::sin(0.3 * m); return x; },
                                idx, g, nullptr, tg);
  RadialPair lincheck = t1.states.back();
  lincheck *= a;
  RadialPair tb = t2.states.back();
  tb *= b;
  lincheck += tb;
  lincheck -= tc.states.back();
  CHECK(lincheck.l2_norm() < 1e-13 * tc.states.back().l2_norm());

  // manufactured solution w(t) = sin^2(t) phi recovers at O(dt^2)
  std::vector<double> errs;
  for (int lev = 0; lev < 2; ++lev) {
    const TimeGrid tl(1.0, 40 << lev);
    auto phi = RadialPair::from_profiles(idx, g, make_profile("gaussian", 1.0, 0.9, 4.0, 0.0), {});
    const RadialPair dphi = d_apply(phi);
    auto forcing = [&](int m) {
      const double t = tl.t(m);
      RadialPair f = phi;
      f *= complex{0.0, 2.0 * std::sin(t) * std::cos(t)};
      RadialPair gg = dphi;
      gg *= complex{-std::sin(t) * std::sin(t), 0.0};
      f += gg;
      f *= complex{0.0, -1.0};  // duhamel integrates P(t-s) G(s) with G = -i F
      return f;
    };
    const Trajectory w = duhamel(forcing, idx, g, nullptr, tl);
    RadialPair expect = phi;
    expect *= std::sin(1.0) * std::sin(1.0);
    RadialPair diff = w.states.back();
    diff -= expect;
    errs.push_back(diff.l2_norm() / expect.l2_norm());
  }
  CHECK(errs[0] / errs[1] > 3.5);
}

TEST_CASE("nonlinear substep: exact phase rotation") {
  const RadialGrid g(10.0, 128);
  const AngularIndex idx(1, 1, 1);
  auto rng = testing::seeded_rng(54);
  const RadialPair u = testing::random_state(idx, g, rng);
  const double dt = 0.37;

  for (NonlinearityKind k : {NonlinearityKind::F1, NonlinearityKind::F2}) {
    const RadialPair v = nonlinear_substep(u, k, dt);
    // moduli unchanged pointwise
    for (int i = 0; i < g.N; ++i) {
      CHECK(std::abs(std::abs(v.uplus[static_cast<std::size_t>(i)]) -
                     std::abs(u.uplus[static_cast<std::size_t>(i)])) < 1e-15);
      CHECK(std::abs(std::abs(v.uminus[static_cast<std::size_t>(i)]) -
                     std::abs(u.uminus[static_cast<std::size_t>(i)])) < 1e-15);
    }
    // the rotation scalar is conserved along the substep
    const auto c0 = nonlinear_scalar(u, k);
    const auto c1 = nonlinear_scalar(v, k);
    for (int i = 0; i < g.N; ++i)
      CHECK(std::abs(c1[static_cast<std::size_t>(i)] - c0[static_cast<std::size_t>(i)]) <=
            1e-13 * std::max(1.0, std::abs(c0[static_cast<std::size_t>(i)])));
    // two half steps compose to one full step
    RadialPair halves = nonlinear_substep(nonlinear_substep(u, k, dt / 2), k, dt / 2);
    halves -= v;
    CHECK(halves.l2_norm() < 1e-14 * v.l2_norm());
  }
}

TEST_CASE("Strang flow: zero data, charge conservation, second order") {
  const RadialGrid g(12.0, 256);
  const AngularIndex idx(1, 1, 1);
  const PotentialSpec pot = PotentialSpec::sampled(
      g, [](double r) { return 0.1 * std::exp(-r); }, {}, 1.5, 0.5);

  RadialPair zero(idx, g);
  const Trajectory tz = strang_evolve(zero, &pot, NonlinearityKind::F1, TimeGrid(1.0, 16));
  CHECK(tz.states.back().l2_norm() == 0.0);
  CHECK(tz.charge_drift() == 0.0);

  auto prof = make_profile("gaussian", 0.7, 0.8, 4.0, 0.0);
  const RadialPair f = RadialPair::from_profiles(idx, g, prof, prof);
  const Trajectory tr = strang_evolve(f, &pot, NonlinearityKind::F2, TimeGrid(2.0, 1000));
  CHECK(tr.charge_drift() < 1e-10);

  // self-convergence at second order
  std::vector<double> errs;
  const Trajectory fine = strang_evolve(f, &pot, NonlinearityKind::F1, TimeGrid(0.5, 256));
  for (int lev = 0; lev < 2; ++lev) {
    const Trajectory t = strang_evolve(f, &pot, NonlinearityKind::F1, TimeGrid(0.5, 32 << lev));
    RadialPair diff = t.states.back();
    diff -= fine.states.back();
    errs.push_back(diff.l2_norm());
  }
  CHECK(errs[0] / errs[1] > 3.5);
}

TEST_CASE("warnings: boundary support monitor") {
  const RadialGrid g(10.0, 128);
  const AngularIndex idx(1, 1, 1);
  const RadialPair f = RadialPair::from_profiles(
      idx, g, [](double r) { const double s = r - 9.7; return complex{std::exp(-2 * s * s), 0.0}; },
      {});
  const Trajectory t = linear_evolve(f, nullptr, TimeGrid(0.2, 8));
  CHECK_FALSE(t.warnings.empty());
}

TEST_CASE("Picard: trivial data, small-data agreement, divergence reporting") {
  const RadialGrid g(16.0, 256);
  const AngularIndex idx(1, 1, 1);
  const TimeGrid tg(1.5, 60);

  RadialPair zero(idx, g);
  const PicardResult pz = picard_solve(zero, nullptr, NonlinearityKind::F1, tg, 10, 1e-12);
  CHECK(pz.converged);
  CHECK(pz.iterations == 1);
  CHECK(pz.trajectory.states.back().l2_norm() == 0.0);

  auto prof = make_profile("gaussian", 0.2, 0.8, 3.0, 0.0);
  const RadialPair f = RadialPair::from_profiles(idx, g, prof, {});
  const PicardResult ps = picard_solve(f, nullptr, NonlinearityKind::F1, tg, 25, 1e-11);
  CHECK(ps.converged);
  const Trajectory st = strang_evolve(f, nullptr, NonlinearityKind::F1, tg);
  RadialPair diff = ps.trajectory.states.back();
  diff -= st.states.back();
  CHECK(diff.l2_norm() / f.l2_norm() < 5e-4);  // both schemes are O(dt^2)

  // far above the smallness threshold the iteration must report divergence
  auto big = make_profile("gaussian", 12.0, 0.8, 3.0, 0.0);
  const RadialPair fb = RadialPair::from_profiles(idx, g, big, {});
  const PicardResult pb = picard_solve(fb, nullptr, NonlinearityKind::F1, tg, 25, 1e-11);
  CHECK_FALSE(pb.converged);
  CHECK_FALSE(pb.message.empty());
  CHECK_FALSE(pb.contraction_log.empty());
}

TEST_CASE("trajectory norms: sup_x closed form and the X-norm") {
  const RadialGrid g(10.0, 200);
  const AngularIndex idx(1, 1, 1);
  auto prof = make_profile("gaussian", 1.0, 0.8, 3.0, 0.0);
  const RadialPair f = RadialPair::from_profiles(idx, g, prof, prof);

  // sup_x against brute-force sphere sampling of the reconstruction
  auto sgrid = std::make_shared<const SphereGrid>(24, 16);
  const ProductField pf = reconstruct(f, sgrid);
  double brute = 0.0;
  for (int ir = 0; ir < g.N; ++ir)
    for (int iq = 0; iq < sgrid->size(); ++iq)
      brute = std::max(brute, std::sqrt(norm2(pf.spinor(ir, iq))));
  CHECK(sup_x(f) == doctest::Approx(brute).epsilon(1e-12));

  // a time-constant trajectory has L^2_t L^inf_x = a sqrt(T)
  Trajectory tc;
  tc.tgrid = TimeGrid(2.25, 9);
  for (int m = 0; m <= 9; ++m) tc.states.push_back(f);
  CHECK(trajectory_l2t_linfx(tc) == doctest::Approx(sup_x(f) * 1.5).epsilon(1e-12));
  CHECK(trajectory_xnorm(tc) == std::max(trajectory_l2t_linfx(tc), reduced_hs_norm(f, 1)));
}

TEST_SUITE_END();
