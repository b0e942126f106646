#include "pwdirac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwdirac {

namespace {
constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};
constexpr double kDivGuard = 1e-14;
}  // namespace

double FrequencyProfile::l2_norm() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return std::sqrt(dl * acc);
}

namespace {

FrequencyProfile trig_transform(const std::vector<complex>& g, double h, int nlambda, bool sine,
                                double lambda_max = 0.0) {
  if (nlambda < 1) throw std::invalid_argument("trig_transform: nlambda must be positive");
  FrequencyProfile p;
  const double Lmax = lambda_max > 0.0 ? lambda_max : pi / h;
  p.dl = Lmax / nlambda;
  p.lambda.resize(static_cast<std::size_t>(nlambda));
  p.values.assign(static_cast<std::size_t>(nlambda), complex{});
  const int N = static_cast<int>(g.size());
  for (int k = 0; k < nlambda; ++k) {
    const double lam = (k + 0.5) * p.dl;
    p.lambda[static_cast<std::size_t>(k)] = lam;
    complex acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double r = (i + 0.5) * h;
      acc += g[static_cast<std::size_t>(i)] * (sine ? std::sin(lam * r) : std::cos(lam * r));
    }
    p.values[static_cast<std::size_t>(k)] = h * acc;
  }
  return p;
}

}  // namespace

FrequencyProfile sine_transform(const std::vector<complex>& g, double h, int nlambda) {
  return trig_transform(g, h, nlambda, true);
}
FrequencyProfile cosine_transform(const std::vector<complex>& g, double h, int nlambda) {
  return trig_transform(g, h, nlambda, false);
}

HsNormResult hs_norm_report(const RadialPair& state, double s) {
  if (s < 0.0) throw std::invalid_argument("hs_norm: s must be >= 0");
  const int nl = 2 * state.grid.N;
  const auto sp = sine_transform(state.uplus, state.grid.h(), nl);
  const auto sm = sine_transform(state.uminus, state.grid.h(), nl);
  double acc = 0.0, tail = 0.0, total = 0.0;
  const double lam_tail = 0.9 * sp.lambda.back();
  for (std::size_t k = 0; k < sp.lambda.size(); ++k) {
    const double lam = sp.lambda[k];
    const double m2 = std::norm(sp.values[k]) + std::norm(sm.values[k]);
    acc += std::pow(lam, 2.0 * s) * m2;
    total += m2;
    if (lam > lam_tail) tail += m2;
  }
  HsNormResult out;
  out.value = std::sqrt(2.0 / pi * sp.dl * acc);
  out.tail_fraction = total > 0.0 ? tail / total : 0.0;
  out.aliasing_warning = out.tail_fraction > 1e-8;
  return out;
}

double hs_norm(const RadialPair& state, double s) { return hs_norm_report(state, s).value; }

double mixed_norm(const Trajectory& traj, MixedNormKind which) {
  if (traj.states.size() < 2) throw std::invalid_argument("mixed_norm: need >= 2 snapshots");
  switch (which) {
    case MixedNormKind::L2t_Linfx: return trajectory_l2t_linfx(traj);
    case MixedNormKind::Linft_H1: return trajectory_linft_h1(traj);
    case MixedNormKind::X: return trajectory_xnorm(traj);
  }
  throw std::logic_error("mixed_norm: unknown kind");
}

double smoothing_norm(const Trajectory& traj, double sigma) {
  const double dt = traj.tgrid.dt();
  const std::size_t M = traj.states.size() - 1;
  double acc = 0.0;
  for (std::size_t m = 0; m <= M; ++m) {
    const auto& s = traj.states[m];
    double shell = 0.0;
    for (int i = 0; i < s.grid.N; ++i) {
      const double w = w_sigma(s.grid.r(i), sigma);
      shell += (std::norm(s.uplus[static_cast<std::size_t>(i)]) +
                std::norm(s.uminus[static_cast<std::size_t>(i)])) / w;
    }
    shell *= s.grid.h();
    acc += ((m == 0 || m == M) ? 0.5 : 1.0) * shell;
  }
  return std::sqrt(dt * acc);
}

double maximal(const std::vector<double>& cell_values, double x0, double dx, double t) {
  const int N = static_cast<int>(cell_values.size());
  if (N == 0) return 0.0;
  // prefix integrals of |g| over cells
  std::vector<double> pre(static_cast<std::size_t>(N + 1), 0.0);
  for (int i = 0; i < N; ++i)
    pre[static_cast<std::size_t>(i + 1)] =
        pre[static_cast<std::size_t>(i)] + std::abs(cell_values[static_cast<std::size_t>(i)]) * dx;
  const double x_end = x0 + N * dx;
  auto cum = [&](double x) -> double {
    if (x <= x0) return 0.0;
    if (x >= x_end) return pre[static_cast<std::size_t>(N)];
    const double f = (x - x0) / dx;
    const int i = static_cast<int>(f);
    return pre[static_cast<std::size_t>(i)] +
           (f - i) * std::abs(cell_values[static_cast<std::size_t>(std::min(i, N - 1))]) * dx;
  };
  // r -> 0+ limit: two-sided limit of the cell function at t
  auto cell_at = [&](double x) -> double {
    const double f = (x - x0) / dx;
    const int i = static_cast<int>(std::floor(f));
    if (i < 0 || i >= N) return 0.0;
    return std::abs(cell_values[static_cast<std::size_t>(i)]);
  };
  double best = 0.5 * (cell_at(t - 0.25 * dx) + cell_at(t + 0.25 * dx));
  // edges as breakpoint radii
  for (int j = 0; j <= N; ++j) {
    const double edge = x0 + j * dx;
    const double r = std::abs(edge - t);
    if (r <= 0.0) continue;
    best = std::max(best, (cum(t + r) - cum(t - r)) / (2.0 * r));
  }
  return best;
}

RatioResult make_ratio(double lhs, double rhs) {
  RatioResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs < kDivGuard) {
    r.flagged = true;
    r.ratio = 0.0;
  } else {
    r.ratio = lhs / rhs;
  }
  return r;
}

RatioResult endpoint_ratio(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid) {
  Trajectory traj = linear_evolve(f, pot, tgrid);
  return make_ratio(trajectory_l2t_linfx(traj), hs_norm(f, 1.0));
}

RatioResult smoothing_ratio(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid,
                            double sigma) {
  Trajectory traj = linear_evolve(f, pot, tgrid);
  return make_ratio(smoothing_norm(traj, sigma), f.l2_norm());
}

namespace {

/// |D| per component through the half-line sine multiplier: g -> back
/// transform of lambda * (sine transform of g).
std::vector<complex> abs_d_profile(const std::vector<complex>& g, double h) {
  const int N = static_cast<int>(g.size());
  const int nl = 2 * N;
  FrequencyProfile s = sine_transform(g, h, nl);
  std::vector<complex> out(static_cast<std::size_t>(N), complex{});
  for (int i = 0; i < N; ++i) {
    const double r = (i + 0.5) * h;
    complex acc = 0.0;
    for (int k = 0; k < nl; ++k)
      acc += s.lambda[static_cast<std::size_t>(k)] * s.values[static_cast<std::size_t>(k)] *
             std::sin(s.lambda[static_cast<std::size_t>(k)] * r);
    out[static_cast<std::size_t>(i)] = 2.0 / pi * s.dl * acc;
  }
  return out;
}

}  // namespace

RatioResult nonhom_ratio(const RadialPair& shape, const std::vector<double>& a_of_t,
                         const TimeGrid& tgrid, double epsilon_plus) {
  if (static_cast<int>(a_of_t.size()) != tgrid.M + 1)
    throw std::invalid_argument("nonhom_ratio: a_of_t must have M+1 samples");
  // LHS: Duhamel trajectory of the separable forcing, L^2_t L^inf_x
  auto forcing = [&](int m) {
    RadialPair f = shape;
    f *= complex{a_of_t[static_cast<std::size_t>(m)], 0.0};
    return f;
  };
  Trajectory w = duhamel(forcing, shape.idx, shape.grid, nullptr, tgrid);
  const double lhs = trajectory_l2t_linfx(w);

  // RHS: separable, ||a||_{L2t} * || <r>^{1/2+eps} |D| shape ||_{L2r}
  const double h = shape.grid.h();
  const auto dup = abs_d_profile(shape.uplus, h);
  const auto dum = abs_d_profile(shape.uminus, h);
  double spatial = 0.0;
  for (int i = 0; i < shape.grid.N; ++i) {
    const double r = shape.grid.r(i);
    const double w2 = std::pow(1.0 + r * r, 0.5 + epsilon_plus);  // <r>^{2(1/2+eps)/2}... squared weight
    spatial += w2 * (std::norm(dup[static_cast<std::size_t>(i)]) +
                     std::norm(dum[static_cast<std::size_t>(i)]));
  }
  spatial = std::sqrt(h * spatial);
  double at = 0.0;
  for (std::size_t m = 0; m < a_of_t.size(); ++m) {
    const double wgt = (m == 0 || m + 1 == a_of_t.size()) ? 0.5 : 1.0;
    at += wgt * a_of_t[m] * a_of_t[m];
  }
  at = std::sqrt(tgrid.dt() * at);
  return make_ratio(lhs, at * spatial);
}

RatioResult maximal_bound_ratio(const std::vector<complex>& g, double h,
                                const MaximalBoundParams& params) {
  // ghat(lambda) = lambda * sine-transform(g); G(z) = int ghat e^{iz lambda}.
  // The z-grid must resolve e^{iz lambda}: dl << 2 pi / z_max, hence the
  // dedicated cutoff instead of the Plancherel grid.
  FrequencyProfile s = trig_transform(g, h, params.nlambda, true, params.lambda_max);
  const int nz = params.z_samples;
  const double dz = 2.0 * params.z_max / nz;
  std::vector<complex> G(static_cast<std::size_t>(nz));
  std::vector<double> absG(static_cast<std::size_t>(nz));
  for (int iz = 0; iz < nz; ++iz) {
    const double z = -params.z_max + (iz + 0.5) * dz;
    complex acc = 0.0;
    for (std::size_t k = 0; k < s.lambda.size(); ++k)
      acc += s.lambda[k] * s.values[k] * std::polar(1.0, z * s.lambda[k]);
    G[static_cast<std::size_t>(iz)] = s.dl * acc;
    absG[static_cast<std::size_t>(iz)] = std::abs(G[static_cast<std::size_t>(iz)]);
  }
  // prefix sums of G for the radial averages (1/rho) int_{-rho}^{rho} G(t+z) dz
  std::vector<complex> pre(static_cast<std::size_t>(nz + 1), complex{});
  for (int iz = 0; iz < nz; ++iz)
    pre[static_cast<std::size_t>(iz + 1)] = pre[static_cast<std::size_t>(iz)] + G[static_cast<std::size_t>(iz)] * dz;
  auto cumG = [&](double z) -> complex {
    const double f = (z + params.z_max) / dz;
    if (f <= 0.0) return complex{};
    if (f >= nz) return pre[static_cast<std::size_t>(nz)];
    const int i = static_cast<int>(f);
    return pre[static_cast<std::size_t>(i)] + (f - i) * G[static_cast<std::size_t>(std::min(i, nz - 1))] * dz;
  };

  double worst = 0.0;
  for (int it = 0; it < params.t_samples; ++it) {
    const double t = params.t_max * it / (params.t_samples - 1);
    // sup over rho (grid radii plus the rho -> 0 limit |2 G(t)|)
    const int i_t = std::clamp(static_cast<int>((t + params.z_max) / dz), 0, nz - 1);
    double sup_u = 2.0 * absG[static_cast<std::size_t>(i_t)];
    const int kmax = static_cast<int>((params.z_max - std::abs(t)) / dz) - 2;
    for (int k = 1; k <= kmax; ++k) {
      const double rho = k * dz;
      sup_u = std::max(sup_u, std::abs(cumG(t + rho) - cumG(t - rho)) / rho);
    }
    const double m = maximal(absG, -params.z_max, dz, t);
    if (m < kDivGuard) continue;
    worst = std::max(worst, sup_u / (2.0 * m));
  }
  return make_ratio(worst, 1.0);
}

RatioResult interpol_ratio(const std::vector<complex>& g, double h, int k) {
  if (k != 0 && k != 1) throw std::invalid_argument("interpol_ratio: k must be 0 or 1");
  const int N = static_cast<int>(g.size());
  const int nl = 2 * N;
  const FrequencyProfile s = sine_transform(g, h, nl);
  double gl2 = 0.0, rgl2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const double r = (i + 0.5) * h;
    gl2 += std::norm(g[static_cast<std::size_t>(i)]);
    rgl2 += r * r * std::norm(g[static_cast<std::size_t>(i)]);
  }
  gl2 *= h;
  rgl2 *= h;
  if (k == 0) {
    // Plancherel: || s H ||_{L^2(dlambda)} vs sqrt(pi/2) ||g||
    return make_ratio(s.l2_norm(), std::sqrt(pi / 2.0 * gl2));
  }
  // k = 1: multiplication by rho on the transform side is d/dlambda of s H
  // (no boundary term since s(0) = 0); d/dlambda s = cosine transform of r g.
  std::vector<complex> rg(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    rg[static_cast<std::size_t>(i)] = (i + 0.5) * h * g[static_cast<std::size_t>(i)];
  const FrequencyProfile c = cosine_transform(rg, h, nl);
  const double lhs = std::sqrt(s.l2_norm() * s.l2_norm() + c.l2_norm() * c.l2_norm());
  const double rhs = std::sqrt(pi / 2.0 * (gl2 + rgl2));
  return make_ratio(lhs, rhs);
}

std::vector<std::string> estimate_ratio_kinds() {
  return {"endpoint", "maximal_bound", "smoothing", "nonhom", "interpol_k0", "interpol_k1"};
}

}  // namespace pwdirac
