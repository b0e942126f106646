#include "pwdirac/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pwdirac {

namespace {
constexpr complex I{0.0, 1.0};
}

TimeGrid::TimeGrid(double T_, int M_) : T(T_), M(M_) {
  if (T <= 0.0 || M < 1) throw std::invalid_argument("TimeGrid: need T > 0 and M >= 1");
}

double Trajectory::charge_drift() const {
  if (states.empty()) return 0.0;
  const double n0 = states.front().l2_norm();
  if (n0 == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, std::abs(s.l2_norm() - n0) / n0);
  return worst;
}

std::string Trajectory::to_csv(int stride) const {
  std::ostringstream os;
  os << "t,r,re_uplus,im_uplus,re_uminus,im_uminus\n";
  char buf[192];
  for (std::size_t m = 0; m < states.size(); m += static_cast<std::size_t>(stride)) {
    const auto& s = states[m];
    const double t = tgrid.t(static_cast<int>(m));
    for (int i = 0; i < s.grid.N; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, s.grid.r(i),
                    s.uplus[static_cast<std::size_t>(i)].real(),
                    s.uplus[static_cast<std::size_t>(i)].imag(),
                    s.uminus[static_cast<std::size_t>(i)].real(),
                    s.uminus[static_cast<std::size_t>(i)].imag());
      os << buf;
    }
  }
  return os.str();
}

CayleyStepper::CayleyStepper(const AngularIndex& idx, const RadialGrid& grid,
                             const PotentialSpec* pot, double dt)
    : idx_(idx), grid_(grid), dt_(dt) {
  if (pot) {
    if (!(pot->grid == grid)) throw std::invalid_argument("CayleyStepper: grid mismatch");
    pot_ = *pot;
  }
  const int N = grid.N;
  const complex z = I * (dt / 2.0);
  const double inv2h = 1.0 / (2.0 * grid.h());
  std::vector<BlockTridiagLU::Block> diag(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double m = idx.kj / grid.r(i) + (pot ? pot->V2[static_cast<std::size_t>(i)] : 0.0);
    const double v1 = pot ? pot->V1[static_cast<std::size_t>(i)] : 0.0;
    diag[static_cast<std::size_t>(i)] = {1.0 + z * v1, z * m, z * m, 1.0 + z * v1};
  }
  // coupling to u_{i+1}: (du)+_i -= u-_{i+1}/2h ; (du)-_i += u+_{i+1}/2h
  const BlockTridiagLU::Block upper = {0.0, z * (-inv2h), z * (inv2h), 0.0};
  const BlockTridiagLU::Block lower = {0.0, z * (inv2h), z * (-inv2h), 0.0};
  lu_ = std::make_unique<BlockTridiagLU>(std::move(diag), upper, lower);
  if (!lu_->ok()) throw std::runtime_error("CayleyStepper: block solver breakdown");
}

void CayleyStepper::step_in_place(RadialPair& state) const {
  // rhs = (I - i dt/2 d) u, then solve (I + i dt/2 d) u_next = rhs
  const PotentialSpec* pot = pot_ ? &*pot_ : nullptr;
  RadialPair du = d_apply(state, pot);
  const int N = grid_.N;
  std::vector<complex> x(static_cast<std::size_t>(2 * N));
  const complex z = I * (dt_ / 2.0);
  for (int i = 0; i < N; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    x[2 * s] = state.uplus[s] - z * du.uplus[s];
    x[2 * s + 1] = state.uminus[s] - z * du.uminus[s];
  }
  lu_->solve(x);
  for (int i = 0; i < N; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    state.uplus[s] = x[2 * s];
    state.uminus[s] = x[2 * s + 1];
  }
}

RadialPair CayleyStepper::step(const RadialPair& state) const {
  RadialPair out = state;
  step_in_place(out);
  return out;
}

RadialPair cayley_step(const RadialPair& state, const PotentialSpec* pot, double dt) {
  CayleyStepper stepper(state.idx, state.grid, pot, dt);
  return stepper.step(state);
}

Trajectory duhamel(const std::function<RadialPair(int)>& forcing, const AngularIndex& idx,
                   const RadialGrid& grid, const PotentialSpec* pot, const TimeGrid& tgrid) {
  CayleyStepper stepper(idx, grid, pot, tgrid.dt());
  const double dt = tgrid.dt();
  Trajectory traj;
  traj.tgrid = tgrid;
  traj.scheme = "duhamel-trapezoid";
  RadialPair w(idx, grid);
  traj.states.push_back(w);
  RadialPair fm = forcing(0);
  for (int m = 0; m < tgrid.M; ++m) {
    // w(t_{m+1}) = P [ w(t_m) + dt/2 F(t_m) ] + dt/2 F(t_{m+1})
    RadialPair z = w;
    z += complex{dt / 2.0, 0.0} * fm;
    stepper.step_in_place(z);
    fm = forcing(m + 1);
    z += complex{dt / 2.0, 0.0} * fm;
    w = std::move(z);
    traj.states.push_back(w);
  }
  return traj;
}

RadialPair nonlinear_substep(const RadialPair& state, NonlinearityKind kind, double dt) {
  const auto c = nonlinear_scalar(state, kind);
  RadialPair out = state;
  for (int i = 0; i < state.grid.N; ++i) {
    const complex phase = std::polar(1.0, -dt * c[static_cast<std::size_t>(i)]);
    out.uplus[static_cast<std::size_t>(i)] *= phase;
    out.uminus[static_cast<std::size_t>(i)] *= phase;
  }
  return out;
}

namespace {

void monitor_boundary(Trajectory& traj, const RadialPair& state, int m) {
  if (boundary_mass_exceeds(state)) {
    std::ostringstream os;
    os << "support monitor: mass within 5% of R exceeds 1e-8 at step " << m;
    traj.warnings.push_back(os.str());
  }
}

}  // namespace

Trajectory strang_evolve(const RadialPair& f, const PotentialSpec* pot, NonlinearityKind kind,
                         const TimeGrid& tgrid) {
  Trajectory traj;
  traj.tgrid = tgrid;
  traj.scheme = "strang";
  if (pot) {
    const auto adm = admissibility(*pot);
    if (!adm.admissible) {
      std::ostringstream os;
      os << "potential fails admissibility by margin " << adm.margin;
      traj.warnings.push_back(os.str());
    }
  }
  CayleyStepper stepper(f.idx, f.grid, pot, tgrid.dt());
  const double half = tgrid.dt() / 2.0;
  RadialPair u = f;
  traj.states.push_back(u);
  for (int m = 0; m < tgrid.M; ++m) {
    u = nonlinear_substep(u, kind, half);
    stepper.step_in_place(u);
    u = nonlinear_substep(u, kind, half);
    traj.states.push_back(u);
    if (m + 1 == tgrid.M || (m % 64) == 63) monitor_boundary(traj, u, m + 1);
  }
  return traj;
}

Trajectory linear_evolve(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid) {
  Trajectory traj;
  traj.tgrid = tgrid;
  traj.scheme = "cayley-linear";
  CayleyStepper stepper(f.idx, f.grid, pot, tgrid.dt());
  RadialPair u = f;
  traj.states.push_back(u);
  for (int m = 0; m < tgrid.M; ++m) {
    stepper.step_in_place(u);
    traj.states.push_back(u);
    if (m + 1 == tgrid.M || (m % 64) == 63) monitor_boundary(traj, u, m + 1);
  }
  return traj;
}

double sup_x(const RadialPair& state) {
  const double c = 2.0 * std::sqrt(std::numbers::pi);
  double best = 0.0;
  for (int i = 0; i < state.grid.N; ++i) {
    const double m = std::sqrt(std::norm(state.uplus[static_cast<std::size_t>(i)]) +
                               std::norm(state.uminus[static_cast<std::size_t>(i)])) /
                     (c * state.grid.r(i));
    best = std::max(best, m);
  }
  return best;
}

double trajectory_l2t_linfx(const Trajectory& traj) {
  const double dt = traj.tgrid.dt();
  double acc = 0.0;
  const std::size_t M = traj.states.size() - 1;
  for (std::size_t m = 0; m <= M; ++m) {
    const double s = sup_x(traj.states[m]);
    const double w = (m == 0 || m == M) ? 0.5 : 1.0;
    acc += w * s * s;
  }
  return std::sqrt(dt * acc);
}

double trajectory_linft_h1(const Trajectory& traj) {
  double best = 0.0;
  for (const auto& s : traj.states) best = std::max(best, reduced_hs_norm(s, 1));
  return best;
}

double trajectory_xnorm(const Trajectory& traj) {
  return std::max(trajectory_l2t_linfx(traj), trajectory_linft_h1(traj));
}

PicardResult picard_solve(const RadialPair& f, const PotentialSpec* pot, NonlinearityKind kind,
                          const TimeGrid& tgrid, int max_iters, double tol) {
  PicardResult res;
  CayleyStepper stepper(f.idx, f.grid, pot, tgrid.dt());
  const double dt = tgrid.dt();
  const int M = tgrid.M;

  // linear trajectory P(t) f
  std::vector<RadialPair> lin;
  lin.reserve(static_cast<std::size_t>(M + 1));
  lin.push_back(f);
  for (int m = 0; m < M; ++m) lin.push_back(stepper.step(lin.back()));

  std::vector<RadialPair> u = lin;
  double prev_diff = -1.0;
  double prev_x = trajectory_xnorm({tgrid, lin, "", {}});
  const double blowup_cap = 1e6 * std::max(1.0, prev_x);

  for (int it = 1; it <= max_iters; ++it) {
    // w(t) = int_0^t P(t-s) F(u(s)) ds ; u_new = lin - i w
    std::vector<RadialPair> unew;
    unew.reserve(static_cast<std::size_t>(M + 1));
    unew.push_back(lin[0]);
    RadialPair w(f.idx, f.grid);
    RadialPair fm = F_reduced(u[0], kind);
    bool finite = true;
    for (int m = 0; m < M; ++m) {
      RadialPair z = w;
      z += complex{dt / 2.0, 0.0} * fm;
      stepper.step_in_place(z);
      fm = F_reduced(u[static_cast<std::size_t>(m + 1)], kind);
      z += complex{dt / 2.0, 0.0} * fm;
      w = std::move(z);
      RadialPair um = lin[static_cast<std::size_t>(m + 1)];
      um += complex{0.0, -1.0} * w;
      if (!std::isfinite(um.l2_norm())) {
        finite = false;
        break;
      }
      unew.push_back(std::move(um));
    }
    if (!finite) {
      res.converged = false;
      res.iterations = it;
      res.message = "iterate diverged to non-finite values";
      res.trajectory = {tgrid, std::move(u), "picard-diverged", {}};
      return res;
    }

    Trajectory diff{tgrid, {}, "", {}};
    diff.states.reserve(static_cast<std::size_t>(M + 1));
    for (std::size_t m = 0; m < unew.size(); ++m) {
      RadialPair d = unew[m];
      d -= u[m];
      diff.states.push_back(std::move(d));
    }
    const double dX = trajectory_xnorm(diff);
    const double xn = trajectory_xnorm({tgrid, unew, "", {}});

    ContractionEntry entry{};
    entry.iteration = it;
    entry.diff_x = dX;
    entry.ratio = (prev_diff > 0.0) ? dX / prev_diff : 0.0;
    const double denom = (xn * xn + prev_x * prev_x) * prev_diff;
    entry.normalized = (prev_diff > 0.0 && denom > 0.0) ? dX / denom : 0.0;
    res.contraction_log.push_back(entry);

    u = std::move(unew);
    res.iterations = it;
    if (dX < tol) {
      res.converged = true;
      res.trajectory = {tgrid, std::move(u), "picard", {}};
      res.message = "converged";
      return res;
    }
    if (xn > blowup_cap || (prev_diff > 0.0 && dX > 1e3 * prev_diff)) {
      res.converged = false;
      res.trajectory = {tgrid, std::move(u), "picard-diverged", {}};
      res.message = "iteration diverging (X-norm growth)";
      return res;
    }
    prev_diff = dX;
    prev_x = xn;
  }
  res.converged = false;
  res.trajectory = {tgrid, std::move(u), "picard-maxiter", {}};
  res.message = "max iterations reached without convergence";
  return res;
}

}  // namespace pwdirac
