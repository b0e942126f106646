#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pwdirac/block_tridiag.hpp"
#include "pwdirac/nonlinear.hpp"
#include "pwdirac/radial.hpp"

namespace pwdirac {

/// Uniform time grid on [0, T] with M steps.
struct TimeGrid {
  double T = 0.0;
  int M = 0;

  TimeGrid() = default;
  TimeGrid(double T_, int M_);
  double dt() const { return T / M; }
  double t(int m) const { return m * dt(); }
};

/// Time-ordered snapshots of one channel plus run metadata.
struct Trajectory {
  TimeGrid tgrid;
  std::vector<RadialPair> states;  // M + 1 snapshots
  std::string scheme;
  std::vector<std::string> warnings;

  /// max_m | ||u(t_m)|| - ||u(0)|| | / ||u(0)|| ; 0 for zero data.
  double charge_drift() const;

  /// Concatenated CSV: time column + per-node profile columns.
  std::string to_csv(int stride = 1) const;
};

/// Crank-Nicolson / Cayley transform of the reduced channel operator:
///   u <- (I + i dt/2 d)^{-1} (I - i dt/2 d) u
/// for the evolution i du/dt = d u. Exactly unitary in the discrete L^2
/// inner product at any dt since d is discretely Hermitian. The factored
/// solve is O(N) and reusable across steps.
class CayleyStepper {
 public:
  CayleyStepper(const AngularIndex& idx, const RadialGrid& grid, const PotentialSpec* pot,
                double dt);

  RadialPair step(const RadialPair& state) const;
  void step_in_place(RadialPair& state) const;
  double dt() const { return dt_; }

 private:
  AngularIndex idx_;
  RadialGrid grid_;
  std::optional<PotentialSpec> pot_;
  double dt_;
  std::unique_ptr<BlockTridiagLU> lu_;
};

RadialPair cayley_step(const RadialPair& state, const PotentialSpec* pot, double dt);

/// Trapezoid-in-s quadrature of the Duhamel integral
///   w(t) = int_0^t P(t - s) F(s) ds
/// with zero initial data, using the Cayley propagator P. The solution of
/// i du/dt = d u + F with u(0) = f is then P(t) f - i w(t).
Trajectory duhamel(const std::function<RadialPair(int)>& forcing, const AngularIndex& idx,
                   const RadialGrid& grid, const PotentialSpec* pot, const TimeGrid& tgrid);

/// Exact flow of the pointwise cubic substep i du/dt = F(u): the scalar
/// c(r) is conserved, so the substep is the phase rotation
/// u^pm <- e^{-i dt c(r)} u^pm.
RadialPair nonlinear_substep(const RadialPair& state, NonlinearityKind kind, double dt);

/// Strang composition: half nonlinear / full linear / half nonlinear.
/// Warns (in Trajectory::warnings) when the potential fails admissibility
/// or when mass approaches the outer boundary.
Trajectory strang_evolve(const RadialPair& f, const PotentialSpec* pot, NonlinearityKind kind,
                         const TimeGrid& tgrid);

/// Free/potential linear evolution (no nonlinearity), same stepper.
Trajectory linear_evolve(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid);

struct ContractionEntry {
  int iteration;
  double diff_x;       // ||u_{n+1} - u_n||_X
  double ratio;        // diff_x / previous diff_x (the raw contraction factor)
  double normalized;   // diff / ((||u_n||_X^2 + ||u_{n-1}||_X^2) ||u_n - u_{n-1}||_X)
};

struct PicardResult {
  bool converged = false;
  int iterations = 0;
  Trajectory trajectory;
  std::vector<ContractionEntry> contraction_log;
  std::string message;
};

/// Picard iteration for i du/dt = d u + F(u):
///   u_{n+1}(t) = P(t) f - i int_0^t P(t-s) F(u_n(s)) ds,
/// stopping when the successive X-norm distance drops below tol.
/// Non-convergence is a diagnostic result, not an exception.
PicardResult picard_solve(const RadialPair& f, const PotentialSpec* pot, NonlinearityKind kind,
                          const TimeGrid& tgrid, int max_iters, double tol);

/// X-norm of a trajectory: max(L^2_t L^inf_x, L^inf_t H^1). The spatial sup
/// of a j = 1/2 field is attained analytically:
///   sup_x |u| = max_i sqrt(|u+_i|^2 + |u-_i|^2) / (2 sqrt(pi) r_i).
double sup_x(const RadialPair& state);
double trajectory_l2t_linfx(const Trajectory& traj);
double trajectory_linft_h1(const Trajectory& traj);
double trajectory_xnorm(const Trajectory& traj);

}  // namespace pwdirac
