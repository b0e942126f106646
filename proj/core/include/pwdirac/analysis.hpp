#pragma once

#include <map>
#include <string>
#include <vector>

#include "pwdirac/evolution.hpp"
#include "pwdirac/radial.hpp"

namespace pwdirac {

/// Half-line frequency profile on a midpoint lambda grid over (0, Lambda].
/// With Lambda = pi/h the discrete sine transform below satisfies an exact
/// Plancherel identity against the radial midpoint grid.
struct FrequencyProfile {
  std::vector<double> lambda;
  std::vector<complex> values;
  double dl = 0.0;

  double l2_norm() const;
};

/// Discrete sine transform s(lambda) = h sum_i g_i sin(lambda r_i) of a
/// reduced profile, nlambda midpoints on (0, pi/h].
FrequencyProfile sine_transform(const std::vector<complex>& g, double h, int nlambda);
/// Cosine transform, same grid (used for the lambda-derivative of s H).
FrequencyProfile cosine_transform(const std::vector<complex>& g, double h, int nlambda);

/// Weight bookkeeping: the sigma of w_sigma and the "+" of <x>^{1/2+}.
struct WeightSpec {
  double sigma = 1.5;
  double epsilon_plus = 0.05;
};

struct HsNormResult {
  double value = 0.0;
  double tail_fraction = 0.0;  // spectral mass in the top decade of lambda
  bool aliasing_warning = false;
};

/// Spectral homogeneous Sobolev norm of the reduced profiles:
///   ||state||_{Hs}^2 = (2/pi) int lambda^{2s} (|s+|^2 + |s-|^2) dlambda,
/// the half-line profile norm (Plancherel-exact at s = 0). Warns when the
/// spectral tail mass exceeds 1e-8 (under-resolved data).
HsNormResult hs_norm_report(const RadialPair& state, double s);
double hs_norm(const RadialPair& state, double s);

enum class MixedNormKind { L2t_Linfx, Linft_H1, X };

double mixed_norm(const Trajectory& traj, MixedNormKind which);

/// Weighted smoothing norm || w_sigma^{-1/2} u ||_{L^2_t L^2_x} of a
/// trajectory (radial weight, reduced-profile form).
double smoothing_norm(const Trajectory& traj, double sigma);

struct MixedNormReport {
  double l2t_linfx = 0.0;
  double linf_t_h1 = 0.0;
  double smoothing = 0.0;
  std::map<std::string, double> ratios;
};

/// Exact Hardy-Littlewood maximal function of the piecewise-constant cell
/// interpretation of the samples: cell i covers [x0 + i dx, x0 + (i+1) dx)
/// with value |g_i|. The sup over r > 0 of the symmetric averages
/// (1/2r) int_{t-r}^{t+r} |g| is attained at a cell-edge radius or in the
/// r -> 0+ limit; both are enumerated.
double maximal(const std::vector<double>& cell_values, double x0, double dx, double t);

struct RatioResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;   // lhs / rhs, 0 when flagged
  bool flagged = false; // rhs below the division guard
};

RatioResult make_ratio(double lhs, double rhs);

/// || e^{itd} f ||_{L^2_t L^inf_x} / || f ||_{H^1}: the endpoint Strichartz
/// ratio of the (possibly potential-perturbed) reduced flow.
RatioResult endpoint_ratio(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid);

/// || w_sigma^{-1/2} e^{itd} f ||_{L^2L^2} / || f ||_{L^2}.
RatioResult smoothing_ratio(const RadialPair& f, const PotentialSpec* pot, const TimeGrid& tgrid,
                            double sigma);

/// Mixed endpoint-smoothing ratio for the inhomogeneous flow with separable
/// forcing F(t) = a(t) shape:
///   || int_0^t P(t-s) F(s) ds ||_{L^2_t L^inf_x}
///   / || <r>^{1/2+eps} |D| F ||_{L^2_t L^2_r},
/// |D| acting per component through the sine-transform multiplier.
RatioResult nonhom_ratio(const RadialPair& shape, const std::vector<double>& a_of_t,
                         const TimeGrid& tgrid, double epsilon_plus);

struct MaximalBoundParams {
  double t_max = 8.0;
  int t_samples = 17;
  double z_max = 24.0;
  int z_samples = 6000;
  int nlambda = 2048;
  double lambda_max = 20.0;  // frequency cutoff of the ghat grid
};

/// sup_t of sup_x |e^{it|D|} f| / ((1/r) int_{-r}^{r} |G|)(t) for a radial
/// scalar f with reduced profile g = r f(r). Both sides are assembled from
/// the same one-dimensional reduction G(z) = int ghat(lambda) e^{iz lambda},
/// ghat = lambda * (sine transform of g); the normalization of ghat cancels.
/// The denominator is 2 M(|G|)(t) with M the standard maximal operator.
RatioResult maximal_bound_ratio(const std::vector<complex>& g, double h,
                                const MaximalBoundParams& params = {});

/// Weighted Fourier ratio at k in {0, 1}:
///   || <rho>^k F(lambda s+ H) ||_{L^2} vs sqrt(pi/2) || <r>^k g ||_{L^2},
/// evaluated through the sine/cosine Plancherel identities. k = 0 is the
/// Plancherel case (ratio 1); k = 1 exercises the low-frequency regime.
RatioResult interpol_ratio(const std::vector<complex>& g, double h, int k);

/// String-keyed dispatch used by the CLI: kind in {endpoint, maximal_bound,
/// smoothing, nonhom, interpol_k0, interpol_k1}.
std::vector<std::string> estimate_ratio_kinds();

}  // namespace pwdirac
