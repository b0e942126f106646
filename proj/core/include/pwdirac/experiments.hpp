#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwdirac/analysis.hpp"
#include "pwdirac/config.hpp"
#include "pwdirac/evolution.hpp"
#include "pwdirac/oracle3d.hpp"

namespace pwdirac {

/// Shipped radial data profiles. All vanish at r = 0 compatibly with both
/// channel parities (smooth origin factor r^2/(1+r^2)):
///   gaussian: a e^{-((r-r0)/w)^2} s(r)
///   bump:     a exp(1 - 1/(1 - ((r-r0)/w)^2)) on |r-r0| < w, else 0
///   packet:   gaussian envelope times cos(k0 (r - r0)) (low-frequency data)
std::function<complex(double)> make_profile(const std::string& name, double a, double w,
                                            double r0, double k0);

/// Validated run description assembled from a flat Config.
struct RunConfig {
  RadialGrid grid{16.0, 512};
  TimeGrid tgrid{1.0, 64};
  AngularIndex idx{1, 1, 1};

  std::string pot_profile = "none";  // none | gaussian | vhp_saturating
  double pot_amp = 0.0;
  double pot_width = 1.0;
  double pot_r0 = 0.0;
  std::string pot_component = "v1";  // v1 | v2 | both
  double sigma = 1.5;
  double delta = 0.5;

  NonlinearityKind kind = NonlinearityKind::F1;

  std::string data_profile = "gaussian";
  double amplitude = 0.1;
  double width = 0.8;
  double r0 = 3.0;
  double k0 = 0.0;
  std::string data_component = "plus";  // plus | minus | both

  std::string solver = "strang";  // strang | picard
  int max_iters = 25;
  double tol = 1e-10;

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  int stride = 1;

  int oracle_n = 64;
  double oracle_L = 8.0;

  std::string config_echo;

  /// Validates ranges (N >= 64, sigma > 1, j = 1/2 for nonlinear runs) and
  /// that every referenced profile name resolves; throws ConfigError.
  static RunConfig from_config(const Config& cfg, bool nonlinear_run);

  PotentialSpec make_potential() const;
  RadialPair make_data() const;
};

struct CheckRow {
  std::string name;
  bool pass = false;
  double metric = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  std::string config_echo;
  std::vector<CheckRow> checks;
  std::map<std::string, double> metrics;
  std::vector<std::string> files;
  std::vector<std::string> warnings;

  bool ok() const;
  std::string to_json() const;
};

/// Writes `content` under report-tracked bookkeeping and returns the path.
std::string emit_file(ExperimentReport& rep, const std::string& dir, const std::string& name,
                      const std::string& content);

/// One evolution run (solver from the config); trajectory + norms CSV and a
/// JSON manifest are written to out_dir.
ExperimentReport run_evolve(const RunConfig& cfg);

/// Strang + Picard per amplitude; records X-norms against the free flow,
/// Picard convergence and the empirical contraction factors, and identifies
/// the largest amplitude whose solution stays X-bounded (operationally:
/// Picard converges and the X-norm stays within 2x of the free evolution).
ExperimentReport sweep_amplitude(const RunConfig& cfg, const std::vector<double>& amplitudes);

/// Dilation family u_lambda(r) = lambda^{-1} u(lambda r): endpoint-ratio
/// spread and the H^1 ~ lambda^{-1/2} law.
ExperimentReport sweep_scaling(const RunConfig& cfg, const std::vector<double>& lambdas);

/// Halves h and dt `refinements` times and fits the observed order.
/// pipelines: free-oracle (vs the 3D spectral oracle), strang (self
/// convergence vs a finer reference), duhamel (manufactured forcing).
ExperimentReport convergence_study(const RunConfig& cfg, int refinements,
                                   const std::string& pipeline);

ExperimentReport run_compare_oracle(const RunConfig& cfg);

/// Least-squares order fit of log2(errors) across halvings; returns +inf
/// when every error vanishes (exact scheme on trivial data).
double fit_order(const std::vector<double>& errors, bool* monotone = nullptr);

}  // namespace pwdirac
