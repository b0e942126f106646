#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pwdirac/angular.hpp"

namespace pwdirac {

/// Uniform cell-centered radial grid: r_i = (i - 1/2) h, h = R/N, i = 1..N.
/// Cell-centering keeps every node strictly positive, so k_j/r is finite
/// everywhere without regularization.
struct RadialGrid {
  double R = 0.0;
  int N = 0;

  RadialGrid() = default;
  RadialGrid(double R_, int N_);

  double h() const { return R / N; }
  double r(int i) const { return (i + 0.5) * h(); }  // i = 0..N-1
  std::vector<double> nodes() const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;
};

/// State of one partial-wave channel: the two reduced radial profiles
/// (u+, u-) on a RadialGrid. The profiles are the r-weighted amplitudes of
/// Eq-free convention: the three-dimensional field is (1/r)(u+ Phi+ + u- Phi-).
struct RadialPair {
  AngularIndex idx{1, 1, 1};
  RadialGrid grid;
  std::vector<complex> uplus;
  std::vector<complex> uminus;

  RadialPair() = default;
  RadialPair(const AngularIndex& idx_, const RadialGrid& grid_);

  static RadialPair from_profiles(const AngularIndex& idx, const RadialGrid& grid,
                                  const std::function<complex(double)>& up,
                                  const std::function<complex(double)>& um);

  double l2_norm() const;  // sqrt(h sum(|u+|^2 + |u-|^2))
  RadialPair& operator+=(const RadialPair& o);
  RadialPair& operator-=(const RadialPair& o);
  RadialPair& operator*=(complex s);
  friend RadialPair operator+(RadialPair a, const RadialPair& b) { return a += b; }
  friend RadialPair operator-(RadialPair a, const RadialPair& b) { return a -= b; }
  friend RadialPair operator*(complex s, RadialPair a) { return a *= s; }

  /// CSV with a JSON header line: # {"j":..,"mj":..,"kj":..,"R":..,"N":..}
  /// then rows r, Re u+, Im u+, Re u-, Im u-.
  std::string to_csv() const;
  static RadialPair from_csv(const std::string& text);
};

complex inner(const RadialPair& a, const RadialPair& b);  // h sum <a, b>

/// Spherically symmetric matrix potential V = V1 I4 + V2 i beta (alpha.xhat),
/// sampled at the radial nodes. V1, V2 real (Hermiticity).
struct PotentialSpec {
  RadialGrid grid;
  std::vector<double> V1;
  std::vector<double> V2;
  double sigma = 1.5;  // decay-class exponent, > 1
  double delta = 0.5;  // smallness budget

  static PotentialSpec zero(const RadialGrid& grid, double sigma = 1.5, double delta = 0.5);
  static PotentialSpec sampled(const RadialGrid& grid, const std::function<double(double)>& v1,
                               const std::function<double(double)>& v2, double sigma,
                               double delta);
};

/// Applies the reduced channel operator
///   d = [[V1, -d/dr + k/r + V2], [d/dr + k/r + V2, V1]]
/// with centered O(h^2) differences and zero ghost cells at both ends.
/// The discrete operator is exactly symmetric (real), hence Hermitian.
RadialPair d_apply(const RadialPair& state, const PotentialSpec* pot = nullptr);

/// Norms of the reduced profiles: s = 0 is the discrete L^2(dr) norm,
/// s = 1 is sqrt(h sum |u'|^2) per component (centered differences, zero
/// ghosts) -- the half-line homogeneous H^1 of the profiles. The 4 pi of
/// the solid angle is absorbed by the basis normalization, so s = 0 equals
/// the L^2(R^3) norm of the reconstructed field.
double reduced_hs_norm(const RadialPair& state, int s);

struct Admissibility {
  bool admissible = false;
  double margin = 0.0;    // delta - sup_i |V|(r_i) (r^{1/2}|log r|^{sigma/2} + r^sigma)
  double sup_decay = 0.0; // the sup itself
  double sup_wsigma = 0.0;// sup_i |V|(r_i) w_sigma(r_i), w_sigma = r(1+|log r|)^sigma
};

/// Pointwise matrix magnitude |V| = |V1| + |V2| (the operator norm of
/// V1 I + V2 i beta(alpha.xhat)).
Admissibility admissibility(const PotentialSpec& pot);

double w_sigma(double r, double sigma);

/// Spinor field on the product grid (radial nodes) x (sphere grid);
/// storage radial-major. Quadrature of |f|^2 r^2 dr domega uses the
/// radial midpoint rule and the sphere weights.
struct ProductField {
  RadialGrid rgrid;
  std::shared_ptr<const SphereGrid> sgrid;
  std::vector<complex> values;  // [ir][iq][comp], iq = itheta*nphi + iphi

  ProductField(const RadialGrid& rg, std::shared_ptr<const SphereGrid> sg);

  complex& at(int ir, int iq, int comp);
  const complex& at(int ir, int iq, int comp) const;
  Spinor4 spinor(int ir, int iq) const;
  void set_spinor(int ir, int iq, const Spinor4& s);

  double l2_norm() const;
  ProductField& operator-=(const ProductField& o);
};

/// Default sphere grid for product-space checks; exact quadrature for the
/// low-degree integrands of the j <= 3/2 sectors and their cubic products.
std::shared_ptr<const SphereGrid> default_product_sphere();

/// u(r,theta,phi) = (1/r) [u+(r) Phi+ + u-(r) Phi-]; the 1/r factor restores
/// the L^2(R^3) function, making the map an isometry.
ProductField reconstruct(const RadialPair& state, std::shared_ptr<const SphereGrid> sgrid = {});

struct Projection {
  RadialPair pair;
  double offspace_residual = 0.0;  // L^2 norm of (field - reconstruct(pair))
};

/// u^pm(r) = r <Phi^pm, field(r, .)>_{S^2}; the residual measures the part
/// of the field outside the (idx) channel.
Projection project(const ProductField& field, const AngularIndex& idx);

/// True when more than `tol` of the squared mass sits within 5% of the
/// outer boundary -- reflections are about to contaminate the run.
bool boundary_mass_exceeds(const RadialPair& state, double tol = 1e-8);

}  // namespace pwdirac
