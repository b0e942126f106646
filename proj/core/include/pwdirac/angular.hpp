#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pwdirac/algebra.hpp"

namespace pwdirac {

/// Partial-wave channel label (j, m_j, k_j):
/// j in {1/2, 3/2, ...}, m_j in {-j..j} (half-integer steps), |k_j| = j + 1/2.
/// Stored doubled so the fields stay exact integers.
struct AngularIndex {
  int two_j;   // 2j: odd positive
  int two_mj;  // 2 m_j: odd, |two_mj| <= two_j
  int kj;      // +-(j + 1/2)

  AngularIndex(int two_j_, int two_mj_, int kj_);
  static AngularIndex from_doubles(double j, double mj, double kj);

  double j() const { return 0.5 * two_j; }
  double mj() const { return 0.5 * two_mj; }

  friend bool operator==(const AngularIndex&, const AngularIndex&) = default;
  std::string label() const;
};

/// The four j = 1/2 channels.
std::vector<AngularIndex> half_channels();

/// Product quadrature grid on S^2: Gauss-Legendre in cos(theta), uniform
/// trapezoid in phi. Exact for the low-degree spherical polynomials in scope.
class SphereGrid {
 public:
  SphereGrid(int ntheta, int nphi);

  int ntheta() const { return ntheta_; }
  int nphi() const { return nphi_; }
  int size() const { return ntheta_ * nphi_; }
  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  double phi(int j) const { return phi_[static_cast<std::size_t>(j)]; }
  /// quadrature weight of node (i, j); includes the sin(theta) measure.
  double weight(int i) const { return wtheta_[static_cast<std::size_t>(i)] * wphi_; }
  const std::vector<double>& thetas() const { return theta_; }

  friend bool operator==(const SphereGrid& a, const SphereGrid& b) {
    return a.ntheta_ == b.ntheta_ && a.nphi_ == b.nphi_;
  }

 private:
  int ntheta_;
  int nphi_;
  std::vector<double> theta_;   // ascending, poles excluded
  std::vector<double> wtheta_;  // GL weights in cos(theta)
  std::vector<double> phi_;
  double wphi_;
};

/// Spinor field sampled on a SphereGrid; immutable size, node-major storage
/// (theta outer, phi inner), 4 components per node.
struct SphereField {
  std::shared_ptr<const SphereGrid> grid;
  std::vector<complex> values;  // size 4 * grid->size()

  explicit SphereField(std::shared_ptr<const SphereGrid> g);

  complex& at(int itheta, int iphi, int comp);
  const complex& at(int itheta, int iphi, int comp) const;
  Spinor4 spinor(int itheta, int iphi) const;
  void set_spinor(int itheta, int iphi, const Spinor4& s);
};

/// Associated Legendre function P_l^m(x) with the Condon-Shortley phase
/// ((-1)^m for m >= 0); negative m via the standard factorial relation.
/// Throws for |m| > l or |x| > 1.
double legendre(int l, int m, double x);

/// Orthonormal spherical harmonic Y_l^m(theta, phi), -l <= m <= l.
complex sph_harm(int l, int m, double theta, double phi);

/// Two-spinor angular functions: psi_pair(idx) evaluates the pair
/// (upper for sign +, lower for sign -) entering the four-spinor basis.
enum class Sign { plus, minus };
Sign flip(Sign s);

/// Four-spinor partial-wave basis function at (theta, phi).
/// Upper two components vanish for sign -, lower two for sign +; the upper
/// block carries a factor i.
Spinor4 spinor_harmonic(Sign sign, const AngularIndex& idx, double theta, double phi);

/// Samples a basis function on a grid.
SphereField sample_basis(Sign sign, const AngularIndex& idx,
                         std::shared_ptr<const SphereGrid> grid);

/// Quadrature approximation of the L^2(S^2)^4 inner product (sesquilinear
/// in the first argument). Throws on grid mismatch.
complex inner_s2(const SphereField& u, const SphereField& v);
double norm_s2(const SphereField& u);

enum class AngularOp { L2, J2, K, SdotL, J3 };

/// Applies an angular operator: exact spectral differentiation in phi
/// (requires nphi a power of two), second-order centered differences in
/// theta with pole-crossing ghosts; refuses grids with ntheta < 16.
SphereField apply_angular_op(AngularOp op, const SphereField& field);

/// Image of i(alpha.xhat) acting on a basis function: (flipped sign, -+1),
/// i.e. i(alpha.xhat) Phi^+- = -+ Phi^-+.
struct RadialAction {
  Sign sign;
  double scalar;
};
RadialAction alpha_radial_action(Sign sign, const AngularIndex& idx);

/// CSV table of a basis function: theta, phi, Re/Im of the 4 components.
std::string basis_table_csv(Sign sign, const AngularIndex& idx, const SphereGrid& grid);

}  // namespace pwdirac
