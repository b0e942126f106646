#pragma once

#include <functional>
#include <string>

#include "pwdirac/radial.hpp"

namespace pwdirac {

/// Spinor field on a periodic Cartesian box [-L, L)^3 with n points per axis
/// (n a power of two). Component-major storage so each component is one
/// contiguous n^3 cube for the FFT.
class CartesianSpinorField {
 public:
  CartesianSpinorField(int n, double L);

  int n() const { return n_; }
  double L() const { return L_; }
  double dx() const { return 2.0 * L_ / n_; }
  double coord(int i) const { return (i - n_ / 2) * dx(); }

  complex& at(int comp, int ix, int iy, int iz);
  const complex& at(int comp, int ix, int iy, int iz) const;
  complex* component(int comp);
  const complex* component(int comp) const;

  void sample(const std::function<Spinor4(double, double, double)>& f);

  double l2_norm() const;  // sqrt(dx^3 sum |f|^2)
  CartesianSpinorField& operator-=(const CartesianSpinorField& o);

  /// squared-mass fraction in the frame |x|_inf > 0.9 L.
  double boundary_mass_fraction() const;

 private:
  int n_;
  double L_;
  std::vector<complex> values_;  // comp * n^3 + linear index
};

/// Applies the free propagator of i du/dt = D u over time t, frequency by
/// frequency: multiplier cos(t|xi|) - i sin(t|xi|) (alpha . xihat); the
/// xi = 0 mode is multiplied by the identity. Exactly unitary.
CartesianSpinorField free_step_symbol(const CartesianSpinorField& field, double t);

/// Same flow assembled as cos(t|D|) f - i (sin(t|D|)/|D|) D f via separate
/// scalar multipliers; agrees with free_step_symbol to roundoff.
CartesianSpinorField free_flow_assembled(const CartesianSpinorField& field, double t);

/// Spectral application of D = -i alpha . grad.
CartesianSpinorField apply_dirac(const CartesianSpinorField& field);

/// || D(Df) + Laplacian f || / || Laplacian f ||, both spectral; validates
/// the second-order identity D^2 = -Laplacian I4. Returns 0 for zero fields.
double dsquared_residual(const CartesianSpinorField& field);

/// Reconstructs a channel state onto the box. The grid variant interpolates
/// the profiles with cubic Lagrange stencils (odd extension through r = 0,
/// zero beyond R); the analytic variant evaluates exact profiles.
CartesianSpinorField reconstruct_box(const RadialPair& state, int n, double L);
CartesianSpinorField reconstruct_box_analytic(const AngularIndex& idx,
                                              const std::function<complex(double)>& uplus,
                                              const std::function<complex(double)>& uminus,
                                              int n, double L);

/// Samples the box field on a product grid via tricubic (Catmull-Rom)
/// interpolation, for projections onto partial-wave channels.
ProductField sample_product(const CartesianSpinorField& field, const RadialGrid& rgrid,
                            std::shared_ptr<const SphereGrid> sgrid);

struct OracleCompareReport {
  double discrepancy = 0.0;      // || box(radial result) - 3d result ||_{L^2(box)}
  double rel_discrepancy = 0.0;  // discrepancy / || 3d result ||
  double offspace_initial = 0.0; // off-channel residual of the sampled data
  double offspace_final = 0.0;   // off-channel residual after 3d evolution
  double boundary_mass = 0.0;
  bool boundary_warning = false;
  std::string to_json() const;
};

/// Evolves reconstruct(state) with the spectral symbol to time t and the
/// channel state with `steps` Cayley steps (V = 0), then compares on the
/// box. Off-channel residuals are measured by product-grid projection.
OracleCompareReport oracle_compare(const RadialPair& state, double t, int steps, int n, double L);

}  // namespace pwdirac
