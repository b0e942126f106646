#include "pwdirac/oracle3d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pwdirac/evolution.hpp"
#include "pwdirac/fft.hpp"

namespace pwdirac {

namespace {
constexpr complex I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

CartesianSpinorField::CartesianSpinorField(int n, double L) : n_(n), L_(L) {
  if (!is_power_of_two(n)) throw std::invalid_argument("CartesianSpinorField: n must be a power of two");
  if (L <= 0.0) throw std::invalid_argument("CartesianSpinorField: L must be positive");
  values_.assign(4ull * n * n * n, complex{});
}

complex& CartesianSpinorField::at(int comp, int ix, int iy, int iz) {
  const std::size_t nn = static_cast<std::size_t>(n_);
  return values_[(static_cast<std::size_t>(comp) * nn * nn * nn) +
                 (static_cast<std::size_t>(ix) * nn + static_cast<std::size_t>(iy)) * nn +
                 static_cast<std::size_t>(iz)];
}
const complex& CartesianSpinorField::at(int comp, int ix, int iy, int iz) const {
  return const_cast<CartesianSpinorField*>(this)->at(comp, ix, iy, iz);
}
complex* CartesianSpinorField::component(int comp) {
  return values_.data() + static_cast<std::size_t>(comp) * n_ * n_ * n_;
}
const complex* CartesianSpinorField::component(int comp) const {
  return values_.data() + static_cast<std::size_t>(comp) * n_ * n_ * n_;
}

void CartesianSpinorField::sample(const std::function<Spinor4(double, double, double)>& f) {
  for (int ix = 0; ix < n_; ++ix)
    for (int iy = 0; iy < n_; ++iy)
      for (int iz = 0; iz < n_; ++iz) {
        const Spinor4 s = f(coord(ix), coord(iy), coord(iz));
        for (int c = 0; c < 4; ++c) at(c, ix, iy, iz) = s[c];
      }
}

double CartesianSpinorField::l2_norm() const {
  double acc = 0.0;
  for (const auto& v : values_) acc += std::norm(v);
  const double d = dx();
  return std::sqrt(d * d * d * acc);
}

CartesianSpinorField& CartesianSpinorField::operator-=(const CartesianSpinorField& o) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

double CartesianSpinorField::boundary_mass_fraction() const {
  double tail = 0.0, total = 0.0;
  const double edge = 0.9 * L_;
  for (int ix = 0; ix < n_; ++ix)
    for (int iy = 0; iy < n_; ++iy)
      for (int iz = 0; iz < n_; ++iz) {
        double m = 0.0;
        for (int c = 0; c < 4; ++c) m += std::norm(at(c, ix, iy, iz));
        total += m;
        if (std::abs(coord(ix)) > edge || std::abs(coord(iy)) > edge || std::abs(coord(iz)) > edge)
          tail += m;
      }
  return total > 0.0 ? tail / total : 0.0;
}

namespace {

/// Frequency of index i on an n-point periodic axis of length 2L.
inline double freq(int i, int n, double L) {
  const int k = (i <= n / 2) ? i : i - n;
  return pi / L * k;
}

/// In Fourier space applies, mode by mode, one of the free-flow multipliers.
/// mode = 0: full symbol; mode = 1: cos(t|xi|) only; mode = 2:
/// -i sin(t|xi|)/|xi| (alpha.xi) via D then scalars; mode = 3: alpha.xi (D).
void spectral_pass(CartesianSpinorField& f, double t, int mode) {
  const int n = f.n();
  for (int c = 0; c < 4; ++c) fft_3d(f.component(c), n, false);
  const double scale = 1.0 / (static_cast<double>(n) * n * n);
  for (int ix = 0; ix < n; ++ix) {
    const double kx = freq(ix, n, f.L());
    for (int iy = 0; iy < n; ++iy) {
      const double ky = freq(iy, n, f.L());
      for (int iz = 0; iz < n; ++iz) {
        const double kz = freq(iz, n, f.L());
        const double kk = std::sqrt(kx * kx + ky * ky + kz * kz);
        const complex v0 = f.at(0, ix, iy, iz), v1 = f.at(1, ix, iy, iz);
        const complex v2 = f.at(2, ix, iy, iz), v3 = f.at(3, ix, iy, iz);
        // alpha . k in the Dirac representation:
        // (a.k) (v_upper, v_lower) = (sigma.k v_lower, sigma.k v_upper),
        // sigma.k = [[kz, kx - i ky], [kx + i ky, -kz]]
        const complex b = complex{kx, -ky};
        const complex bc = complex{kx, ky};
        const complex w0 = kz * v2 + b * v3;
        const complex w1 = bc * v2 - kz * v3;
        const complex w2 = kz * v0 + b * v1;
        const complex w3 = bc * v0 - kz * v1;
        complex o0, o1, o2, o3;
        switch (mode) {
          case 0: {  // cos(t k) - i sin(t k) (alpha.khat)
            const double ct = std::cos(t * kk);
            const double st = (kk > 0.0) ? std::sin(t * kk) / kk : 0.0;
            o0 = ct * v0 - I * st * w0;
            o1 = ct * v1 - I * st * w1;
            o2 = ct * v2 - I * st * w2;
            o3 = ct * v3 - I * st * w3;
            break;
          }
          case 1: {  // cos(t|D|)
            const double ct = std::cos(t * kk);
            o0 = ct * v0; o1 = ct * v1; o2 = ct * v2; o3 = ct * v3;
            break;
          }
          case 2: {  // -i sin(t|D|)/|D| applied to (alpha.k) f
            const double st = (kk > 0.0) ? std::sin(t * kk) / kk : t;
            o0 = -I * st * w0;
            o1 = -I * st * w1;
            o2 = -I * st * w2;
            o3 = -I * st * w3;
            break;
          }
          case 3: {  // D = alpha . xi
            o0 = w0; o1 = w1; o2 = w2; o3 = w3;
            break;
          }
          case 4: {  // -Laplacian = |xi|^2
            const double k2 = kk * kk;
            o0 = k2 * v0; o1 = k2 * v1; o2 = k2 * v2; o3 = k2 * v3;
            break;
          }
          default:
            throw std::logic_error("spectral_pass: unknown mode");
        }
        f.at(0, ix, iy, iz) = o0 * scale;
        f.at(1, ix, iy, iz) = o1 * scale;
        f.at(2, ix, iy, iz) = o2 * scale;
        f.at(3, ix, iy, iz) = o3 * scale;
      }
    }
  }
  for (int c = 0; c < 4; ++c) fft_3d(f.component(c), n, true);
}

}  // namespace

CartesianSpinorField free_step_symbol(const CartesianSpinorField& field, double t) {
  CartesianSpinorField out = field;
  spectral_pass(out, t, 0);
  return out;
}

CartesianSpinorField free_flow_assembled(const CartesianSpinorField& field, double t) {
  CartesianSpinorField a = field;
  spectral_pass(a, t, 1);
  CartesianSpinorField b = field;
  spectral_pass(b, t, 2);
  for (int c = 0; c < 4; ++c) {
    complex* pa = a.component(c);
    const complex* pb = b.component(c);
    const std::size_t nn = static_cast<std::size_t>(field.n());
    for (std::size_t i = 0; i < nn * nn * nn; ++i) pa[i] += pb[i];
  }
  return a;
}

CartesianSpinorField apply_dirac(const CartesianSpinorField& field) {
  CartesianSpinorField out = field;
  spectral_pass(out, 0.0, 3);
  return out;
}

double dsquared_residual(const CartesianSpinorField& field) {
  CartesianSpinorField ddf = apply_dirac(apply_dirac(field));
  CartesianSpinorField lap = field;
  spectral_pass(lap, 0.0, 4);  // -Laplacian
  const double den = lap.l2_norm();
  if (den == 0.0) return 0.0;
  // D(Df) + Lap f = D(Df) - (-Lap f)
  ddf -= lap;
  return ddf.l2_norm() / den;
}

namespace {

/// Cubic Lagrange interpolation of a radial grid profile at radius r >= 0,
/// odd extension through r = 0 and zero beyond the last node.
class RingInterp {
 public:
  RingInterp(const RadialGrid& g, const std::vector<complex>& u) : h_(g.h()), u_(u) {}

  complex operator()(double r) const {
    const int N = static_cast<int>(u_.size());
    const double x = r / h_ - 0.5;
    const int i1 = static_cast<int>(std::floor(x));
    const double t = x - i1;
    auto val = [&](int i) -> complex {
      if (i >= 0) return (i < N) ? u_[static_cast<std::size_t>(i)] : complex{};
      const int ref = -1 - i;  // node mirrored through r = 0
      return (ref < N) ? -u_[static_cast<std::size_t>(ref)] : complex{};
    };
    const complex f_1 = val(i1 - 1), f0 = val(i1), f1 = val(i1 + 1), f2 = val(i1 + 2);
    return (-t * (t - 1.0) * (t - 2.0) / 6.0) * f_1 + ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) * f0 +
           (-(t + 1.0) * t * (t - 2.0) / 2.0) * f1 + ((t + 1.0) * t * (t - 1.0) / 6.0) * f2;
  }

 private:
  double h_;
  const std::vector<complex>& u_;
};

CartesianSpinorField build_box(const AngularIndex& idx,
                               const std::function<complex(double)>& up,
                               const std::function<complex(double)>& um, int n, double L) {
  CartesianSpinorField f(n, L);
  for (int ix = 0; ix < n; ++ix) {
    const double x = f.coord(ix);
    for (int iy = 0; iy < n; ++iy) {
      const double y = f.coord(iy);
      for (int iz = 0; iz < n; ++iz) {
        const double z = f.coord(iz);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < 1e-12) continue;  // profiles vanish at the origin
        const double theta = std::acos(std::clamp(z / r, -1.0, 1.0));
        const double phi = std::atan2(y, x);
        const complex cp = up ? up(r) / r : complex{};
        const complex cm = um ? um(r) / r : complex{};
        Spinor4 s;
        if (cp != complex{}) s += cp * spinor_harmonic(Sign::plus, idx, theta, phi);
        if (cm != complex{}) s += cm * spinor_harmonic(Sign::minus, idx, theta, phi);
        for (int c = 0; c < 4; ++c) f.at(c, ix, iy, iz) = s[c];
      }
    }
  }
  return f;
}

}  // namespace

CartesianSpinorField reconstruct_box(const RadialPair& state, int n, double L) {
  RingInterp up(state.grid, state.uplus);
  RingInterp um(state.grid, state.uminus);
  return build_box(state.idx, [&](double r) { return up(r); }, [&](double r) { return um(r); }, n,
                   L);
}

CartesianSpinorField reconstruct_box_analytic(const AngularIndex& idx,
                                              const std::function<complex(double)>& uplus,
                                              const std::function<complex(double)>& uminus,
                                              int n, double L) {
  return build_box(idx, uplus, uminus, n, L);
}

namespace {

/// Catmull-Rom weight for offset t in [0,1), nodes -1..2.
inline void catmull_weights(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace

ProductField sample_product(const CartesianSpinorField& field, const RadialGrid& rgrid,
                            std::shared_ptr<const SphereGrid> sgrid) {
  ProductField out(rgrid, sgrid);
  const int n = field.n();
  const double dx = field.dx();
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  const int nth = sgrid->ntheta();
  const int nph = sgrid->nphi();
  for (int ir = 0; ir < rgrid.N; ++ir) {
    const double r = rgrid.r(ir);
    for (int it = 0; it < nth; ++it) {
      const double st = std::sin(sgrid->theta(it)), ct = std::cos(sgrid->theta(it));
      for (int ip = 0; ip < nph; ++ip) {
        const double x = r * st * std::cos(sgrid->phi(ip));
        const double y = r * st * std::sin(sgrid->phi(ip));
        const double z = r * ct;
        // fractional grid coordinates
        const double fx = x / dx + n / 2.0, fy = y / dx + n / 2.0, fz = z / dx + n / 2.0;
        const int bx = static_cast<int>(std::floor(fx));
        const int by = static_cast<int>(std::floor(fy));
        const int bz = static_cast<int>(std::floor(fz));
        double wx[4], wy[4], wz[4];
        catmull_weights(fx - bx, wx);
        catmull_weights(fy - by, wy);
        catmull_weights(fz - bz, wz);
        Spinor4 s;
        for (int a = 0; a < 4; ++a) {
          const int ix = wrap(bx - 1 + a);
          for (int b = 0; b < 4; ++b) {
            const int iy = wrap(by - 1 + b);
            const double wab = wx[a] * wy[b];
            for (int c = 0; c < 4; ++c) {
              const int iz = wrap(bz - 1 + c);
              const double w = wab * wz[c];
              for (int comp = 0; comp < 4; ++comp)
                s[comp] += w * field.at(comp, ix, iy, iz);
            }
          }
        }
        out.set_spinor(ir, it * nph + ip, s);
      }
    }
  }
  return out;
}

std::string OracleCompareReport::to_json() const {
  std::ostringstream os;
  os << "{\"discrepancy\":" << discrepancy << ",\"rel_discrepancy\":" << rel_discrepancy
     << ",\"offspace_initial\":" << offspace_initial << ",\"offspace_final\":" << offspace_final
     << ",\"boundary_mass\":" << boundary_mass
     << ",\"boundary_warning\":" << (boundary_warning ? "true" : "false") << "}";
  return os.str();
}

OracleCompareReport oracle_compare(const RadialPair& state, double t, int steps, int n, double L) {
  OracleCompareReport rep;

  CartesianSpinorField f0 = reconstruct_box(state, n, L);
  CartesianSpinorField f1 = free_step_symbol(f0, t);

  TimeGrid tg(t, steps);
  Trajectory traj = linear_evolve(state, nullptr, tg);
  const RadialPair& uT = traj.states.back();

  CartesianSpinorField g = reconstruct_box(uT, n, L);
  const double nrm = f1.l2_norm();
  g -= f1;
  rep.discrepancy = g.l2_norm();
  rep.rel_discrepancy = nrm > 0.0 ? rep.discrepancy / nrm : 0.0;

  // off-channel diagnostics on a product grid matched to the data support
  const RadialGrid prg(0.95 * L, std::max(32, state.grid.N / 2));
  auto sg = default_product_sphere();
  {
    ProductField p0 = sample_product(f0, prg, sg);
    const double n0 = p0.l2_norm();
    if (n0 > 0.0) rep.offspace_initial = project(p0, state.idx).offspace_residual / n0;
    ProductField p1 = sample_product(f1, prg, sg);
    const double n1 = p1.l2_norm();
    if (n1 > 0.0) rep.offspace_final = project(p1, state.idx).offspace_residual / n1;
  }

  rep.boundary_mass = f1.boundary_mass_fraction();
  rep.boundary_warning = rep.boundary_mass > 1e-8;
  return rep;
}

}  // namespace pwdirac
