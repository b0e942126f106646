#include "pwdirac/angular.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pwdirac/fft.hpp"
#include "pwdirac/quadrature.hpp"

namespace pwdirac {

namespace {
constexpr complex I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
}  // namespace

AngularIndex::AngularIndex(int two_j_, int two_mj_, int kj_)
    : two_j(two_j_), two_mj(two_mj_), kj(kj_) {
  if (two_j < 1 || two_j % 2 == 0)
    throw std::invalid_argument("AngularIndex: j must be a positive half-integer");
  if (std::abs(two_mj) > two_j || ((two_mj - two_j) % 2) != 0)
    throw std::invalid_argument("AngularIndex: m_j must lie in {-j..j} with integer offset");
  if (std::abs(kj) * 2 != two_j + 1)
    throw std::invalid_argument("AngularIndex: k_j must equal +-(j + 1/2)");
}

AngularIndex AngularIndex::from_doubles(double j, double mj, double kj) {
  const int two_j = static_cast<int>(std::lround(2.0 * j));
  const int two_mj = static_cast<int>(std::lround(2.0 * mj));
  const int k = static_cast<int>(std::lround(kj));
  if (std::abs(2.0 * j - two_j) > 1e-9 || std::abs(2.0 * mj - two_mj) > 1e-9 ||
      std::abs(kj - k) > 1e-9)
    throw std::invalid_argument("AngularIndex: non half-integer arguments");
  return AngularIndex(two_j, two_mj, k);
}

std::string AngularIndex::label() const {
  std::ostringstream os;
  os << two_j << "/2," << two_mj << "/2," << kj;
  return os.str();
}

std::vector<AngularIndex> half_channels() {
  return {AngularIndex(1, -1, -1), AngularIndex(1, -1, 1), AngularIndex(1, 1, -1),
          AngularIndex(1, 1, 1)};
}

SphereGrid::SphereGrid(int ntheta, int nphi) : ntheta_(ntheta), nphi_(nphi) {
  if (ntheta < 2 || nphi < 2) throw std::invalid_argument("SphereGrid: grid too small");
  GaussLegendre gl(ntheta);
  theta_.resize(static_cast<std::size_t>(ntheta));
  wtheta_.resize(static_cast<std::size_t>(ntheta));
  for (int i = 0; i < ntheta; ++i) {
    // nodes ascend in x = cos(theta); store theta ascending instead
    theta_[static_cast<std::size_t>(i)] = std::acos(gl.nodes[static_cast<std::size_t>(ntheta - 1 - i)]);
    wtheta_[static_cast<std::size_t>(i)] = gl.weights[static_cast<std::size_t>(ntheta - 1 - i)];
  }
  phi_.resize(static_cast<std::size_t>(nphi));
  for (int j = 0; j < nphi; ++j) phi_[static_cast<std::size_t>(j)] = 2.0 * pi * j / nphi;
  wphi_ = 2.0 * pi / nphi;
}

SphereField::SphereField(std::shared_ptr<const SphereGrid> g)
    : grid(std::move(g)), values(static_cast<std::size_t>(4 * grid->size())) {}

complex& SphereField::at(int itheta, int iphi, int comp) {
  return values[static_cast<std::size_t>(((itheta * grid->nphi()) + iphi) * 4 + comp)];
}
const complex& SphereField::at(int itheta, int iphi, int comp) const {
  return values[static_cast<std::size_t>(((itheta * grid->nphi()) + iphi) * 4 + comp)];
}
Spinor4 SphereField::spinor(int itheta, int iphi) const {
  Spinor4 s;
  for (int c = 0; c < 4; ++c) s[c] = at(itheta, iphi, c);
  return s;
}
void SphereField::set_spinor(int itheta, int iphi, const Spinor4& s) {
  for (int c = 0; c < 4; ++c) at(itheta, iphi, c) = s[c];
}

double legendre(int l, int m, double x) {
  if (l < 0) throw std::invalid_argument("legendre: l must be >= 0");
  if (std::abs(m) > l) throw std::invalid_argument("legendre: |m| must be <= l");
  if (std::abs(x) > 1.0) throw std::invalid_argument("legendre: |x| must be <= 1");
  if (m < 0) {
    // P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m   (with m > 0 on the right)
    const int ma = -m;
    double fac = 1.0;
    for (int t = l - ma + 1; t <= l + ma; ++t) fac *= t;
    const double sgn = (ma % 2 == 0) ? 1.0 : -1.0;
    return sgn / fac * legendre(l, ma, x);
  }
  // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then upward recurrence in l
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

complex sph_harm(int l, int m, double theta, double phi) {
  if (std::abs(m) > l) throw std::invalid_argument("sph_harm: |m| must be <= l");
  // sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) with signed m
  double ratio = 1.0;
  if (m >= 0) {
    for (int t = l - m + 1; t <= l + m; ++t) ratio /= t;
  } else {
    for (int t = l + m + 1; t <= l - m; ++t) ratio *= t;
  }
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * pi) * ratio);
  return norm * std::polar(1.0, m * phi) * legendre(l, m, std::cos(theta));
}

Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

namespace {

/// Two-spinor psi with orbital label l = j -+ 1/2 at (theta, phi).
std::array<complex, 2> psi_two_spinor(const AngularIndex& idx, int l, double theta, double phi) {
  const int two_j = idx.two_j;
  const int two_mj = idx.two_mj;
  const int m_up = (two_mj - 1) / 2;
  const int m_dn = (two_mj + 1) / 2;
  std::array<complex, 2> out{complex{0.0, 0.0}, complex{0.0, 0.0}};
  if (2 * l == two_j - 1) {
    const double c = 1.0 / std::sqrt(static_cast<double>(two_j));
    const double a = std::sqrt(0.5 * (two_j + two_mj));  // sqrt(j + m_j)
    const double b = std::sqrt(0.5 * (two_j - two_mj));  // sqrt(j - m_j)
    if (a != 0.0) out[0] = c * a * sph_harm(l, m_up, theta, phi);
    if (b != 0.0) out[1] = c * b * sph_harm(l, m_dn, theta, phi);
  } else if (2 * l == two_j + 1) {
    const double c = 1.0 / std::sqrt(static_cast<double>(two_j) + 2.0);
    const double a = std::sqrt(0.5 * (two_j + 2 - two_mj));  // sqrt(j + 1 - m_j)
    const double b = std::sqrt(0.5 * (two_j + 2 + two_mj));  // sqrt(j + 1 + m_j)
    if (a != 0.0) out[0] = c * a * sph_harm(l, m_up, theta, phi);
    if (b != 0.0) out[1] = -c * b * sph_harm(l, m_dn, theta, phi);
  } else {
    throw std::invalid_argument("psi_two_spinor: l must be j -+ 1/2");
  }
  return out;
}

int orbital_l(Sign sign, const AngularIndex& idx) {
  // sign +, k_j = -(j+1/2): l = j - 1/2 ; sign +, k_j = +(j+1/2): l = j + 1/2.
  // sign - takes the complementary label.
  const bool lower_l = (sign == Sign::plus) == (idx.kj < 0);
  return lower_l ? (idx.two_j - 1) / 2 : (idx.two_j + 1) / 2;
}

}  // namespace

Spinor4 spinor_harmonic(Sign sign, const AngularIndex& idx, double theta, double phi) {
  const int l = orbital_l(sign, idx);
  const auto psi = psi_two_spinor(idx, l, theta, phi);
  Spinor4 s;
  if (sign == Sign::plus) {
    s[0] = I * psi[0];
    s[1] = I * psi[1];
  } else {
    s[2] = psi[0];
    s[3] = psi[1];
  }
  return s;
}

SphereField sample_basis(Sign sign, const AngularIndex& idx,
                         std::shared_ptr<const SphereGrid> grid) {
  SphereField f(grid);
  for (int i = 0; i < grid->ntheta(); ++i)
    for (int j = 0; j < grid->nphi(); ++j)
      f.set_spinor(i, j, spinor_harmonic(sign, idx, grid->theta(i), grid->phi(j)));
  return f;
}

complex inner_s2(const SphereField& u, const SphereField& v) {
  if (!(*u.grid == *v.grid)) throw std::invalid_argument("inner_s2: grid mismatch");
  complex s = 0.0;
  const int nth = u.grid->ntheta();
  const int nph = u.grid->nphi();
  for (int i = 0; i < nth; ++i) {
    const double w = u.grid->weight(i);
    complex row = 0.0;
    for (int j = 0; j < nph; ++j)
      for (int c = 0; c < 4; ++c) row += std::conj(u.at(i, j, c)) * v.at(i, j, c);
    s += w * row;
  }
  return s;
}

double norm_s2(const SphereField& u) { return std::sqrt(std::abs(inner_s2(u, u))); }

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// First derivative in theta of a mode-m profile on the (nonuniform) open
/// theta grid, with pole-crossing ghosts f(-theta) = (-1)^m f(theta).
void dtheta_mode(const std::vector<double>& th, const std::vector<complex>& f, int m,
                 std::vector<complex>& out) {
  const int n = static_cast<int>(th.size());
  const double sgn = (((m % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
  out.resize(static_cast<std::size_t>(n));
  auto the = [&](int i) -> double {
    if (i < 0) return -th[0];
    if (i >= n) return 2.0 * pi - th[static_cast<std::size_t>(n - 1)];
    return th[static_cast<std::size_t>(i)];
  };
  auto fe = [&](int i) -> complex {
    if (i < 0) return sgn * f[0];
    if (i >= n) return sgn * f[static_cast<std::size_t>(n - 1)];
    return f[static_cast<std::size_t>(i)];
  };
  for (int i = 0; i < n; ++i) {
    const double hm = the(i) - the(i - 1);
    const double hp = the(i + 1) - the(i);
    out[static_cast<std::size_t>(i)] =
        (fe(i + 1) * (hm * hm) - fe(i - 1) * (hp * hp) + fe(i) * (hp * hp - hm * hm)) /
        (hm * hp * (hm + hp));
  }
}

struct ModeField {
  // coefficients[comp][mode index j][theta i]; mode m = j < nphi/2 ? j : j - nphi
  int ntheta = 0, nphi = 0;
  std::array<std::vector<complex>, 4> comp;

  complex& at(int c, int j, int i) {
    return comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(j * ntheta + i)];
  }
  const complex& at(int c, int j, int i) const {
    return comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(j * ntheta + i)];
  }
};

int mode_of(int j, int nphi) { return j < nphi / 2 ? j : j - nphi; }

ModeField to_modes(const SphereField& f) {
  const int nth = f.grid->ntheta();
  const int nph = f.grid->nphi();
  ModeField mf;
  mf.ntheta = nth;
  mf.nphi = nph;
  std::vector<complex> ring(static_cast<std::size_t>(nph));
  for (int c = 0; c < 4; ++c) {
    mf.comp[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(nth * nph), complex{});
    for (int i = 0; i < nth; ++i) {
      for (int j = 0; j < nph; ++j) ring[static_cast<std::size_t>(j)] = f.at(i, j, c);
      fft_1d(ring.data(), nph, false);
      for (int j = 0; j < nph; ++j)
        mf.at(c, j, i) = ring[static_cast<std::size_t>(j)] / static_cast<double>(nph);
    }
  }
  return mf;
}

SphereField from_modes(const ModeField& mf, std::shared_ptr<const SphereGrid> grid) {
  SphereField f(grid);
  const int nth = mf.ntheta;
  const int nph = mf.nphi;
  std::vector<complex> ring(static_cast<std::size_t>(nph));
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < nth; ++i) {
      for (int j = 0; j < nph; ++j) ring[static_cast<std::size_t>(j)] = mf.at(c, j, i);
      fft_1d(ring.data(), nph, true);
      for (int j = 0; j < nph; ++j) f.at(i, j, c) = ring[static_cast<std::size_t>(j)];
    }
  return f;
}

/// S.L in mode space: S3 L3 + (S+ L- + S- L+)/2.
ModeField sdotl_modes(const ModeField& in, const std::vector<double>& th) {
  const int nth = in.ntheta;
  const int nph = in.nphi;
  std::vector<double> ctg(static_cast<std::size_t>(nth));
  for (int i = 0; i < nth; ++i)
    ctg[static_cast<std::size_t>(i)] = std::cos(th[static_cast<std::size_t>(i)]) /
                                       std::sin(th[static_cast<std::size_t>(i)]);
  ModeField out;
  out.ntheta = nth;
  out.nphi = nph;
  for (auto& v : out.comp) v.assign(static_cast<std::size_t>(nth * nph), complex{});

  static const double s3[4] = {0.5, -0.5, 0.5, -0.5};
  std::vector<complex> prof(static_cast<std::size_t>(nth)), dth;
  for (int c = 0; c < 4; ++c) {
    for (int j = 0; j < nph; ++j) {
      const int m = mode_of(j, nph);
      for (int i = 0; i < nth; ++i) prof[static_cast<std::size_t>(i)] = in.at(c, j, i);
      dtheta_mode(th, prof, m, dth);
      // L3 (diagonal in modes)
      for (int i = 0; i < nth; ++i)
        out.at(c, j, i) += s3[c] * static_cast<double>(m) * prof[static_cast<std::size_t>(i)];
      // L+ -> mode m+1 ; L- -> mode m-1
      const int jp = ((j + 1) % nph);
      const int jm = ((j - 1) % nph + nph) % nph;
      const bool p_ok = mode_of(jp, nph) == m + 1;
      const bool m_ok = mode_of(jm, nph) == m - 1;
      // S+ L-: rows 0 and 2 receive L- of components 1 and 3
      // S- L+: rows 1 and 3 receive L+ of components 0 and 2
      if ((c == 1 || c == 3) && m_ok) {
        for (int i = 0; i < nth; ++i) {
          const complex lm = -dth[static_cast<std::size_t>(i)] -
                             static_cast<double>(m) * ctg[static_cast<std::size_t>(i)] *
                                 prof[static_cast<std::size_t>(i)];
          out.at(c - 1, jm, i) += 0.5 * lm;
        }
      }
      if ((c == 0 || c == 2) && p_ok) {
        for (int i = 0; i < nth; ++i) {
          const complex lp = dth[static_cast<std::size_t>(i)] -
                             static_cast<double>(m) * ctg[static_cast<std::size_t>(i)] *
                                 prof[static_cast<std::size_t>(i)];
          out.at(c + 1, jp, i) += 0.5 * lp;
        }
      }
    }
  }
  return out;
}

/// L^2 in mode space, componentwise: -[ (1/s) d/dth (s d/dth) - m^2/s^2 ].
/// Built as a composition of two first-derivative applications.
ModeField l2_modes(const ModeField& in, const std::vector<double>& th) {
  const int nth = in.ntheta;
  const int nph = in.nphi;
  std::vector<double> sth(static_cast<std::size_t>(nth));
  for (int i = 0; i < nth; ++i)
    sth[static_cast<std::size_t>(i)] = std::sin(th[static_cast<std::size_t>(i)]);
  ModeField out;
  out.ntheta = nth;
  out.nphi = nph;
  for (auto& v : out.comp) v.assign(static_cast<std::size_t>(nth * nph), complex{});
  std::vector<complex> prof(static_cast<std::size_t>(nth)), d1, w(static_cast<std::size_t>(nth)), d2;
  for (int c = 0; c < 4; ++c)
    for (int j = 0; j < nph; ++j) {
      const int m = mode_of(j, nph);
      for (int i = 0; i < nth; ++i) prof[static_cast<std::size_t>(i)] = in.at(c, j, i);
      dtheta_mode(th, prof, m, d1);
      for (int i = 0; i < nth; ++i)
        w[static_cast<std::size_t>(i)] = sth[static_cast<std::size_t>(i)] * d1[static_cast<std::size_t>(i)];
      // sin(theta) * d/dth of a mode-m profile keeps the (-1)^m pole parity
      dtheta_mode(th, w, m, d2);
      for (int i = 0; i < nth; ++i) {
        const double s = sth[static_cast<std::size_t>(i)];
        out.at(c, j, i) = -(d2[static_cast<std::size_t>(i)] / s -
                            static_cast<double>(m) * static_cast<double>(m) / (s * s) *
                                prof[static_cast<std::size_t>(i)]);
      }
    }
  return out;
}

void axpy(ModeField& y, complex a, const ModeField& x) {
  for (int c = 0; c < 4; ++c)
    for (std::size_t t = 0; t < y.comp[static_cast<std::size_t>(c)].size(); ++t)
      y.comp[static_cast<std::size_t>(c)][t] += a * x.comp[static_cast<std::size_t>(c)][t];
}

void beta_in_place(ModeField& f) {
  for (int c = 2; c < 4; ++c)
    for (auto& v : f.comp[static_cast<std::size_t>(c)]) v = -v;
}

}  // namespace

SphereField apply_angular_op(AngularOp op, const SphereField& field) {
  const auto& grid = *field.grid;
  if (!is_power_of_two(grid.nphi()))
    throw std::invalid_argument("apply_angular_op: nphi must be a power of two");
  if (grid.ntheta() < 16)
    throw std::invalid_argument("apply_angular_op: theta grid too coarse (ntheta >= 16 required)");

  ModeField in = to_modes(field);
  const auto& th = grid.thetas();
  ModeField out;

  switch (op) {
    case AngularOp::SdotL:
      out = sdotl_modes(in, th);
      break;
    case AngularOp::L2:
      out = l2_modes(in, th);
      break;
    case AngularOp::J2: {
      out = l2_modes(in, th);
      ModeField sl = sdotl_modes(in, th);
      axpy(out, 2.0, sl);
      axpy(out, 0.75, in);
      break;
    }
    case AngularOp::K: {
      out = sdotl_modes(in, th);
      for (auto& v : out.comp)
        for (auto& x : v) x *= 2.0;
      axpy(out, 1.0, in);
      beta_in_place(out);
      break;
    }
    case AngularOp::J3: {
      // L3 + S3: both diagonal in modes
      out = in;
      static const double s3[4] = {0.5, -0.5, 0.5, -0.5};
      for (int c = 0; c < 4; ++c)
        for (int j = 0; j < in.nphi; ++j) {
          const double mult = mode_of(j, in.nphi) + s3[c];
          for (int i = 0; i < in.ntheta; ++i) out.at(c, j, i) = mult * in.at(c, j, i);
        }
      break;
    }
  }
  return from_modes(out, field.grid);
}

RadialAction alpha_radial_action(Sign sign, const AngularIndex&) {
  // i(alpha.xhat) Phi^+ = -Phi^- ; i(alpha.xhat) Phi^- = +Phi^+
  if (sign == Sign::plus) return {Sign::minus, -1.0};
  return {Sign::plus, +1.0};
}

std::string basis_table_csv(Sign sign, const AngularIndex& idx, const SphereGrid& grid) {
  std::ostringstream os;
  os << "theta,phi,re0,im0,re1,im1,re2,im2,re3,im3\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
    os << buf;
  };
  for (int i = 0; i < grid.ntheta(); ++i)
    for (int j = 0; j < grid.nphi(); ++j) {
      const Spinor4 s = spinor_harmonic(sign, idx, grid.theta(i), grid.phi(j));
      put(grid.theta(i), ',');
      put(grid.phi(j), ',');
      for (int c = 0; c < 4; ++c) {
        put(s[c].real(), ',');
        put(s[c].imag(), c == 3 ? '\n' : ',');
      }
    }
  return os.str();
}

}  // namespace pwdirac
