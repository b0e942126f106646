#include "pwdirac/radial.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pwdirac {

RadialGrid::RadialGrid(double R_, int N_) : R(R_), N(N_) {
  if (R <= 0.0 || N < 2) throw std::invalid_argument("RadialGrid: need R > 0 and N >= 2");
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) r[static_cast<std::size_t>(i)] = this->r(i);
  return r;
}

RadialPair::RadialPair(const AngularIndex& idx_, const RadialGrid& grid_)
    : idx(idx_), grid(grid_),
      uplus(static_cast<std::size_t>(grid_.N)),
      uminus(static_cast<std::size_t>(grid_.N)) {}

RadialPair RadialPair::from_profiles(const AngularIndex& idx, const RadialGrid& grid,
                                     const std::function<complex(double)>& up,
                                     const std::function<complex(double)>& um) {
  RadialPair s(idx, grid);
  for (int i = 0; i < grid.N; ++i) {
    const double r = grid.r(i);
    if (up) s.uplus[static_cast<std::size_t>(i)] = up(r);
    if (um) s.uminus[static_cast<std::size_t>(i)] = um(r);
  }
  return s;
}

double RadialPair::l2_norm() const {
  double s = 0.0;
  for (const auto& v : uplus) s += std::norm(v);
  for (const auto& v : uminus) s += std::norm(v);
  return std::sqrt(grid.h() * s);
}

RadialPair& RadialPair::operator+=(const RadialPair& o) {
  for (std::size_t i = 0; i < uplus.size(); ++i) {
    uplus[i] += o.uplus[i];
    uminus[i] += o.uminus[i];
  }
  return *this;
}
RadialPair& RadialPair::operator-=(const RadialPair& o) {
  for (std::size_t i = 0; i < uplus.size(); ++i) {
    uplus[i] -= o.uplus[i];
    uminus[i] -= o.uminus[i];
  }
  return *this;
}
RadialPair& RadialPair::operator*=(complex s) {
  for (auto& v : uplus) v *= s;
  for (auto& v : uminus) v *= s;
  return *this;
}

complex inner(const RadialPair& a, const RadialPair& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner: grid mismatch");
  complex s = 0.0;
  for (std::size_t i = 0; i < a.uplus.size(); ++i)
    s += std::conj(a.uplus[i]) * b.uplus[i] + std::conj(a.uminus[i]) * b.uminus[i];
  return a.grid.h() * s;
}

std::string RadialPair::to_csv() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "# {\"j\":%.1f,\"mj\":%.1f,\"kj\":%d,\"R\":%.17g,\"N\":%d}\n",
                idx.j(), idx.mj(), idx.kj, grid.R, grid.N);
  os << buf << "r,re_uplus,im_uplus,re_uminus,im_uminus\n";
  for (int i = 0; i < grid.N; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.r(i),
                  uplus[static_cast<std::size_t>(i)].real(), uplus[static_cast<std::size_t>(i)].imag(),
                  uminus[static_cast<std::size_t>(i)].real(), uminus[static_cast<std::size_t>(i)].imag());
    os << buf;
  }
  return os.str();
}

RadialPair RadialPair::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# {", 0) != 0)
    throw std::invalid_argument("RadialPair::from_csv: missing JSON header line");
  double j = 0, mj = 0, R = 0;
  int kj = 0, N = 0;
  if (std::sscanf(line.c_str(), "# {\"j\":%lf,\"mj\":%lf,\"kj\":%d,\"R\":%lf,\"N\":%d}", &j, &mj,
                  &kj, &R, &N) != 5)
    throw std::invalid_argument("RadialPair::from_csv: malformed header");
  RadialPair s(AngularIndex::from_doubles(j, mj, kj), RadialGrid(R, N));
  std::getline(is, line);  // column header
  for (int i = 0; i < N; ++i) {
    if (!std::getline(is, line)) throw std::invalid_argument("RadialPair::from_csv: truncated");
    double r, a, b, c, d;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &r, &a, &b, &c, &d) != 5)
      throw std::invalid_argument("RadialPair::from_csv: bad row");
    s.uplus[static_cast<std::size_t>(i)] = complex{a, b};
    s.uminus[static_cast<std::size_t>(i)] = complex{c, d};
  }
  return s;
}

PotentialSpec PotentialSpec::zero(const RadialGrid& grid, double sigma, double delta) {
  PotentialSpec p;
  p.grid = grid;
  p.V1.assign(static_cast<std::size_t>(grid.N), 0.0);
  p.V2.assign(static_cast<std::size_t>(grid.N), 0.0);
  p.sigma = sigma;
  p.delta = delta;
  return p;
}

PotentialSpec PotentialSpec::sampled(const RadialGrid& grid,
                                     const std::function<double(double)>& v1,
                                     const std::function<double(double)>& v2, double sigma,
                                     double delta) {
  PotentialSpec p = zero(grid, sigma, delta);
  for (int i = 0; i < grid.N; ++i) {
    const double r = grid.r(i);
    if (v1) p.V1[static_cast<std::size_t>(i)] = v1(r);
    if (v2) p.V2[static_cast<std::size_t>(i)] = v2(r);
  }
  return p;
}

RadialPair d_apply(const RadialPair& state, const PotentialSpec* pot) {
  const auto& g = state.grid;
  if (pot && !(pot->grid == g)) throw std::invalid_argument("d_apply: grid mismatch");
  const int N = g.N;
  const double inv2h = 1.0 / (2.0 * g.h());
  RadialPair out(state.idx, g);
  const double k = state.idx.kj;
  for (int i = 0; i < N; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const complex up_m = (i > 0) ? state.uplus[s - 1] : complex{};
    const complex up_p = (i + 1 < N) ? state.uplus[s + 1] : complex{};
    const complex um_m = (i > 0) ? state.uminus[s - 1] : complex{};
    const complex um_p = (i + 1 < N) ? state.uminus[s + 1] : complex{};
    const double m = k / g.r(i) + (pot ? pot->V2[s] : 0.0);
    const double v1 = pot ? pot->V1[s] : 0.0;
    out.uplus[s] = v1 * state.uplus[s] - (um_p - um_m) * inv2h + m * state.uminus[s];
    out.uminus[s] = (up_p - up_m) * inv2h + m * state.uplus[s] + v1 * state.uminus[s];
  }
  return out;
}

double reduced_hs_norm(const RadialPair& state, int s) {
  if (s != 0 && s != 1) throw std::invalid_argument("reduced_hs_norm: s must be 0 or 1");
  if (s == 0) return state.l2_norm();
  const int N = state.grid.N;
  const double inv2h = 1.0 / (2.0 * state.grid.h());
  double acc = 0.0;
  auto add = [&](const std::vector<complex>& u) {
    for (int i = 0; i < N; ++i) {
      const complex um = (i > 0) ? u[static_cast<std::size_t>(i - 1)] : complex{};
      const complex up = (i + 1 < N) ? u[static_cast<std::size_t>(i + 1)] : complex{};
      acc += std::norm((up - um) * inv2h);
    }
  };
  add(state.uplus);
  add(state.uminus);
  return std::sqrt(state.grid.h() * acc);
}

double w_sigma(double r, double sigma) { return r * std::pow(1.0 + std::abs(std::log(r)), sigma); }

Admissibility admissibility(const PotentialSpec& pot) {
  Admissibility a;
  for (int i = 0; i < pot.grid.N; ++i) {
    const double r = pot.grid.r(i);
    const double mag = std::abs(pot.V1[static_cast<std::size_t>(i)]) +
                       std::abs(pot.V2[static_cast<std::size_t>(i)]);
    const double decay =
        std::sqrt(r) * std::pow(std::abs(std::log(r)), 0.5 * pot.sigma) + std::pow(r, pot.sigma);
    a.sup_decay = std::max(a.sup_decay, mag * decay);
    a.sup_wsigma = std::max(a.sup_wsigma, mag * w_sigma(r, pot.sigma));
  }
  a.margin = pot.delta - a.sup_decay;
  a.admissible = a.margin >= 0.0;
  return a;
}

ProductField::ProductField(const RadialGrid& rg, std::shared_ptr<const SphereGrid> sg)
    : rgrid(rg), sgrid(std::move(sg)),
      values(static_cast<std::size_t>(rg.N) * static_cast<std::size_t>(sgrid->size()) * 4) {}

complex& ProductField::at(int ir, int iq, int comp) {
  return values[(static_cast<std::size_t>(ir) * static_cast<std::size_t>(sgrid->size()) +
                 static_cast<std::size_t>(iq)) * 4 + static_cast<std::size_t>(comp)];
}
const complex& ProductField::at(int ir, int iq, int comp) const {
  return values[(static_cast<std::size_t>(ir) * static_cast<std::size_t>(sgrid->size()) +
                 static_cast<std::size_t>(iq)) * 4 + static_cast<std::size_t>(comp)];
}
Spinor4 ProductField::spinor(int ir, int iq) const {
  Spinor4 s;
  for (int c = 0; c < 4; ++c) s[c] = at(ir, iq, c);
  return s;
}
void ProductField::set_spinor(int ir, int iq, const Spinor4& s) {
  for (int c = 0; c < 4; ++c) at(ir, iq, c) = s[c];
}

double ProductField::l2_norm() const {
  // int |f|^2 r^2 dr domega, radial midpoint x sphere quadrature
  const int Q = sgrid->size();
  const int nph = sgrid->nphi();
  double acc = 0.0;
  for (int ir = 0; ir < rgrid.N; ++ir) {
    const double r2 = rgrid.r(ir) * rgrid.r(ir);
    double shell = 0.0;
    for (int iq = 0; iq < Q; ++iq) {
      const double w = sgrid->weight(iq / nph);
      double node = 0.0;
      for (int c = 0; c < 4; ++c) node += std::norm(at(ir, iq, c));
      shell += w * node;
    }
    acc += r2 * shell;
  }
  return std::sqrt(rgrid.h() * acc);
}

ProductField& ProductField::operator-=(const ProductField& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

std::shared_ptr<const SphereGrid> default_product_sphere() {
  static const auto grid = std::make_shared<const SphereGrid>(12, 8);
  return grid;
}

ProductField reconstruct(const RadialPair& state, std::shared_ptr<const SphereGrid> sgrid) {
  if (!sgrid) sgrid = default_product_sphere();
  ProductField f(state.grid, sgrid);
  const int nth = sgrid->ntheta();
  const int nph = sgrid->nphi();
  // basis values are r-independent; evaluate once per node
  std::vector<Spinor4> bp(static_cast<std::size_t>(nth * nph)), bm(static_cast<std::size_t>(nth * nph));
  for (int i = 0; i < nth; ++i)
    for (int j = 0; j < nph; ++j) {
      bp[static_cast<std::size_t>(i * nph + j)] =
          spinor_harmonic(Sign::plus, state.idx, sgrid->theta(i), sgrid->phi(j));
      bm[static_cast<std::size_t>(i * nph + j)] =
          spinor_harmonic(Sign::minus, state.idx, sgrid->theta(i), sgrid->phi(j));
    }
  for (int ir = 0; ir < state.grid.N; ++ir) {
    const complex cp = state.uplus[static_cast<std::size_t>(ir)] / state.grid.r(ir);
    const complex cm = state.uminus[static_cast<std::size_t>(ir)] / state.grid.r(ir);
    for (int iq = 0; iq < nth * nph; ++iq) {
      Spinor4 s = cp * bp[static_cast<std::size_t>(iq)] + cm * bm[static_cast<std::size_t>(iq)];
      f.set_spinor(ir, iq, s);
    }
  }
  return f;
}

Projection project(const ProductField& field, const AngularIndex& idx) {
  const auto& sg = *field.sgrid;
  const int nth = sg.ntheta();
  const int nph = sg.nphi();
  Projection out;
  out.pair = RadialPair(idx, field.rgrid);
  std::vector<Spinor4> bp(static_cast<std::size_t>(nth * nph)), bm(static_cast<std::size_t>(nth * nph));
  for (int i = 0; i < nth; ++i)
    for (int j = 0; j < nph; ++j) {
      bp[static_cast<std::size_t>(i * nph + j)] = spinor_harmonic(Sign::plus, idx, sg.theta(i), sg.phi(j));
      bm[static_cast<std::size_t>(i * nph + j)] = spinor_harmonic(Sign::minus, idx, sg.theta(i), sg.phi(j));
    }
  for (int ir = 0; ir < field.rgrid.N; ++ir) {
    complex cp = 0.0, cm = 0.0;
    for (int i = 0; i < nth; ++i) {
      const double w = sg.weight(i);
      for (int j = 0; j < nph; ++j) {
        const int iq = i * nph + j;
        const Spinor4 v = field.spinor(ir, iq);
        cp += w * dot(bp[static_cast<std::size_t>(iq)], v);
        cm += w * dot(bm[static_cast<std::size_t>(iq)], v);
      }
    }
    out.pair.uplus[static_cast<std::size_t>(ir)] = field.rgrid.r(ir) * cp;
    out.pair.uminus[static_cast<std::size_t>(ir)] = field.rgrid.r(ir) * cm;
  }
  ProductField diff = field;
  diff -= reconstruct(out.pair, field.sgrid);
  out.offspace_residual = diff.l2_norm();
  return out;
}

bool boundary_mass_exceeds(const RadialPair& state, double tol) {
  const int N = state.grid.N;
  const int edge = static_cast<int>(0.95 * N);
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < N; ++i) {
    const double m = std::norm(state.uplus[static_cast<std::size_t>(i)]) +
                     std::norm(state.uminus[static_cast<std::size_t>(i)]);
    total += m;
    if (i >= edge) tail += m;
  }
  if (total == 0.0) return false;
  return tail / total > tol;
}

}  // namespace pwdirac
