#include "pwdirac/algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pwdirac {

namespace {
constexpr complex I{0.0, 1.0};
}

Spinor4& Spinor4::operator+=(const Spinor4& o) {
  for (int i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}
Spinor4& Spinor4::operator-=(const Spinor4& o) {
  for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
  return *this;
}
Spinor4& Spinor4::operator*=(complex s) {
  for (auto& x : c) x *= s;
  return *this;
}

complex dot(const Spinor4& v, const Spinor4& w) {
  complex s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::conj(v.c[i]) * w.c[i];
  return s;
}

double norm2(const Spinor4& v) { return dot(v, v).real(); }

Matrix4c Matrix4c::zero() { return Matrix4c{}; }

Matrix4c Matrix4c::identity() {
  Matrix4c m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

Matrix4c& Matrix4c::operator+=(const Matrix4c& o) {
  for (std::size_t i = 0; i < 16; ++i) e_[i] += o.e_[i];
  return *this;
}
Matrix4c& Matrix4c::operator-=(const Matrix4c& o) {
  for (std::size_t i = 0; i < 16; ++i) e_[i] -= o.e_[i];
  return *this;
}
Matrix4c& Matrix4c::operator*=(complex s) {
  for (auto& x : e_) x *= s;
  return *this;
}

Matrix4c operator*(const Matrix4c& a, const Matrix4c& b) {
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (int j = 0; j < 4; ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

Spinor4 operator*(const Matrix4c& a, const Spinor4& v) {
  Spinor4 w;
  for (int i = 0; i < 4; ++i) {
    complex s = 0.0;
    for (int j = 0; j < 4; ++j) s += a(i, j) * v[j];
    w[i] = s;
  }
  return w;
}

Matrix4c Matrix4c::adjoint() const {
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

bool Matrix4c::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

double Matrix4c::max_abs_diff(const Matrix4c& o) const {
  double m = 0.0;
  for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(e_[i] - o.e_[i]));
  return m;
}

double Matrix4c::max_abs() const { return max_abs_diff(Matrix4c::zero()); }

Matrix4c pauli_embedded(int k) {
  Matrix4c m;
  switch (k) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -I;
      m(1, 0) = I;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli_embedded: k must be 1, 2 or 3");
  }
  return m;
}

namespace {

Matrix4c alpha_matrix(int k) {
  // off-diagonal blocks carry sigma_k
  const Matrix4c s = pauli_embedded(k);
  Matrix4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m(i, j + 2) = s(i, j);
      m(i + 2, j) = s(i, j);
    }
  return m;
}

Matrix4c beta_matrix() {
  Matrix4c m;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = -1.0;
  m(3, 3) = -1.0;
  return m;
}

Matrix4c gamma5_matrix() {
  Matrix4c m;
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  m(2, 0) = 1.0;
  m(3, 1) = 1.0;
  return m;
}

}  // namespace

Matrix4c dirac_matrix(DiracKind kind) {
  switch (kind) {
    case DiracKind::pauli1: return pauli_embedded(1);
    case DiracKind::pauli2: return pauli_embedded(2);
    case DiracKind::pauli3: return pauli_embedded(3);
    case DiracKind::alpha1: return alpha_matrix(1);
    case DiracKind::alpha2: return alpha_matrix(2);
    case DiracKind::alpha3: return alpha_matrix(3);
    case DiracKind::beta: return beta_matrix();
    case DiracKind::gamma5: return gamma5_matrix();
  }
  throw std::invalid_argument("dirac_matrix: unknown kind");
}

DiracKind dirac_kind_from_string(const std::string& name) {
  if (name == "pauli1") return DiracKind::pauli1;
  if (name == "pauli2") return DiracKind::pauli2;
  if (name == "pauli3") return DiracKind::pauli3;
  if (name == "alpha1") return DiracKind::alpha1;
  if (name == "alpha2") return DiracKind::alpha2;
  if (name == "alpha3") return DiracKind::alpha3;
  if (name == "beta") return DiracKind::beta;
  if (name == "gamma5") return DiracKind::gamma5;
  throw std::invalid_argument("dirac_kind_from_string: unknown kind '" + name + "'");
}

Matrix4c anticommutator(const Matrix4c& a, const Matrix4c& b) { return a * b + b * a; }
Matrix4c commutator(const Matrix4c& a, const Matrix4c& b) { return a * b - b * a; }

Matrix4c alpha_dot(const std::array<double, 3>& v) {
  Matrix4c m;
  for (int k = 0; k < 3; ++k) {
    if (v[static_cast<std::size_t>(k)] == 0.0) continue;
    m += complex{v[static_cast<std::size_t>(k)], 0.0} * alpha_matrix(k + 1);
  }
  return m;
}

Matrix4c spin_matrix(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("spin_matrix: k must be 1, 2 or 3");
  // (alpha ^ alpha)_k = alpha_i alpha_j - alpha_j alpha_i, (i,j,k) cyclic
  const int i = k % 3 + 1;
  const int j = i % 3 + 1;
  Matrix4c wedge = commutator(alpha_matrix(i), alpha_matrix(j));
  return (-I / 4.0) * wedge;
}

Matrix4c ibeta_alpha(const std::array<double, 3>& xhat) {
  return I * (beta_matrix() * alpha_dot(xhat));
}

std::array<double, 4> hermitian_eigenvalues(const Matrix4c& m) {
  // cyclic complex Jacobi; adequate for the 4x4 matrices used here
  Matrix4c a = m;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += std::norm(a(p, q));
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const complex apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // phase so the rotated off-diagonal element is real
        const complex phase = apq / std::abs(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const complex s = t * cth * phase;
        // G = rotation in the (p,q) plane; a <- G^H a G
        for (int r = 0; r < 4; ++r) {
          const complex arp = a(r, p);
          const complex arq = a(r, q);
          a(r, p) = cth * arp - std::conj(s) * arq;
          a(r, q) = s * arp + cth * arq;
        }
        for (int r = 0; r < 4; ++r) {
          const complex apr = a(p, r);
          const complex aqr = a(q, r);
          a(p, r) = cth * apr - s * aqr;
          a(q, r) = std::conj(s) * apr + cth * aqr;
        }
      }
  }
  std::array<double, 4> ev{a(0, 0).real(), a(1, 1).real(), a(2, 2).real(), a(3, 3).real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

void add_check(CliffordReport& rep, const std::string& name, double err, double tol = 0.0) {
  rep.checks.push_back({name, err, err <= tol});
}

}  // namespace

CliffordReport clifford_report() {
  CliffordReport rep;
  const Matrix4c id = Matrix4c::identity();
  const Matrix4c zero = Matrix4c::zero();
  const std::array<Matrix4c, 3> alpha = {alpha_matrix(1), alpha_matrix(2), alpha_matrix(3)};
  const Matrix4c beta = beta_matrix();
  const Matrix4c g5 = gamma5_matrix();

  // {alpha_i, alpha_k} = 2 delta_ik I
  for (int i = 0; i < 3; ++i)
    for (int k = i; k < 3; ++k) {
      const Matrix4c expect = (i == k) ? complex{2.0, 0.0} * id : zero;
      std::ostringstream name;
      name << "{alpha" << i + 1 << ",alpha" << k + 1 << "} = " << (i == k ? "2I" : "0");
      add_check(rep, name.str(), anticommutator(alpha[i], alpha[k]).max_abs_diff(expect));
    }
  // {alpha_i, beta} = 0
  for (int i = 0; i < 3; ++i) {
    std::ostringstream name;
    name << "{alpha" << i + 1 << ",beta} = 0";
    add_check(rep, name.str(), anticommutator(alpha[i], beta).max_abs_diff(zero));
  }
  // beta^2 = I
  add_check(rep, "beta^2 = I", (beta * beta).max_abs_diff(id));
  // gamma5^2 = I, {gamma5, beta} = 0, [gamma5, alpha_k] = 0
  add_check(rep, "gamma5^2 = I", (g5 * g5).max_abs_diff(id));
  add_check(rep, "{gamma5,beta} = 0", anticommutator(g5, beta).max_abs_diff(zero));
  for (int i = 0; i < 3; ++i) {
    std::ostringstream name;
    name << "[gamma5,alpha" << i + 1 << "] = 0";
    add_check(rep, name.str(), commutator(g5, alpha[i]).max_abs_diff(zero));
  }
  // gamma5 alpha_k = 2 S_k with S built from the wedge of the alphas
  for (int k = 1; k <= 3; ++k) {
    std::ostringstream name;
    name << "gamma5 alpha" << k << " = 2 S" << k;
    add_check(rep, name.str(),
              (g5 * alpha[k - 1]).max_abs_diff(complex{2.0, 0.0} * spin_matrix(k)));
  }
  // (i beta (alpha.e3))^2 = I
  const Matrix4c h3 = ibeta_alpha({0.0, 0.0, 1.0});
  add_check(rep, "(i beta alpha.e3)^2 = I", (h3 * h3).max_abs_diff(id));
  // eigenvalues of V1 I + V2 i beta (alpha.e1) at (V1,V2) = (2,1): {1,1,3,3}
  {
    const Matrix4c v = complex{2.0, 0.0} * id + ibeta_alpha({1.0, 0.0, 0.0});
    const auto ev = hermitian_eigenvalues(v);
    double err = 0.0;
    const std::array<double, 4> expect{1.0, 1.0, 3.0, 3.0};
    for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(ev[i] - expect[i]));
    add_check(rep, "eig(2I + i beta alpha.e1) = {1,1,3,3}", err, 1e-12);
  }

  rep.all_pass = true;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string CliffordReport::to_json() const {
  std::ostringstream os;
  os << "{\"all_pass\":" << (all_pass ? "true" : "false") << ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) os << ",";
    os << "{\"name\":\"" << checks[i].name << "\",\"max_abs_error\":" << checks[i].max_abs_error
       << ",\"pass\":" << (checks[i].pass ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace pwdirac
