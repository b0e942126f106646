#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace pwdirac {

using complex = std::complex<double>;

/// C^4 spinor value. Plain aggregate, value semantics.
struct Spinor4 {
  std::array<complex, 4> c{};

  complex& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const complex& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Spinor4& operator+=(const Spinor4& o);
  Spinor4& operator-=(const Spinor4& o);
  Spinor4& operator*=(complex s);

  friend Spinor4 operator+(Spinor4 a, const Spinor4& b) { return a += b; }
  friend Spinor4 operator-(Spinor4 a, const Spinor4& b) { return a -= b; }
  friend Spinor4 operator*(complex s, Spinor4 a) { return a *= s; }
  friend Spinor4 operator*(Spinor4 a, complex s) { return a *= s; }
};

/// Hermitian product <v,w> = sum conj(v_k) w_k, sesquilinear in the first slot.
complex dot(const Spinor4& v, const Spinor4& w);
double norm2(const Spinor4& v);

/// Dense 4x4 complex matrix, row major. Entries of the generator matrices
/// are exact (0, +-1, +-i), so Clifford identities hold with zero error.
class Matrix4c {
 public:
  Matrix4c() = default;

  complex& operator()(int i, int j) { return e_[static_cast<std::size_t>(4 * i + j)]; }
  const complex& operator()(int i, int j) const { return e_[static_cast<std::size_t>(4 * i + j)]; }

  static Matrix4c zero();
  static Matrix4c identity();

  Matrix4c& operator+=(const Matrix4c& o);
  Matrix4c& operator-=(const Matrix4c& o);
  Matrix4c& operator*=(complex s);
  friend Matrix4c operator+(Matrix4c a, const Matrix4c& b) { return a += b; }
  friend Matrix4c operator-(Matrix4c a, const Matrix4c& b) { return a -= b; }
  friend Matrix4c operator*(complex s, Matrix4c a) { return a *= s; }
  friend Matrix4c operator*(const Matrix4c& a, const Matrix4c& b);
  friend Spinor4 operator*(const Matrix4c& a, const Spinor4& v);
  friend bool operator==(const Matrix4c& a, const Matrix4c& b) = default;

  Matrix4c adjoint() const;
  bool is_hermitian(double tol = 0.0) const;

  /// max |entry| of (this - other); exact 0 for identities among generators.
  double max_abs_diff(const Matrix4c& o) const;
  double max_abs() const;

 private:
  std::array<complex, 16> e_{};
};

enum class DiracKind { pauli1, pauli2, pauli3, alpha1, alpha2, alpha3, beta, gamma5 };

/// 2x2 Pauli matrix sigma_k, k in {1,2,3}, embedded in the upper-left block
/// (the lower-right 2x2 block is zero).
Matrix4c pauli_embedded(int k);

/// The Dirac-representation matrices: alpha_k = offdiag(sigma_k, sigma_k),
/// beta = diag(I2, -I2), gamma5 = offdiag(I2, I2). Pauli kinds return the
/// 2x2 matrix embedded as pauli_embedded().
Matrix4c dirac_matrix(DiracKind kind);
DiracKind dirac_kind_from_string(const std::string& name);

/// AB + BA.
Matrix4c anticommutator(const Matrix4c& a, const Matrix4c& b);
/// AB - BA.
Matrix4c commutator(const Matrix4c& a, const Matrix4c& b);

/// sum_k v_k alpha_k for a real 3-vector v (not necessarily unit).
Matrix4c alpha_dot(const std::array<double, 3>& v);

/// Spin matrices S_k = -(i/4) (alpha ^ alpha)_k = diag(sigma_k, sigma_k)/2,
/// built from products of the alpha matrices.
Matrix4c spin_matrix(int k);

/// i beta (alpha . xhat): the Hermitian involution entering the potential
/// V = V1 I + V2 i beta (alpha . xhat).
Matrix4c ibeta_alpha(const std::array<double, 3>& xhat);

/// Eigenvalues of a 4x4 Hermitian matrix via cyclic Jacobi sweeps, ascending.
std::array<double, 4> hermitian_eigenvalues(const Matrix4c& m);

struct CliffordCheck {
  std::string name;
  double max_abs_error = 0.0;
  bool pass = false;
};

struct CliffordReport {
  std::vector<CliffordCheck> checks;
  bool all_pass = false;
  std::string to_json() const;
};

/// Verifies the generator algebra: the 10 anticommutation identities among
/// {alpha_1, alpha_2, alpha_3, beta}, the 5 involving gamma5 (involution,
/// anticommutation with beta, commutation with each alpha_k), the three
/// identities gamma5 alpha_k = 2 S_k, plus (i beta (alpha.e3))^2 = I and the
/// eigenvalue check of V1 I + V2 i beta (alpha.e1) at (V1,V2) = (2,1).
CliffordReport clifford_report();

}  // namespace pwdirac
