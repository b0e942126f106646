#pragma once

#include <array>
#include <complex>
#include <vector>

namespace pwdirac {

/// LU factorization of a block-tridiagonal system with 2x2 complex blocks
/// and CONSTANT off-diagonal blocks (lower = Lo, upper = Up), as produced by
/// the Cayley half-step matrix I + i dt/2 d. No pivoting: the matrices here
/// are identity-plus-i-times-Hermitian, whose leading blocks stay well
/// conditioned; breakdown is detected and reported.
class BlockTridiagLU {
 public:
  using c64 = std::complex<double>;
  using Block = std::array<c64, 4>;  // row-major 2x2

  /// diag[i] = D_i, coupling blocks A[i] u_{i+1} (upper) and B[i] u_{i-1}
  /// (lower) with A, B constant.
  BlockTridiagLU(std::vector<Block> diag, Block upper, Block lower);

  bool ok() const { return ok_; }

  /// Solves in place; x holds 2n interleaved complex values.
  void solve(std::vector<c64>& x) const;

 private:
  int n_;
  bool ok_ = true;
  Block up_;
  std::vector<Block> dinv_;  // inverses of the pivot blocks
  std::vector<Block> lfac_;  // L_i = B * dinv_{i-1}
};

}  // namespace pwdirac
