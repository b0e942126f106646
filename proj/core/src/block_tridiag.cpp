#include "pwdirac/block_tridiag.hpp"

#include <cmath>

namespace pwdirac {

namespace {

using Block = BlockTridiagLU::Block;
using c64 = BlockTridiagLU::c64;

Block mul(const Block& a, const Block& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Block sub(const Block& a, const Block& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

bool invert(const Block& a, Block& out) {
  const c64 det = a[0] * a[3] - a[1] * a[2];
  if (std::abs(det) < 1e-300) return false;
  const c64 inv = 1.0 / det;
  out = {a[3] * inv, -a[1] * inv, -a[2] * inv, a[0] * inv};
  return true;
}

}  // namespace

BlockTridiagLU::BlockTridiagLU(std::vector<Block> diag, Block upper, Block lower)
    : n_(static_cast<int>(diag.size())), up_(upper) {
  dinv_.resize(static_cast<std::size_t>(n_));
  lfac_.resize(static_cast<std::size_t>(n_));
  Block pivot = diag[0];
  if (!invert(pivot, dinv_[0])) {
    ok_ = false;
    return;
  }
  for (int i = 1; i < n_; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    lfac_[s] = mul(lower, dinv_[s - 1]);
    pivot = sub(diag[s], mul(lfac_[s], up_));
    if (!invert(pivot, dinv_[s])) {
      ok_ = false;
      return;
    }
  }
}

void BlockTridiagLU::solve(std::vector<c64>& x) const {
  // forward elimination
  for (int i = 1; i < n_; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const c64 a = x[2 * s - 2], b = x[2 * s - 1];
    x[2 * s] -= lfac_[s][0] * a + lfac_[s][1] * b;
    x[2 * s + 1] -= lfac_[s][2] * a + lfac_[s][3] * b;
  }
  // back substitution
  {
    const std::size_t s = static_cast<std::size_t>(n_ - 1);
    const c64 a = x[2 * s], b = x[2 * s + 1];
    x[2 * s] = dinv_[s][0] * a + dinv_[s][1] * b;
    x[2 * s + 1] = dinv_[s][2] * a + dinv_[s][3] * b;
  }
  for (int i = n_ - 2; i >= 0; --i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const c64 a = x[2 * s] - (up_[0] * x[2 * s + 2] + up_[1] * x[2 * s + 3]);
    const c64 b = x[2 * s + 1] - (up_[2] * x[2 * s + 2] + up_[3] * x[2 * s + 3]);
    x[2 * s] = dinv_[s][0] * a + dinv_[s][1] * b;
    x[2 * s + 1] = dinv_[s][2] * a + dinv_[s][3] * b;
  }
}

}  // namespace pwdirac
