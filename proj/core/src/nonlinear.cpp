#include "pwdirac/nonlinear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwdirac {

NonlinearityKind nonlinearity_from_string(const std::string& name) {
  if (name == "F1") return NonlinearityKind::F1;
  if (name == "F2") return NonlinearityKind::F2;
  throw std::invalid_argument("nonlinearity_from_string: expected F1 or F2, got '" + name + "'");
}

std::string to_string(NonlinearityKind k) { return k == NonlinearityKind::F1 ? "F1" : "F2"; }

Spinor4 F_full(const Spinor4& u, NonlinearityKind kind) {
  complex c;
  if (kind == NonlinearityKind::F1) {
    c = dot(u, u);
  } else {
    Spinor4 bu = u;
    bu[2] = -bu[2];
    bu[3] = -bu[3];
    c = dot(bu, u);
  }
  return c * u;
}

ProductField F_full(const ProductField& field, NonlinearityKind kind) {
  ProductField out = field;
  const int Q = field.sgrid->size();
  for (int ir = 0; ir < field.rgrid.N; ++ir)
    for (int iq = 0; iq < Q; ++iq) out.set_spinor(ir, iq, F_full(field.spinor(ir, iq), kind));
  return out;
}

std::vector<double> nonlinear_scalar(const RadialPair& state, NonlinearityKind kind) {
  if (state.idx.two_j != 1)
    throw std::invalid_argument("nonlinear_scalar: only j = 1/2 channels are supported");
  const int N = state.grid.N;
  const double sign = (kind == NonlinearityKind::F1) ? 1.0 : -1.0;
  std::vector<double> c(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double r = state.grid.r(i);
    c[static_cast<std::size_t>(i)] =
        (std::norm(state.uplus[static_cast<std::size_t>(i)]) +
         sign * std::norm(state.uminus[static_cast<std::size_t>(i)])) /
        (4.0 * std::numbers::pi * r * r);
  }
  return c;
}

RadialPair F_reduced(const RadialPair& state, NonlinearityKind kind) {
  const auto c = nonlinear_scalar(state, kind);
  RadialPair out = state;
  for (int i = 0; i < state.grid.N; ++i) {
    out.uplus[static_cast<std::size_t>(i)] *= c[static_cast<std::size_t>(i)];
    out.uminus[static_cast<std::size_t>(i)] *= c[static_cast<std::size_t>(i)];
  }
  return out;
}

double invariance_residual(const RadialPair& state, NonlinearityKind kind,
                           std::shared_ptr<const SphereGrid> sgrid) {
  ProductField f = reconstruct(state, std::move(sgrid));
  ProductField Ff = F_full(f, kind);
  const double total = Ff.l2_norm();
  if (total == 0.0) return 0.0;
  return project(Ff, state.idx).offspace_residual / total;
}

}  // namespace pwdirac
