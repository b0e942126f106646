#pragma once

#include "pwdirac/radial.hpp"

namespace pwdirac {

/// The two cubic nonlinearities: F1(u) = <u,u> u and F2(u) = <beta u,u> u,
/// with the sesquilinear Hermitian product.
enum class NonlinearityKind { F1, F2 };

NonlinearityKind nonlinearity_from_string(const std::string& name);
std::string to_string(NonlinearityKind k);

/// Pointwise cubic nonlinearity on a sampled field.
ProductField F_full(const ProductField& field, NonlinearityKind kind);
Spinor4 F_full(const Spinor4& u, NonlinearityKind kind);

/// Reduced form on a j = 1/2 channel: multiplies (u+, u-) by the real scalar
///   c(r) = (|u+|^2 + |u-|^2) / (4 pi r^2)   for F1,
///   c(r) = (|u+|^2 - |u-|^2) / (4 pi r^2)   for F2.
/// The 1/r^2 carries the reconstruction weight through the cubic term.
/// Throws for j != 1/2 (invariance only holds in the lowest sector).
RadialPair F_reduced(const RadialPair& state, NonlinearityKind kind);

/// The scalar c(r) at every node.
std::vector<double> nonlinear_scalar(const RadialPair& state, NonlinearityKind kind);

/// Reconstructs, applies F_full, projects back onto the channel and returns
/// the relative off-channel residual -- the discrete content of the
/// invariance of the j = 1/2 partial-wave subspaces under both cubics.
/// Quadrature-level zero for j = 1/2; O(1) for higher sectors.
double invariance_residual(const RadialPair& state, NonlinearityKind kind,
                           std::shared_ptr<const SphereGrid> sgrid = {});

}  // namespace pwdirac
