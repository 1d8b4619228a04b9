#pragma once

#include "lharm/atoms.hpp"

namespace lharm {

// quadratic Fourier transform F2 phi(t) = int phi(x) psi(t x^2) dx,
// exact closed form via the stationary-phase Gauss atoms
Cyclotomic quad_fourier(const BruhatSchwartz& phi, const QQ& t);
// test oracle: the same value by full refinement into constancy cosets
Cyclotomic quad_fourier_brute(const BruhatSchwartz& phi, const QQ& t);

// Weil index: the stabilized unit-modulus phase of int_{p^-n O} psi(a x^2) dx.
// Throws logic_error if truncations past the predicted level disagree.
Cyclotomic weil_index(const PAdicContext& ctx, const QQ& a);
// chi_psi(a) = weil_index(a) / weil_index(1)
Cyclotomic chi_psi(const PAdicContext& ctx, const QQ& a);
// gamma(psi, q) for a diagonalized quadratic form q = sum d_i x_i^2
Cyclotomic weil_gamma_diag(const PAdicContext& ctx, const std::vector<QQ>& diag);

} // namespace lharm
