#pragma once

#include "lharm/atoms.hpp"

namespace lharm {

// Multiplicative-type shell integral of a phased-ball function against a
// quasi-character.  measure_shift = 0 gives d^x x, measure_shift = 1 gives
// dx (= |x| d^x x); the zeta variable X enters with exponent zeta_power per
// shell.  Tails over zero-centered balls are summed as exact geometric
// series (continuation); a ratio identical to 1 raises non_summable.
RatFunc shell_integral(const BruhatSchwartz& phi, const QuasiCharacter* chi, long measure_shift,
                       long zeta_power);

// Tate zeta integral Z(phi, chi, s) as a rational function of X = p^{-s}
RatFunc tate_zeta(const BruhatSchwartz& phi, const QuasiCharacter& chi);

enum class Measure { Additive, Multiplicative, UnitNormalized };

// integrate f against the chosen measure with an optional |x|^w weight;
// w symbolic (X) or fixed rational.  Fixed weights are checked for honest
// summability and raise with the offending exponent otherwise.
RatFunc integrate_bs(const BruhatSchwartz& f, Measure measure, bool symbolic_weight = false,
                     const QQ& fixed_weight = QQ(0));

// hat(phi chi)(x) = Z(phi psi_x, chi, s)|_{s=1}
RatFunc fourier_phi_chi(const BruhatSchwartz& phi, const QuasiCharacter& chi, const QQ& x);

struct GammaData {
    QuasiCharacter chi;
    RatFunc L_s;        // L(s, chi)
    RatFunc L_1ms_inv;  // L(1-s, chi^-1)
    RatFunc gamma;      // gamma(s, chi, psi)
    RatFunc epsilon;    // gamma * L_s / L_1ms_inv
};

// L(s, chi): 1/(1 - chi(p) p^{-s0} X) unramified, 1 ramified
RatFunc l_factor(const QuasiCharacter& chi);

// gamma factor from the functional equation, computed on canonical test
// functions and checked independent of the choice
GammaData gamma_factor(const QuasiCharacter& chi);

struct AsymptoticReport {
    bool support_ok = false;
    bool equal = false;
    RatFunc lhs, rhs;
};

// Prop (i): hat(phi chi)(x) = phi(0) gamma(0, chi^-1, psi) chi^-1(x) |x|^-1
// under Supp(hat phi) inside x (Cond(chi) cap pO)
AsymptoticReport asymptotic_identity_check(const BruhatSchwartz& phi, const QuasiCharacter& chi,
                                           const QQ& x);

// Lemma (i): int hat(phi)(x - y) chi^-1(y) |y|^-1 dy = phi(0) chi^-1(x) |x|^-1
AsymptoticReport asymptotic_convolution_check(const BruhatSchwartz& phi, const QuasiCharacter& chi,
                                              const QQ& x);

} // namespace lharm
