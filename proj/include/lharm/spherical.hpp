#pragma once

#include "lharm/densities.hpp"

namespace lharm {

// Unramified spherical data for GL2 and the metaplectic SL2 cover at a prime
// p, with the Satake parameter as the formal unit symbol alpha and
// q^{-1/2} = Y.

// GL2 Whittaker value at diag(p^m, 1): Y^m (alpha^{m+1} - alpha^{-m-1})/(alpha - alpha^{-1})
RatFunc gl2_whittaker(long p, long m);

// L-factor bundle at the spherical representation
RatFunc gl2_l_adjoint_at_1(long p);  // L(1, pi, ad)
RatFunc zeta_p_at(long p, long s_numer_twice);  // zeta_p(s) for s = s_numer_twice/2
RatFunc gl2_l_standard_half(long p);  // L(1/2, pi)

struct CvIdentityReport {
    RatFunc product;  // zeta(2)/L(1,ad) * int |W|^2 d^x a
    bool exact_one = false;
    double truncation_error = 0.0;  // numeric cross-check residual, m <= 60
    double truncation_bound = 0.0;  // a-priori geometric tail bound
};
CvIdentityReport gl2_cv_identity(long p);

struct MomentIdentityReport {
    RatFunc moment;           // sum_m q^{-m(s+1/2)} s_m(alpha)^2 (unit measure)
    bool matches_shifted = false;    // L(s+1/2, ad) zeta(s+1/2) / zeta(2s+1)
    bool matches_unshifted = false;  // L(s, ad) zeta(s+1/2) / zeta(2s+1)
    double alpha1_check_error = 0.0; // degeneration sum (m+1)^2 t^m = (1+t)/(1-t)^3
};
MomentIdentityReport gl2_moment_identity(long p);

// metaplectic spherical Whittaker value ell_psi(a-bar phi_0) and the spherical
// matrix coefficient at a; both need |a| <= 1
RatFunc sl2t_whittaker(long p, const QQ& a);
RatFunc sl2t_matcoef(long p, const QQ& a);

struct CSigmaReport {
    RatFunc pairing_term;   // (|2|/2) c_claimed int |W|^2 d^x a, from class delta = 1
    RatFunc residual;       // 1 - pairing_term: the other square classes' share
    RatFunc c_claimed;      // L(1/2,pi) zeta(2) / L(1,ad)
    RatFunc c_recovered;    // 2|2|^-1 / int |W|^2 d^x a
    bool matches_claimed = false;  // residual == 0
};
CSigmaReport sl2t_csigma_identity(long p);

// package the delta = 1 spherical data as a WhittakerExpansion; normalized so
// the represented matrix coefficient equals 1 at n = 0 (c = 2|2|^-1 / S1);
// set paper_constant to use c = L(1/2,pi) zeta(2)/L(1,ad) instead
WhittakerExpansion expansion_from_spherical(const PAdicContext* ctx, bool paper_constant = false);

} // namespace lharm
