#pragma once

#include "lharm/fourier.hpp"
#include "lharm/shell.hpp"

namespace lharm {

// Expansion of a matrix-coefficient-type function:
//   f(n) = sum_i (|2|/2) c_i F2 W_i (delta_i n)
// with square-class representatives delta_i, constants c_i and even shell
// functions W_i.
struct WhittakerExpansion {
    struct Term {
        QQ delta;
        RatFunc c;
        ShellFunction W;
    };
    const PAdicContext* ctx;
    std::vector<Term> terms;

    // pointwise value of the represented function
    RatFunc eval(const QQ& n) const;
    // hypothesis: each W_i even with W_i |x|^-1 and W_i^2 |x|^-1 summable
    void check_invariants() const;
};

// Smooth density on k^x representing the Fourier transform of the expansion's
// distribution: supported on the classes -delta_i (k^x)^2, with
// density(-delta_i b^2) = |delta_i|^-1 c_i W_i(b) |b|^-1.
struct ToroidalDensity {
    const WhittakerExpansion* expansion;
    RatFunc eval(const QQ& a) const;
    bool supported_at(const QQ& a) const;
};

ToroidalDensity density_of(const WhittakerExpansion& e);

struct StableIntegralResult {
    RatFunc value;
    long stabilized_at;   // first truncation level from which values agree
    long predicted_bound;
};

// lim_n int_{p^-n O} f(u) psi(a u) du for the represented function f; exact
// truncated values, constant from the predicted level on
StableIntegralResult stable_integral(const WhittakerExpansion& e, const QQ& a);

// int F2 W(delta t) F2 phi(-t) dt for a list of (W, delta) parts, as one
// combined exact t-shell sweep with verified geometric deep tails
RatFunc isometry_pair_lhs(const std::vector<std::pair<const ShellFunction*, QQ>>& parts,
                          const BruhatSchwartz& phi);

struct IsometryReport {
    bool hypothesis_ok = false;
    std::string failed_hypothesis;
    RatFunc lhs, rhs;
    bool equal = false;
};

// Prop (1)/(2): delta square  => lhs = 2|2|^-1 int W phi |x|^-1 dx;
//               delta nonsquare => lhs = 0
IsometryReport isometry_check(const ShellFunction& W, const BruhatSchwartz& phi, const QQ& delta);

// combined variant: int (F2 W1(t) + F2 W2(delta t)) F2 phi(-t) dt with only
// the combined F2-side integrability required; delta a nonsquare
IsometryReport combined_isometry_check(const ShellFunction& W1, const ShellFunction& W2,
                                       const QQ& delta, const BruhatSchwartz& phi);

// Lemma: int conj(f)(n) F2 Phi(delta_i n) dn
//        = |delta_i|^-1 c_i int conj(W-side)(a) Phi(a) d^x a
IsometryReport mbintegral_check(const WhittakerExpansion& e, const BruhatSchwartz& Phi,
                                const QQ& delta_i);

} // namespace lharm
