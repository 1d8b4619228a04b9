#pragma once

#include "lharm/fourier.hpp"
#include "lharm/metaplectic.hpp"
#include "lharm/ratfunc.hpp"

namespace lharm {

// Quadratic phase Q(X) = q00 x0^2 + qpm x+x- + q0p x0 x+ + q0m x0 x- +
//                        qpp x+^2 + qmm x-^2 + l0 x0 + lp x+ + lm x-
// on V = trace-zero 2x2 matrices in the basis {e+, e0, e-}; q(X) = -det X
// evaluates to x0^2 + x+ x- in these coordinates.
struct QuadPhase {
    QQ q00 = 0, qpm = 0, q0p = 0, q0m = 0, qpp = 0, qmm = 0;
    QQ l0 = 0, lp = 0, lm = 0;
    bool diagonal_compatible() const { return q0p == 0 && q0m == 0 && qpp == 0 && qmm == 0; }
    QQ eval(const QQ& x0, const QQ& xp, const QQ& xm) const {
        return q00 * x0 * x0 + qpm * xp * xm + q0p * x0 * xp + q0m * x0 * xm + qpp * xp * xp +
               qmm * xm * xm + l0 * x0 + lp * xp + lm * xm;
    }
};

// coeff * psi(Q(X)) on the product box b0 x bp x bm
struct VTerm {
    RatFunc coeff;
    Ball b0, bp, bm;
    QuadPhase Q;
};

// Bruhat-Schwartz function on V(Q_p) as a finite sum of quadratic-phased
// product boxes; closed under the Weil representation generators.
class BruhatSchwartzV {
public:
    explicit BruhatSchwartzV(const PAdicContext* ctx) : ctx_(ctx) {}
    static BruhatSchwartzV lattice_indicator(const PAdicContext* ctx);  // 1_{O^3}

    const PAdicContext* ctx() const { return ctx_; }
    const std::vector<VTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    void add_term(VTerm t);

    RatFunc eval(const QQ& x0, const QQ& xp, const QQ& xm) const;

    BruhatSchwartzV operator+(const BruhatSchwartzV& o) const;
    BruhatSchwartzV scaled(const RatFunc& c) const;

    // generator actions of the Weil representation
    BruhatSchwartzV act_n(const QQ& n, int eps = 1) const;
    BruhatSchwartzV act_diag(const QQ& a, int eps = 1) const;  // underline(a)
    BruhatSchwartzV act_w(int eps = 1) const;
    // PGL2 conjugation action for h in {diag(t), weyl, unipotent(u)}
    BruhatSchwartzV act_pgl_diag(const QQ& t) const;
    BruhatSchwartzV act_pgl_weyl() const;
    BruhatSchwartzV act_pgl_unipotent(const QQ& u) const;

    // omega of a full metaplectic element via the Bruhat factorization,
    // normalized so that omega([g, 1]) matches the cocycle section
    BruhatSchwartzV omega(const MetaplecticElement& x) const;

    // exact zero test (p odd): canonical refinement + phase reduction
    bool is_zero_function() const;

    std::string str() const;

private:
    const PAdicContext* ctx_;
    std::vector<VTerm> terms_;
};

// partial Fourier transform in the x+ coordinate against psi(x+ y-);
// output slots are (x0; x-, y-)
BruhatSchwartzV partial_fourier(const BruhatSchwartzV& phi);

struct ProjectiveReport {
    int eps = 1;        // eps(g1, g2)
    bool equal = false; // omega(g1) omega(g2) phi == eps omega(g1 g2) phi
};
ProjectiveReport projective_check(const PAdicContext& ctx, const Mat2& g1, const Mat2& g2,
                                  const BruhatSchwartzV& phi);

} // namespace lharm
