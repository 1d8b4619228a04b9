#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lharm/atoms.hpp"

namespace lharm {

// |r|^2 of a monomial rational function under |alpha| = 1, |Y| = p^{-1/2};
// nullopt when the modulus is not decidable from the shape (X present, or a
// coefficient that is not rational * root of unity)
std::optional<QQ> ratfunc_abs_sq(const RatFunc& r);

// Function on k^x depending only on (valuation shell, unit square class),
// zero below m_lo, tabulated on [m_lo, m_hi), and for m >= m_hi given by
// finitely many geometric strands value(i, m) = sum_k c_k[i] r_k^(m - m_hi).
class ShellFunction {
public:
    struct Strand {
        std::vector<RatFunc> coeff;  // per unit class
        RatFunc ratio;
    };

    ShellFunction(const PAdicContext* ctx, long m_lo, long m_hi,
                  std::vector<std::vector<RatFunc>> window, std::vector<Strand> tail);

    static ShellFunction zero(const PAdicContext* ctx);
    // 1 on the shells m in [m0, m1), all classes
    static ShellFunction shell_indicator(const PAdicContext* ctx, long m0, long m1);
    // 1_{O^x}
    static ShellFunction unit_shell(const PAdicContext* ctx) { return shell_indicator(ctx, 0, 1); }
    // indicator of the square units only
    static ShellFunction square_unit_shell(const PAdicContext* ctx);

    const PAdicContext* ctx() const { return ctx_; }
    long m_lo() const { return m_lo_; }
    long m_hi() const { return m_hi_; }
    int classes() const { return nclasses_; }
    const std::vector<Strand>& tail() const { return tail_; }

    RatFunc value(int cls, long m) const;
    RatFunc value_at(const QQ& x) const;

    bool is_zero() const;
    bool is_even() const;
    bool class_independent() const;
    ShellFunction conj() const;
    ShellFunction scaled(const RatFunc& c) const;
    ShellFunction operator+(const ShellFunction& o) const;

    // all tail strand ratios r satisfy |r * p^{-w}| < 1 (w = extra per-shell
    // decay); nullopt ratio modulus => not decidable => false
    bool tail_summable(const QQ& w = QQ(0)) const;

    std::string str() const;

private:
    const PAdicContext* ctx_;
    int nclasses_;
    long m_lo_, m_hi_;
    std::vector<std::vector<RatFunc>> window_;  // [m - m_lo][class]
    std::vector<Strand> tail_;
    mutable std::map<long, std::vector<RatFunc>> tail_cache_;  // m -> per-class value
};

// F2 W(t) = int W(x) psi(t x^2) dx, exact (shell atoms + geometric tails)
RatFunc f2_shell(const ShellFunction& W, const QQ& t);
// the same value through the tilde route 2|2|^-1 int ~W(y)|y|^{-1/2} psi(ty) dy
RatFunc f2_shell_tilde(const ShellFunction& W, const QQ& t);

// tilde lift ~W as a shell function (requires the lift to be shell-class
// measurable: W class-independent, or trivially when p = 3 mod 4)
ShellFunction tilde_lift(const ShellFunction& W);

// int W(x) phi(x) |x|^-1 dx, exact
RatFunc pair_weighted(const ShellFunction& W, const BruhatSchwartz& phi);

} // namespace lharm
