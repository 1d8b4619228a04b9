#pragma once

#include <optional>
#include <vector>

#include "lharm/padic.hpp"

namespace lharm {

// closed ball center + p^level O, center reduced mod p^level
struct Ball {
    QQ center;
    long level = 0;

    bool operator==(const Ball& o) const { return level == o.level && center == o.center; }
};

// coeff * psi(phase * x) * 1_ball(x)
struct BSTerm {
    Cyclotomic coeff;
    Ball ball;
    QQ phase = 0;
};

// Bruhat-Schwartz function on Q_p as a finite sum of phased ball indicators.
// The phased form is closed under Fourier transform, products and affine
// substitutions, so no operation ever needs to leave the class.
class BruhatSchwartz {
public:
    explicit BruhatSchwartz(const PAdicContext* ctx) : ctx_(ctx) {}

    static BruhatSchwartz zero(const PAdicContext* ctx) { return BruhatSchwartz(ctx); }
    static BruhatSchwartz indicator(const PAdicContext* ctx, const QQ& center, long level);
    // 1_{O^x} as 1_O - 1_{pO}
    static BruhatSchwartz unit_indicator(const PAdicContext* ctx);

    const PAdicContext* ctx() const { return ctx_; }
    const std::vector<BSTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_term(const Cyclotomic& coeff, const QQ& center, long level, const QQ& phase = QQ(0));

    BruhatSchwartz operator+(const BruhatSchwartz& o) const;
    BruhatSchwartz operator-(const BruhatSchwartz& o) const;
    BruhatSchwartz operator*(const BruhatSchwartz& o) const;  // pointwise
    BruhatSchwartz scaled(const Cyclotomic& c) const;

    Cyclotomic eval(const QQ& x) const;

    BruhatSchwartz fourier() const;           // phi_hat(t) = int phi(y) psi(ty) dy
    BruhatSchwartz inverse_fourier() const;   // phi(-t) of fourier
    BruhatSchwartz reflected() const;         // x -> -x
    BruhatSchwartz conj() const;
    BruhatSchwartz translated(const QQ& t) const;  // x -> x + t
    BruhatSchwartz scaled_arg(const QQ& s) const;  // x -> s*x
    BruhatSchwartz phase_shifted(const QQ& a) const;  // multiply by psi(a x)

    // integral against self-dual additive measure
    Cyclotomic integral() const;
    // <f, g> = int f conj(g) dx
    Cyclotomic inner(const BruhatSchwartz& g) const;

    // disjoint, merged, canonically ordered; zero function iff empty afterwards
    void canonicalize();
    bool is_zero_function() const;

    // all support balls contained in center+p^level O?  (conservative: checks
    // the canonicalized support)
    bool support_inside(const QQ& center, long level) const;
    // min valuation over support (most negative shell the function touches)
    std::optional<long> support_min_val() const;
    // finest ball level appearing
    long max_level() const;

    std::string str() const;

private:
    const PAdicContext* ctx_;
    std::vector<BSTerm> terms_;

    void normalize_term(BSTerm& t) const;
};

} // namespace lharm
