#pragma once

#include <map>

#include "lharm/padic.hpp"
#include "lharm/ratfunc.hpp"

namespace lharm {

// Quasi-character chi = chi0 * |.|^s0 (optionally times the formal |.|^s of
// the zeta variable).  chi0 has level L: trivial on 1 + p^L O; its unit values
// are tabulated on generators of (O/p^L)^x (a primitive root for odd p, the
// pair {-1, 5} for p = 2), and chi0(p) is a separate unit value.
class QuasiCharacter {
public:
    // unramified
    static QuasiCharacter unramified(const PAdicContext* ctx, const Cyclotomic& value_at_p,
                                     const QQ& s0 = QQ(0), bool symbolic_s = false);
    // ramified, odd p: value at a primitive root mod p^L
    static QuasiCharacter ramified_odd(const PAdicContext* ctx, long level,
                                       const Cyclotomic& value_at_gen,
                                       const Cyclotomic& value_at_p, const QQ& s0 = QQ(0),
                                       bool symbolic_s = false);
    // ramified, p = 2, level 2 or 3: values at -1 and (for level 3) at 5
    static QuasiCharacter ramified_two(const PAdicContext* ctx, long level,
                                       const Cyclotomic& value_at_m1,
                                       const Cyclotomic& value_at_5,
                                       const Cyclotomic& value_at_p, const QQ& s0 = QQ(0),
                                       bool symbolic_s = false);
    // the quadratic character <d, .>
    static QuasiCharacter quadratic(const PAdicContext* ctx, const QQ& d);

    const PAdicContext* ctx() const { return ctx_; }
    long level() const { return level_; }
    bool unramified_finite() const { return level_ == 0; }
    const QQ& exponent() const { return s0_; }   // e(chi) for the fixed part
    bool symbolic() const { return symbolic_s_; }
    const Cyclotomic& value_at_p() const { return zp_; }

    // finite-order part chi0(x) (no |.|-power)
    Cyclotomic eval_finite(const QQ& x) const;
    // unit value only (x a unit)
    Cyclotomic eval_unit(const QQ& u) const;
    // chi(x) including |x|^s0 and, if symbolic, X^{v(x)}
    RatFunc eval_full(const QQ& x) const;
    // per-shell weight W with chi-part of the shell v(x)=m factor equal W^m
    RatFunc shell_weight() const;

    QuasiCharacter inverse() const;
    QuasiCharacter with_exponent(const QQ& s0, bool symbolic) const;

    bool is_trivial() const;
    long primitive_root() const { return gen_; }

    std::string str() const;

private:
    QuasiCharacter(const PAdicContext* ctx) : ctx_(ctx) {}
    const PAdicContext* ctx_;
    long level_ = 0;
    Cyclotomic zp_ = Cyclotomic::one();
    Cyclotomic zg_ = Cyclotomic::one();   // value at generator (odd p)
    Cyclotomic zm1_ = Cyclotomic::one();  // value at -1 (p = 2)
    Cyclotomic z5_ = Cyclotomic::one();   // value at 5  (p = 2)
    QQ s0_ = QQ(0);
    bool symbolic_s_ = false;
    long gen_ = 0;
    mutable std::map<long, Cyclotomic> unit_cache_;

    void build_generator();
};

} // namespace lharm
