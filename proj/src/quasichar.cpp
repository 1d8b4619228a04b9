#include "lharm/quasichar.hpp"

#include <sstream>

namespace lharm {

namespace {
long phi_pk(long p, long k) {
    long r = 1;
    for (long i = 1; i < k; ++i) r *= p;
    return r * (p - 1);
}
} // namespace

void QuasiCharacter::build_generator() {
    long p = ctx_->p();
    if (p == 2 || level_ == 0) return;
    long pk = 1;
    for (long i = 0; i < level_; ++i) pk *= p;
    long order = phi_pk(p, level_);
    for (long g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        // order of g mod p^L must be phi(p^L)
        long x = 1;
        bool primitive = true;
        for (long e = 1; e < order; ++e) {
            x = (x * g) % pk;
            if (x == 1) { primitive = false; break; }
        }
        x = (x * g) % pk;
        if (primitive && x == 1) { gen_ = g; return; }
    }
    throw std::logic_error("no primitive root found");
}

QuasiCharacter QuasiCharacter::unramified(const PAdicContext* ctx, const Cyclotomic& value_at_p,
                                          const QQ& s0, bool symbolic_s) {
    QuasiCharacter c(ctx);
    c.level_ = 0;
    c.zp_ = value_at_p;
    c.s0_ = s0;
    c.symbolic_s_ = symbolic_s;
    return c;
}

QuasiCharacter QuasiCharacter::ramified_odd(const PAdicContext* ctx, long level,
                                            const Cyclotomic& value_at_gen,
                                            const Cyclotomic& value_at_p, const QQ& s0,
                                            bool symbolic_s) {
    if (ctx->p() == 2) throw std::invalid_argument("ramified_odd requires odd p");
    if (level < 1) throw std::invalid_argument("ramified character needs level >= 1");
    QuasiCharacter c(ctx);
    c.level_ = level;
    c.zg_ = value_at_gen;
    c.zp_ = value_at_p;
    c.s0_ = s0;
    c.symbolic_s_ = symbolic_s;
    c.build_generator();
    // multiplicativity requires zg^phi = 1
    long order = phi_pk(ctx->p(), level);
    Cyclotomic t = Cyclotomic::one();
    for (long i = 0; i < order; ++i) t *= value_at_gen;
    if (!(t == Cyclotomic::one()))
        throw std::invalid_argument("generator value is not a phi(p^L)-th root of unity");
    return c;
}

QuasiCharacter QuasiCharacter::ramified_two(const PAdicContext* ctx, long level,
                                            const Cyclotomic& value_at_m1,
                                            const Cyclotomic& value_at_5,
                                            const Cyclotomic& value_at_p, const QQ& s0,
                                            bool symbolic_s) {
    if (ctx->p() != 2) throw std::invalid_argument("ramified_two requires p = 2");
    if (level < 2 || level > 3) throw std::invalid_argument("p=2 levels supported: 2, 3");
    QuasiCharacter c(ctx);
    c.level_ = level;
    c.zm1_ = value_at_m1;
    c.z5_ = value_at_5;
    c.zp_ = value_at_p;
    c.s0_ = s0;
    c.symbolic_s_ = symbolic_s;
    if (!(value_at_m1 * value_at_m1 == Cyclotomic::one()))
        throw std::invalid_argument("value at -1 must be +-1");
    if (level == 3 && !(value_at_5 * value_at_5 == Cyclotomic::one()))
        throw std::invalid_argument("value at 5 must be +-1 at level 3");
    if (level == 2 && !(value_at_5 == Cyclotomic::one()))
        throw std::invalid_argument("level 2 characters are trivial on 5");
    return c;
}

QuasiCharacter QuasiCharacter::quadratic(const PAdicContext* ctx, const QQ& d) {
    long p = ctx->p();
    if (ctx->is_square(d)) return unramified(ctx, Cyclotomic::one());
    if (p != 2) {
        QQ u = unit_part(d, p);
        bool unit_sq = ctx->is_square_unit(u);
        long vd = valuation(d, p);
        // <d, x> = legendre(unit(x))^{v(d)} * (stuff)  -- build from values
        // value at p: <d, p>; value at generator g: <d, g>
        QuasiCharacter c(ctx);
        Cyclotomic at_p(QQ(ctx->hilbert(d, QQ(p))));
        if (vd % 2 == 0 && unit_sq) return unramified(ctx, Cyclotomic::one());
        if (vd % 2 == 0 && !unit_sq) {
            // unramified quadratic: chi(x) = (-1)^{v(x)}
            return unramified(ctx, Cyclotomic(QQ(-1)));
        }
        // ramified: level 1, chi on units = legendre
        QuasiCharacter r(ctx);
        r.level_ = 1;
        r.build_generator();
        r.zg_ = Cyclotomic(QQ(-1));  // legendre of a primitive root is -1
        r.zp_ = at_p;
        return r;
    }
    // p = 2: <d, x> tabulated directly from the Hilbert symbol
    QuasiCharacter c(ctx);
    c.level_ = 3;
    c.zm1_ = Cyclotomic(QQ(ctx->hilbert(d, QQ(-1))));
    c.z5_ = Cyclotomic(QQ(ctx->hilbert(d, QQ(5))));
    c.zp_ = Cyclotomic(QQ(ctx->hilbert(d, QQ(2))));
    return c;
}

Cyclotomic QuasiCharacter::eval_unit(const QQ& u) const {
    long p = ctx_->p();
    if (level_ == 0) return Cyclotomic::one();
    long pk = 1;
    for (long i = 0; i < level_; ++i) pk *= p;
    // residue of u mod p^L
    ZZ m(pk), inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("eval_unit: not a unit");
    long r = zz_mod(u.get_num() * inv, m).get_si();
    auto it = unit_cache_.find(r);
    if (it != unit_cache_.end()) return it->second;

    Cyclotomic val;
    if (p != 2) {
        long x = 1;
        long e = 0;
        long order = phi_pk(p, level_);
        while (x != r) {
            x = (x * gen_) % pk;
            if (++e > order) throw std::logic_error("dlog failed");
        }
        val = Cyclotomic::one();
        for (long i = 0; i < e; ++i) val *= zg_;
    } else {
        // r = (-1)^a 5^b mod 2^L
        long ord5 = level_ >= 3 ? (1L << (level_ - 2)) : 1;
        bool found = false;
        for (long a = 0; a < 2 && !found; ++a)
            for (long b = 0; b < ord5 && !found; ++b) {
                long x = 1;
                for (long i = 0; i < b; ++i) x = (x * 5) % pk;
                if (a) x = (pk - x) % pk;
                if (x == r) {
                    val = Cyclotomic::one();
                    if (a) val *= zm1_;
                    for (long i = 0; i < b; ++i) val *= z5_;
                    found = true;
                }
            }
        if (!found) throw std::logic_error("p=2 dlog failed");
    }
    unit_cache_[r] = val;
    return val;
}

Cyclotomic QuasiCharacter::eval_finite(const QQ& x) const {
    if (x == 0) throw std::domain_error("character at zero");
    long v = ctx_->val(x);
    Cyclotomic r = Cyclotomic::one();
    Cyclotomic zp = v >= 0 ? zp_ : zp_.inverse();
    for (long i = 0; i < std::abs(v); ++i) r *= zp;
    return r * eval_unit(unit_part(x, ctx_->p()));
}

RatFunc QuasiCharacter::eval_full(const QQ& x) const {
    long p = ctx_->p();
    long v = ctx_->val(x);
    RatFunc r = RatFunc::from_cyc(p, eval_finite(x));
    if (s0_ != 0) r *= RatFunc::p_pow(p, s0_ * v);  // |x|^{s0} = p^{-s0 v}
    if (symbolic_s_) r *= RatFunc::x_pow(p, v);
    return r;
}

RatFunc QuasiCharacter::shell_weight() const {
    long p = ctx_->p();
    RatFunc r = RatFunc::from_cyc(p, zp_);
    if (s0_ != 0) r *= RatFunc::p_pow(p, s0_);
    if (symbolic_s_) r *= RatFunc::X(p);
    return r;
}

QuasiCharacter QuasiCharacter::inverse() const {
    QuasiCharacter c = *this;
    c.zp_ = zp_.inverse();
    c.zg_ = zg_.inverse();
    c.zm1_ = zm1_.inverse();
    c.z5_ = z5_.inverse();
    c.s0_ = -s0_;
    c.unit_cache_.clear();
    return c;
}

QuasiCharacter QuasiCharacter::with_exponent(const QQ& s0, bool symbolic) const {
    QuasiCharacter c = *this;
    c.s0_ = s0;
    c.symbolic_s_ = symbolic;
    return c;
}

bool QuasiCharacter::is_trivial() const {
    return level_ == 0 && zp_ == Cyclotomic::one() && s0_ == 0 && !symbolic_s_;
}

std::string QuasiCharacter::str() const {
    std::ostringstream os;
    os << "chi[L=" << level_;
    if (level_ > 0 && ctx_->p() != 2) os << ",g" << gen_ << "->" << zg_.str();
    if (level_ > 0 && ctx_->p() == 2) os << ",-1->" << zm1_.str() << ",5->" << z5_.str();
    os << ",p->" << zp_.str();
    if (s0_ != 0) os << ",s0=" << s0_.get_str();
    if (symbolic_s_) os << ",|.|^s";
    os << "]";
    return os.str();
}

} // namespace lharm
