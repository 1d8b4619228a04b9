#include "lharm/padic.hpp"

namespace lharm {

PAdicContext::PAdicContext(long p) : p_(p) {
    if (p < 2) throw std::invalid_argument("PAdicContext: prime must be >= 2");
    if (p == 2) {
        nonres_ = 5;
        reps_ = {QQ(1), QQ(-1), QQ(5), QQ(-5), QQ(2), QQ(-2), QQ(10), QQ(-10)};
    } else {
        long u = 2;
        while (legendre(ZZ(u), p) != -1) ++u;
        nonres_ = u;
        reps_ = {QQ(1), QQ(u), QQ(p), QQ(u * p)};
    }
    int n = static_cast<int>(reps_.size());
    mul_table_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul_table_[i][j] = square_class_index(reps_[i] * reps_[j]);
}

Cyclotomic PAdicContext::psi(const QQ& x) const {
    if (x == 0) return Cyclotomic::one();
    long v = val(x);
    if (v >= 0) return Cyclotomic::one();
    // x = m p^v mod O, psi(x) = zeta_(p^-v)^m
    ZZ mod = zz_pow(ZZ(p_), static_cast<unsigned long>(-v));
    QQ u = unit_part(x, p_);
    ZZ binv;
    if (mpz_invert(binv.get_mpz_t(), u.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("psi: denominator not invertible");
    ZZ m = zz_mod(u.get_num() * binv, mod);
    return Cyclotomic::root_of_unity(mod.get_si(), m.get_si());
}

int PAdicContext::hilbert(const QQ& a, const QQ& b) const {
    if (a == 0 || b == 0) throw std::domain_error("hilbert: zero argument");
    long al = val(a), bl = val(b);
    QQ u = unit_part(a, p_), w = unit_part(b, p_);
    // units as integers mod suitable power
    auto unit_mod = [&](const QQ& q, long mod) {
        ZZ m(mod), inv;
        mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t());
        return zz_mod(q.get_num() * inv, m).get_si();
    };
    if (p_ != 2) {
        int s = 1;
        long eps = ((p_ - 1) / 2) % 2;  // 1 iff p = 3 mod 4
        if ((al % 2 != 0) && (bl % 2 != 0) && eps) s = -s;
        long um = unit_mod(u, p_), wm = unit_mod(w, p_);
        if (bl % 2 != 0 && legendre(ZZ(um), p_) == -1) s = -s;
        if (al % 2 != 0 && legendre(ZZ(wm), p_) == -1) s = -s;
        return s;
    }
    // p = 2 (Serre): <a,b> = (-1)^(e(u)e(w) + al*o(w) + bl*o(u))
    long um = unit_mod(u, 8), wm = unit_mod(w, 8);
    auto e2 = [](long t) { return ((t - 1) / 2) % 2; };
    auto o2 = [](long t) { return ((t * t - 1) / 8) % 2; };
    long ex = e2(um) * e2(wm) + al * o2(wm) + bl * o2(um);
    return ex % 2 == 0 ? 1 : -1;
}

bool PAdicContext::is_square_unit(const QQ& u) const {
    if (p_ == 2) {
        ZZ m(8), inv;
        mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), m.get_mpz_t());
        return zz_mod(u.get_num() * inv, m) == 1;
    }
    ZZ m(p_), inv;
    mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), m.get_mpz_t());
    return legendre(zz_mod(u.get_num() * inv, m), p_) == 1;
}

bool PAdicContext::is_square(const QQ& x) const {
    if (x == 0) throw std::domain_error("is_square: zero");
    if (val(x) % 2 != 0) return false;
    return is_square_unit(unit_part(x, p_));
}

int PAdicContext::square_class_index(const QQ& x) const {
    for (size_t i = 0; i < reps_.size(); ++i)
        if (is_square(x / reps_[i])) return static_cast<int>(i);
    throw std::logic_error("square_class_index: no class matched");
}

int PAdicContext::class_mul(int i, int j) const { return mul_table_[i][j]; }

QQ PAdicContext::unit_class_additive_measure(int i) const {
    if (i >= unit_class_count()) throw std::invalid_argument("not a unit class");
    // additive measure of units is (1 - 1/p), split evenly across unit classes
    return QQ(p_ - 1, p_) / unit_class_count();
}

int hilbert_real(const QQ& a, const QQ& b) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_real: zero argument");
    return (a < 0 && b < 0) ? -1 : 1;
}

QQ padic_sqrt_approx(const PAdicContext& ctx, const QQ& y, long digits) {
    long p = ctx.p();
    if (!ctx.is_square(y)) throw std::domain_error("padic_sqrt: not a square");
    long v = ctx.val(y);
    QQ u = unit_part(y, p);
    long prec = std::max(digits, p == 2 ? 5L : 2L);
    ZZ mod = zz_pow(ZZ(p), static_cast<unsigned long>(prec));
    ZZ inv;
    mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), mod.get_mpz_t());
    ZZ ur = zz_mod(u.get_num() * inv, mod);

    ZZ x;
    if (p != 2) {
        // root mod p, then Newton lifting
        long s = 0;
        for (long c = 1; c < p; ++c)
            if (zz_mod(ZZ(c) * c - ur, ZZ(p)) == 0) { s = c; break; }
        if (s == 0) throw std::logic_error("padic_sqrt: no root mod p");
        x = s;
        long k = 1;
        while (k < prec) {
            k = std::min(2 * k, prec);
            ZZ mk = zz_pow(ZZ(p), static_cast<unsigned long>(k));
            ZZ two_x_inv;
            mpz_invert(two_x_inv.get_mpz_t(), ZZ(2 * x % mk).get_mpz_t(), mk.get_mpz_t());
            x = zz_mod(x - (x * x - ur) * two_x_inv, mk);
        }
    } else {
        // u = 1 mod 8; lift bit by bit
        x = 1;
        for (long k = 3; k < prec; ++k) {
            ZZ mk1 = zz_pow(ZZ(2), static_cast<unsigned long>(k + 1));
            if (zz_mod(x * x - ur, mk1) != 0) x += zz_pow(ZZ(2), static_cast<unsigned long>(k - 1));
        }
    }
    return QQ(x) * qq_pow(p, v / 2);
}

} // namespace lharm
