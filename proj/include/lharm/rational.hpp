#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace lharm {

using ZZ = mpz_class;
using QQ = mpq_class;

inline ZZ zz_pow(const ZZ& b, unsigned long e) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// p^e for e of either sign
inline QQ qq_pow(long p, long e) {
    ZZ pe = zz_pow(ZZ(p), static_cast<unsigned long>(e >= 0 ? e : -e));
    return e >= 0 ? QQ(pe) : QQ(1, pe);
}

// mpq_class does not canonicalize (num, den) constructor arguments; all
// helpers below normalize defensively so callers may pass raw fractions
inline QQ canon(const QQ& x) {
    QQ y = x;
    y.canonicalize();
    return y;
}

// p-adic valuation of a nonzero rational
inline long valuation(const QQ& x0, long p) {
    QQ x = canon(x0);
    if (x == 0) throw std::domain_error("valuation of zero");
    long v = 0;
    ZZ n = x.get_num(), d = x.get_den(), q;
    ZZ zp(p);
    while (mpz_divisible_p(n.get_mpz_t(), zp.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), zp.get_mpz_t());
        ++v;
    }
    while (mpz_divisible_p(d.get_mpz_t(), zp.get_mpz_t())) {
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), zp.get_mpz_t());
        --v;
    }
    return v;
}

// x / p^v(x), the unit part
inline QQ unit_part(const QQ& x0, long p) {
    QQ x = canon(x0);
    return QQ(x / qq_pow(p, valuation(x, p)));
}

// Canonical representative of x mod p^n O, i.e. the unique finite digit
// expansion sum_{i=v}^{n-1} a_i p^i congruent to x.  Returns 0 when x lies
// in p^n O (in particular for x = 0).
inline QQ canonical_mod(const QQ& x0, long p, long n) {
    QQ x = canon(x0);
    if (x == 0) return QQ(0);
    long v = valuation(x, p);
    if (v >= n) return QQ(0);
    // x = p^v * a/b with a,b prime to p; representative m*p^v, m = a/b mod p^(n-v)
    QQ u = unit_part(x, p);
    ZZ mod = zz_pow(ZZ(p), static_cast<unsigned long>(n - v));
    ZZ binv;
    if (mpz_invert(binv.get_mpz_t(), u.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("canonical_mod: denominator not invertible");
    ZZ m = (u.get_num() % mod) * binv % mod;
    if (m < 0) m += mod;
    QQ r = QQ(m) * qq_pow(p, v);
    r.canonicalize();
    return r;
}

// kronecker/legendre symbol (a|p) for odd prime p
inline int legendre(const ZZ& a, long p) {
    return mpz_kronecker_ui(a.get_mpz_t(), static_cast<unsigned long>(p)) >= 0
               ? mpz_kronecker_ui(a.get_mpz_t(), static_cast<unsigned long>(p))
               : -1;
}

inline ZZ zz_mod(const ZZ& a, const ZZ& m) {
    ZZ r = a % m;
    if (r < 0) r += m;
    return r;
}

inline std::string qq_str(const QQ& x) { return x.get_str(); }

} // namespace lharm
