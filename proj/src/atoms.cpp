#include "lharm/atoms.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace lharm {

namespace {

long cdiv(long a, long b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); }

struct GaussKey {
    long p;
    QQ t, b;
    QQ center;
    long level;
    bool operator<(const GaussKey& o) const {
        return std::tie(p, t, b, center, level) < std::tie(o.p, o.t, o.b, o.center, o.level);
    }
};

std::map<GaussKey, Cyclotomic>& gauss_cache() {
    static std::map<GaussKey, Cyclotomic> c;
    return c;
}
std::mutex cache_mu;

} // namespace

void atoms_clear_cache() {
    std::lock_guard<std::mutex> lk(cache_mu);
    gauss_cache().clear();
}

Cyclotomic unit_char_integral(const PAdicContext& ctx, const QuasiCharacter* chi0, const QQ& b,
                              const QQ& u0, long k, int cls) {
    long p = ctx.p();
    long L = chi0 ? chi0->level() : 0;
    long cls_level = (cls >= 0) ? (p == 2 ? 3 : 1) : 0;
    long M = std::max({k, L, cls_level, 1L});
    long vb = (b == 0) ? M : valuation(b, p);
    if (-vb > M) return Cyclotomic::zero();  // oscillation kills the integral

    ZZ pM = zz_pow(ZZ(p), static_cast<unsigned long>(M));
    long pMl = pM.get_si();
    //  residue of u0 mod p^k (k <= M)
    long u0r = 0;
    bool have_coset = k > 0;
    if (have_coset) {
        QQ c = canonical_mod(u0, p, k);
        // c is a p-integral rational with denominator prime to p and val >= 0
        ZZ m = zz_pow(ZZ(p), static_cast<unsigned long>(k)), inv;
        mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), m.get_mpz_t());
        u0r = zz_mod(c.get_num() * inv, m).get_si();
    }
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;

    Cyclotomic sum = Cyclotomic::zero();
    for (long r = 0; r < pMl; ++r) {
        if (r % p == 0) continue;
        if (have_coset && (r % pk) != (u0r % pk)) continue;
        if (cls >= 0 && ctx.square_class_index(QQ(r)) != cls) continue;
        Cyclotomic v = ctx.psi(b * r);
        if (chi0) v *= chi0->eval_unit(QQ(r));
        sum += v;
    }
    return sum * qq_pow(p, -M);
}

Cyclotomic gauss_ball_integral(const PAdicContext& ctx, const QQ& t, const QQ& b, const Ball& B) {
    long p = ctx.p();
    GaussKey key{p, t, b, B.center, B.level};
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = gauss_cache().find(key);
        if (it != gauss_cache().end()) return it->second;
    }
    long n = B.level;
    const QQ& c = B.center;
    Cyclotomic phase0 = ctx.psi(t * c * c + b * c);
    QQ B2 = b + 2 * t * c;

    Cyclotomic S;
    if (t == 0) {
        bool ok = (B2 == 0) || valuation(B2, p) >= -n;
        S = ok ? Cyclotomic(qq_pow(p, -n)) : Cyclotomic::zero();
    } else {
        long v2 = (p == 2) ? 1 : 0;
        long vt = valuation(t, p);
        long m = std::max(n, cdiv(-vt, 2));
        long k = -m - vt - v2;
        // sample points of (c* + p^k O) cap p^n O modulo p^m, c* = -B2/(2t)
        long base_level = std::max(k, n);
        QQ base(0);
        bool empty = false;
        if (B2 != 0) {
            QQ cstar = -B2 / (2 * t);
            QQ cc = canonical_mod(cstar, p, k);
            if (k <= n) {
                // coset contains p^n O iff cstar in p^k O
                if (cc != 0) empty = true;
                base = 0;
            } else {
                if (cc != 0 && valuation(cc, p) < n) empty = true;
                base = cc;
            }
        }
        if (empty) {
            S = Cyclotomic::zero();
        } else {
            long count = 1;
            for (long i = 0; i < m - base_level; ++i) count *= p;
            Cyclotomic acc = Cyclotomic::zero();
            QQ step = qq_pow(p, base_level);
            for (long j = 0; j < count; ++j) {
                QQ h = base + QQ(j) * step;
                acc += ctx.psi(t * h * h + B2 * h);
            }
            S = acc * qq_pow(p, -m);
        }
    }
    Cyclotomic result = phase0 * S;
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        gauss_cache().emplace(key, result);
    }
    return result;
}

Cyclotomic gauss_class_shell(const PAdicContext& ctx, const QQ& t, long m, int cls) {
    long p = ctx.p();
    // int_{v(x)=m, class cls} psi(t x^2) dx = p^-m int_{units, cls} psi(t p^2m u^2) du
    QQ tp = t * qq_pow(p, 2 * m);
    long vt = (t == 0) ? 1 : valuation(tp, p);
    long cls_level = p == 2 ? 3 : 1;
    if (t == 0 || vt >= 0) {
        // psi trivial on the class set
        return Cyclotomic(ctx.unit_class_additive_measure(cls) * qq_pow(p, -m));
    }
    // translating u by p^c O (c = max(cls_level, ceil(-vt/2))) preserves the
    // class and resolves the quadratic part, so the integral vanishes once the
    // linear part still oscillates: vt + v(2) + c < 0
    if ((p != 2 && vt <= -2) || (p == 2 && vt <= -5)) return Cyclotomic::zero();
    long M = std::max({cls_level, -vt - (p == 2 ? 1 : 0), cdiv(-vt, 2)});
    long pM = 1;
    for (long i = 0; i < M; ++i) pM *= p;
    Cyclotomic sum = Cyclotomic::zero();
    for (long r = 0; r < pM; ++r) {
        if (r % p == 0) continue;
        if (ctx.square_class_index(QQ(r)) != cls) continue;
        sum += ctx.psi(tp * r * r);
    }
    return sum * QQ(1, pM) * qq_pow(p, -m);
}

Cyclotomic gauss_ball_brute(const PAdicContext& ctx, const QQ& t, const QQ& b, const Ball& B) {
    long p = ctx.p();
    long n = B.level;
    long vmin = B.center == 0 ? n : std::min(valuation(B.center, p), n);
    long Mb = (b == 0) ? 0 : -valuation(b, p);
    long Mt = (t == 0) ? 0 : -valuation(t, p);
    long M = std::max({n, Mb, Mt - vmin, cdiv(Mt, 2)});
    if (p == 2) M += 1;
    long count = 1;
    for (long i = 0; i < M - n; ++i) count *= p;
    if (count > 20'000'000) throw std::runtime_error("gauss_ball_brute: refinement too large");
    Cyclotomic sum = Cyclotomic::zero();
    QQ step = qq_pow(p, n);
    for (long j = 0; j < count; ++j) {
        QQ x = B.center + QQ(j) * step;
        sum += ctx.psi(t * x * x + b * x);
    }
    return sum * qq_pow(p, -M);
}

} // namespace lharm
