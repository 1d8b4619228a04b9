#include "lharm/fourier.hpp"

#include <map>
#include <mutex>

namespace lharm {

Cyclotomic quad_fourier(const BruhatSchwartz& phi, const QQ& t) {
    Cyclotomic s = Cyclotomic::zero();
    for (const auto& term : phi.terms())
        s += term.coeff * gauss_ball_integral(*phi.ctx(), t, term.phase, term.ball);
    return s;
}

Cyclotomic quad_fourier_brute(const BruhatSchwartz& phi, const QQ& t) {
    Cyclotomic s = Cyclotomic::zero();
    for (const auto& term : phi.terms())
        s += term.coeff * gauss_ball_brute(*phi.ctx(), t, term.phase, term.ball);
    return s;
}

namespace {
long cdiv(long a, long b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); }

std::map<std::pair<long, QQ>, Cyclotomic>& weil_cache() {
    static std::map<std::pair<long, QQ>, Cyclotomic> c;
    return c;
}
std::mutex weil_mu;
} // namespace

Cyclotomic weil_index(const PAdicContext& ctx, const QQ& a) {
    if (a == 0) throw std::domain_error("weil_index: zero argument");
    long p = ctx.p();
    {
        std::lock_guard<std::mutex> lk(weil_mu);
        auto it = weil_cache().find({p, a});
        if (it != weil_cache().end()) return it->second;
    }
    long m = ctx.val(a);
    long cshift = (p == 2) ? 3 : 1;
    long n = std::max(cdiv(m + cshift, 2) + 1, 1L);
    Cyclotomic I = gauss_ball_integral(ctx, a, QQ(0), Ball{QQ(0), -n});
    Cyclotomic I2 = gauss_ball_integral(ctx, a, QQ(0), Ball{QQ(0), -n - 1});
    if (!(I == I2)) throw std::logic_error("weil_index: truncations did not stabilize");

    // |I| = p^{-j/2}; normalize to unit modulus
    Cyclotomic nsq = I.norm_sq();
    if (!nsq.is_rational()) throw std::logic_error("weil_index: |I|^2 not rational");
    QQ r = nsq.rational_value();
    if (r == 0) throw std::logic_error("weil_index: vanishing integral");
    long j = -valuation(r, p);
    if (!(r * qq_pow(p, j) == 1)) throw std::logic_error("weil_index: |I|^2 not a power of p");
    long q = (j >= 0) ? j / 2 : -((-j + 1) / 2);  // floor(j/2)
    Cyclotomic phase = I * qq_pow(p, q);
    if (j % 2 != 0) phase = phase * sqrt_p_cyclotomic(p);
    if (!(phase.norm_sq() == Cyclotomic::one()))
        throw std::logic_error("weil_index: normalization failed");
    {
        std::lock_guard<std::mutex> lk(weil_mu);
        weil_cache().emplace(std::make_pair(p, a), phase);
    }
    return phase;
}

Cyclotomic chi_psi(const PAdicContext& ctx, const QQ& a) {
    return weil_index(ctx, a) * weil_index(ctx, QQ(1)).conj();
}

Cyclotomic weil_gamma_diag(const PAdicContext& ctx, const std::vector<QQ>& diag) {
    Cyclotomic g = Cyclotomic::one();
    for (const QQ& d : diag) g *= weil_index(ctx, d);
    return g;
}

} // namespace lharm
