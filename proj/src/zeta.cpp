#include "lharm/zeta.hpp"

namespace lharm {

RatFunc shell_integral(const BruhatSchwartz& phi, const QuasiCharacter* chi, long measure_shift,
                       long zeta_power) {
    const PAdicContext& ctx = *phi.ctx();
    long p = ctx.p();
    // per-shell weight: W^v with W = chi-shell-part * p^{-measure_shift} * X^{zeta_power}
    RatFunc W = RatFunc::one(p);
    if (chi) W *= chi->shell_weight();
    if (measure_shift) W *= RatFunc::from_qq(p, qq_pow(p, -measure_shift));
    if (zeta_power) W *= RatFunc::x_pow(p, zeta_power);

    auto wpow = [&](long v) {
        RatFunc r = RatFunc::one(p);
        RatFunc base = W;
        long k = v;
        if (k < 0) {
            base = RatFunc::one(p) / W;
            k = -k;
        }
        for (long i = 0; i < k; ++i) r *= base;
        return r;
    };

    RatFunc total = RatFunc::zero(p);
    for (const auto& t : phi.terms()) {
        if (t.ball.center != 0) {
            long v = valuation(t.ball.center, p);
            if (v >= t.ball.level) throw std::logic_error("non-canonical ball center");
            QQ c_unit = t.ball.center / qq_pow(p, v);
            Cyclotomic atom = unit_char_integral(ctx, chi, t.phase * qq_pow(p, v), c_unit,
                                                 t.ball.level - v);
            total += wpow(v) * RatFunc::from_cyc(p, t.coeff * atom);
        } else {
            long n = t.ball.level;
            long va = (t.phase == 0) ? n : valuation(t.phase, p);
            long vstar = std::max(n, -va);
            for (long v = n; v < vstar; ++v) {
                Cyclotomic atom =
                    unit_char_integral(ctx, chi, t.phase * qq_pow(p, v), QQ(1), 0);
                if (!atom.is_zero()) total += wpow(v) * RatFunc::from_cyc(p, t.coeff * atom);
            }
            // stable part: psi trivial on the shell from v* on
            Cyclotomic tail_atom = (chi && chi->level() > 0)
                                       ? Cyclotomic::zero()
                                       : Cyclotomic(QQ(p - 1, p));
            if (!tail_atom.is_zero()) {
                RatFunc r = W;
                if (r == RatFunc::one(p))
                    throw std::domain_error(
                        "non-summable tail: shell ratio is identically 1 (exponent -1)");
                RatFunc tail = wpow(vstar) / (RatFunc::one(p) - r);
                total += tail * RatFunc::from_cyc(p, t.coeff * tail_atom);
            }
        }
    }
    return total;
}

RatFunc tate_zeta(const BruhatSchwartz& phi, const QuasiCharacter& chi) {
    if (chi.symbolic())
        throw std::invalid_argument("tate_zeta: character exponent is the zeta variable already");
    return shell_integral(phi, &chi, 0, 1);
}

RatFunc integrate_bs(const BruhatSchwartz& f, Measure measure, bool symbolic_weight,
                     const QQ& fixed_weight) {
    const PAdicContext& ctx = *f.ctx();
    long p = ctx.p();
    long shift = (measure == Measure::Additive) ? 1 : 0;
    BruhatSchwartz fc = f;
    fc.canonicalize();  // 1_{O^x}-style cancellations remove spurious 0-balls
    bool has_zero_ball = false;
    for (const auto& t : fc.terms())
        if (t.ball.center == 0) has_zero_ball = true;
    if (!symbolic_weight && has_zero_ball && measure != Measure::Additive) {
        // shells near 0 carry ratio p^{-(w + shift)}; need w + shift > 0
        if (!(fixed_weight + shift > 0))
            throw std::domain_error("non-summable tail: weight exponent " + fixed_weight.get_str() +
                                    " makes the shell ratio >= 1");
    }
    if (!symbolic_weight && fixed_weight == 0 && measure == Measure::Additive) {
        return RatFunc::from_cyc(p, f.integral());
    }
    QuasiCharacter w = QuasiCharacter::unramified(f.ctx(), Cyclotomic::one(), fixed_weight,
                                                  symbolic_weight);
    RatFunc r = shell_integral(fc, &w, shift, 0);
    if (measure == Measure::UnitNormalized) r /= RatFunc::from_qq(p, QQ(p - 1, p));
    return r;
}

RatFunc fourier_phi_chi(const BruhatSchwartz& phi, const QuasiCharacter& chi, const QQ& x) {
    // int phi(y) psi(x y) chi(y) dy  (additive measure)
    if (!chi.symbolic() && !(chi.exponent() > QQ(-1))) {
        throw std::domain_error("fourier_phi_chi: non-summable (e(chi) <= -1)");
    }
    return shell_integral(phi.phase_shifted(x), &chi, 1, 0);
}

RatFunc l_factor(const QuasiCharacter& chi) {
    long p = chi.ctx()->p();
    if (!chi.unramified_finite()) return RatFunc::one(p);
    RatFunc w = chi.shell_weight();  // chi(p) p^{-s0} (X if symbolic)
    return RatFunc::one(p) / (RatFunc::one(p) - w * RatFunc::X(p));
}

GammaData gamma_factor(const QuasiCharacter& chi) {
    if (chi.symbolic()) throw std::invalid_argument("gamma_factor: fixed exponents only");
    const PAdicContext& ctx = *chi.ctx();
    long p = ctx.p();
    const PAdicContext* cp = chi.ctx();
    long L = chi.level();

    std::vector<BruhatSchwartz> tests;
    if (L == 0) {
        tests.push_back(BruhatSchwartz::indicator(cp, QQ(0), 0));
        tests.push_back(BruhatSchwartz::unit_indicator(cp));
        tests.push_back(BruhatSchwartz::indicator(cp, QQ(0), 1));
    } else {
        long pL = 1;
        for (long i = 0; i < L; ++i) pL *= p;
        tests.push_back(BruhatSchwartz::indicator(cp, QQ(1), L));
        long u = (p == 2) ? std::max<long>(3, pL - 1) : ctx.smallest_nonresidue();
        tests.push_back(BruhatSchwartz::indicator(cp, QQ(u), L));
        tests.push_back(BruhatSchwartz::indicator(cp, QQ(p), L + 1));
    }

    QuasiCharacter chi_inv = chi.inverse();
    Cyclotomic pinv(QQ(1, p));
    bool have = false;
    RatFunc gamma;
    for (const auto& phi : tests) {
        RatFunc zn = tate_zeta(phi, chi);
        if (zn.is_zero()) continue;
        RatFunc zd = tate_zeta(phi.fourier(), chi_inv).subst_x_monomial(pinv, -1);
        RatFunc g = zd / zn;
        if (!have) {
            gamma = g;
            have = true;
        } else if (!(g == gamma)) {
            throw std::logic_error("gamma factor depends on the test function");
        }
    }
    if (!have) throw std::logic_error("gamma factor: all canonical test functions degenerate");

    GammaData d{chi, l_factor(chi), l_factor(chi_inv).subst_x_monomial(pinv, -1), gamma,
                RatFunc::one(p)};
    d.epsilon = d.gamma * d.L_s / d.L_1ms_inv;
    return d;
}

AsymptoticReport asymptotic_identity_check(const BruhatSchwartz& phi, const QuasiCharacter& chi,
                                           const QQ& x) {
    const PAdicContext& ctx = *phi.ctx();
    long p = ctx.p();
    if (chi.symbolic()) throw std::invalid_argument("fixed exponents only");
    if (!(chi.exponent() > QQ(-1))) throw std::domain_error("requires e(chi) > -1");
    AsymptoticReport rep;
    long Lc = std::max(chi.level(), 1L);
    BruhatSchwartz hat = phi.fourier();
    rep.support_ok = hat.support_inside(QQ(0), ctx.val(x) + Lc);
    if (!rep.support_ok) return rep;

    rep.lhs = fourier_phi_chi(phi, chi, x);
    QuasiCharacter chi_inv = chi.inverse();
    RatFunc gamma0 = gamma_factor(chi_inv).gamma.eval_x(Cyclotomic::one());
    RatFunc rhs = RatFunc::from_cyc(p, phi.eval(QQ(0))) * gamma0 * chi_inv.eval_full(x) *
                  RatFunc::from_qq(p, qq_pow(p, ctx.val(x)));
    rep.rhs = rhs;
    rep.equal = (rep.lhs == rep.rhs);
    return rep;
}

AsymptoticReport asymptotic_convolution_check(const BruhatSchwartz& phi, const QuasiCharacter& chi,
                                              const QQ& x) {
    const PAdicContext& ctx = *phi.ctx();
    long p = ctx.p();
    if (chi.symbolic()) throw std::invalid_argument("fixed exponents only");
    AsymptoticReport rep;
    long Lc = std::max(chi.level(), 1L);
    BruhatSchwartz hat = phi.fourier();
    rep.support_ok = hat.support_inside(QQ(0), ctx.val(x) + Lc);
    if (!rep.support_ok) return rep;

    // rho(y) = hat(phi)(x - y); the integral int rho chi^-1(y) |y|^-1 dy is a
    // d^x-integral of rho against chi^-1
    BruhatSchwartz rho = hat.reflected().translated(-x);
    QuasiCharacter chi_inv = chi.inverse();
    rep.lhs = shell_integral(rho, &chi_inv, 0, 0);
    rep.rhs = RatFunc::from_cyc(p, phi.eval(QQ(0))) * chi_inv.eval_full(x) *
              RatFunc::from_qq(p, qq_pow(p, ctx.val(x)));
    rep.equal = (rep.lhs == rep.rhs);
    return rep;
}

} // namespace lharm
