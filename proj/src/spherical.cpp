#include "lharm/spherical.hpp"

#include <cmath>
#include <complex>

namespace lharm {

namespace {

RatFunc alpha_pm(long p, long e) { return RatFunc::alpha_pow(p, e); }

// A = (1 - alpha Y)/(1 - alpha^2), B = (1 - alpha^-1 Y)/(1 - alpha^-2)
RatFunc sph_A(long p) {
    RatFunc one = RatFunc::one(p);
    return (one - RatFunc::alpha(p) * RatFunc::Y(p)) / (one - alpha_pm(p, 2));
}
RatFunc sph_B(long p) {
    RatFunc one = RatFunc::one(p);
    return (one - alpha_pm(p, -1) * RatFunc::Y(p)) / (one - alpha_pm(p, -2));
}

// S1 = (1-1/p) * [A^2/(1 - alpha^-2/p^2) + 2AB/(1 - 1/p^2) + B^2/(1 - alpha^2/p^2)]
RatFunc sl2t_S1(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc A = sph_A(p), B = sph_B(p);
    RatFunc t2 = RatFunc::from_qq(p, QQ(1, p * p));
    RatFunc S = A * A / (one - t2 * alpha_pm(p, -2)) +
                RatFunc::from_qq(p, QQ(2)) * A * B / (one - t2) +
                B * B / (one - t2 * alpha_pm(p, 2));
    return RatFunc::from_qq(p, QQ(p - 1, p)) * S;
}

} // namespace

RatFunc gl2_whittaker(long p, long m) {
    if (m < 0) return RatFunc::zero(p);
    RatFunc num = alpha_pm(p, m + 1) - alpha_pm(p, -m - 1);
    RatFunc den = RatFunc::alpha(p) - alpha_pm(p, -1);
    RatFunc ym = RatFunc::one(p);
    for (long i = 0; i < m; ++i) ym *= RatFunc::Y(p);
    return ym * num / den;
}

RatFunc gl2_l_adjoint_at_1(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc pinv = RatFunc::from_qq(p, QQ(1, p));
    return one / ((one - alpha_pm(p, 2) * pinv) * (one - pinv) * (one - alpha_pm(p, -2) * pinv));
}

RatFunc zeta_p_at(long p, long s_numer_twice) {
    RatFunc one = RatFunc::one(p);
    return one / (one - RatFunc::p_pow(p, QQ(s_numer_twice, 2)));
}

RatFunc gl2_l_standard_half(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc Y = RatFunc::Y(p);
    return one / ((one - RatFunc::alpha(p) * Y) * (one - alpha_pm(p, -1) * Y));
}

CvIdentityReport gl2_cv_identity(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc t = RatFunc::from_qq(p, QQ(1, p));
    // sum_m t^m s_m(alpha)^2 = [a^2/(1-t a^2) - 2/(1-t) + a^-2/(1-t a^-2)]/(a - a^-1)^2
    RatFunc S = (alpha_pm(p, 2) / (one - t * alpha_pm(p, 2)) -
                 RatFunc::from_qq(p, QQ(2)) / (one - t) +
                 alpha_pm(p, -2) / (one - t * alpha_pm(p, -2))) /
                ((RatFunc::alpha(p) - alpha_pm(p, -1)) * (RatFunc::alpha(p) - alpha_pm(p, -1)));
    RatFunc integral = RatFunc::from_qq(p, QQ(p - 1, p)) * S;  // d^x measure of shells
    CvIdentityReport rep;
    rep.product = zeta_p_at(p, 4) / gl2_l_adjoint_at_1(p) * integral;
    rep.exact_one = (rep.product == one);

    // truncated numeric cross-check, m <= 60, alpha on the unit circle
    double tt = 1.0 / p;
    std::complex<double> a = std::polar(1.0, 0.7231);
    auto sm = [&](long m) {
        return (std::pow(a, m + 1) - std::pow(a, -m - 1)) / (a - 1.0 / a);
    };
    std::complex<double> acc = 0;
    for (long m = 0; m <= 60; ++m) acc += std::pow(tt, m) * sm(m) * sm(m);
    std::complex<double> closed = S.embed(0.0, a);
    rep.truncation_error = std::abs(acc - closed);
    double bound = 0;
    for (long m = 61; m <= 400; ++m) bound += std::pow(tt, m) * (m + 1.0) * (m + 1.0);
    rep.truncation_bound = bound + 1e-12;
    return rep;
}

MomentIdentityReport gl2_moment_identity(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc XY = RatFunc::X(p) * RatFunc::Y(p);
    RatFunc S = (alpha_pm(p, 2) / (one - XY * alpha_pm(p, 2)) -
                 RatFunc::from_qq(p, QQ(2)) / (one - XY) +
                 alpha_pm(p, -2) / (one - XY * alpha_pm(p, -2))) /
                ((RatFunc::alpha(p) - alpha_pm(p, -1)) * (RatFunc::alpha(p) - alpha_pm(p, -1)));
    MomentIdentityReport rep;
    rep.moment = S;
    RatFunc zeta_s_half = one / (one - XY);
    RatFunc zeta_2s1 = one / (one - RatFunc::X(p) * RatFunc::X(p) * RatFunc::from_qq(p, QQ(1, p)));
    RatFunc l_ad_shift =
        one / ((one - XY * alpha_pm(p, 2)) * (one - XY) * (one - XY * alpha_pm(p, -2)));
    RatFunc l_ad_noshift = one / ((one - RatFunc::X(p) * alpha_pm(p, 2)) * (one - RatFunc::X(p)) *
                                  (one - RatFunc::X(p) * alpha_pm(p, -2)));
    rep.matches_shifted = (S == l_ad_shift * zeta_s_half / zeta_2s1);
    rep.matches_unshifted = (S == l_ad_noshift * zeta_s_half / zeta_2s1);

    // alpha = 1 degeneration: sum (m+1)^2 t^m = (1+t)/(1-t)^3
    double t = 0.31;
    double acc = 0;
    for (long m = 0; m <= 2000; ++m) acc += (m + 1.0) * (m + 1.0) * std::pow(t, m);
    rep.alpha1_check_error = std::abs(acc - (1 + t) / std::pow(1 - t, 3));
    return rep;
}

RatFunc sl2t_whittaker(long p, const QQ& a) {
    PAdicContext ctx(p);
    if (a == 0) throw std::domain_error("sl2t_whittaker: a must be nonzero");
    long v = ctx.val(a);
    if (v < 0) return RatFunc::zero(p);  // 1_O(a) support
    RatFunc val = sph_A(p) * alpha_pm(p, -v) + sph_B(p) * alpha_pm(p, v);
    return RatFunc::from_cyc(p, chi_psi(ctx, a)) * RatFunc::from_qq(p, qq_pow(p, -v)) * val;
}

RatFunc sl2t_matcoef(long p, const QQ& a) {
    PAdicContext ctx(p);
    if (a == 0) throw std::domain_error("sl2t_matcoef: a must be nonzero");
    long v = ctx.val(a);
    if (v < 0) throw std::domain_error("sl2t_matcoef: formula valid only for |a| <= 1");
    RatFunc one = RatFunc::one(p);
    RatFunc pinv = RatFunc::from_qq(p, QQ(1, p));
    RatFunc bracket = alpha_pm(p, v) * (one - alpha_pm(p, -2) * pinv) / (one - alpha_pm(p, -2)) +
                      alpha_pm(p, -v) * (one - alpha_pm(p, 2) * pinv) / (one - alpha_pm(p, 2));
    return RatFunc::from_cyc(p, chi_psi(ctx, a)) * RatFunc::from_qq(p, qq_pow(p, -v)) /
           (one + pinv) * bracket;
}

CSigmaReport sl2t_csigma_identity(long p) {
    RatFunc one = RatFunc::one(p);
    RatFunc S1 = sl2t_S1(p);
    CSigmaReport rep;
    rep.c_claimed = gl2_l_standard_half(p) * zeta_p_at(p, 4) / gl2_l_adjoint_at_1(p);
    QQ half_two_abs = (p == 2) ? QQ(1, 4) : QQ(1, 2);  // |2|/2
    rep.pairing_term = RatFunc::from_qq(p, half_two_abs) * rep.c_claimed * S1;
    rep.residual = one - rep.pairing_term;
    rep.c_recovered = RatFunc::from_qq(p, QQ(1) / half_two_abs) / S1;
    rep.matches_claimed = rep.residual.is_zero();
    return rep;
}

WhittakerExpansion expansion_from_spherical(const PAdicContext* ctx, bool paper_constant) {
    long p = ctx->p();
    int C = ctx->unit_class_count();
    RatFunc A = sph_A(p), B = sph_B(p);
    QQ t(1, p);
    std::vector<ShellFunction::Strand> tail(3);
    tail[0].ratio = RatFunc::from_qq(p, t) * alpha_pm(p, -2);
    tail[0].coeff.assign(C, A * A);
    tail[1].ratio = RatFunc::from_qq(p, t);
    tail[1].coeff.assign(C, RatFunc::from_qq(p, QQ(2)) * A * B);
    tail[2].ratio = RatFunc::from_qq(p, t) * alpha_pm(p, 2);
    tail[2].coeff.assign(C, B * B);
    ShellFunction W(ctx, 0, 0, {}, std::move(tail));

    RatFunc c = paper_constant
                    ? gl2_l_standard_half(p) * zeta_p_at(p, 4) / gl2_l_adjoint_at_1(p)
                    : RatFunc::from_qq(p, (p == 2) ? QQ(4) : QQ(2)) / sl2t_S1(p);
    WhittakerExpansion e{ctx, {}};
    e.terms.push_back({QQ(1), c, std::move(W)});
    return e;
}

} // namespace lharm
