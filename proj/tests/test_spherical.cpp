#include <doctest.h>

#include "lharm/spherical.hpp"
#include "lharm/zeta.hpp"

using namespace lharm;

namespace {

// build sum of c * Y^ye * alpha^ae monomials (Y^2 folds to 1/p internally)
RatFunc poly_from(long p, const std::vector<std::tuple<long, long, long>>& terms) {
    Poly f(p);
    for (const auto& [c, ye, ae] : terms)
        f.add(Mono{0, ae}, Cyclotomic(QQ(c)), static_cast<int>(ye));
    return RatFunc(f);
}

} // namespace

TEST_CASE("gl2 whittaker values") {
    for (long p : {2L, 3L, 5L, 7L}) {
        RatFunc one = RatFunc::one(p);
        CHECK(gl2_whittaker(p, 0) == one);
        CHECK(gl2_whittaker(p, 1) == RatFunc::Y(p) * (RatFunc::alpha(p) + one / RatFunc::alpha(p)));
        CHECK(gl2_whittaker(p, -1).is_zero());
        CHECK(gl2_whittaker(p, -3).is_zero());
        // Casselman-Shalika recursion oracle: s_{m+1} = (a + a^-1) s_m - s_{m-1}
        RatFunc Yi = one / RatFunc::Y(p);
        auto s = [&](long m) {
            RatFunc ym = one;
            for (long i = 0; i < m; ++i) ym *= Yi;
            return gl2_whittaker(p, m) * ym;
        };
        for (long m = 1; m <= 5; ++m)
            CHECK(s(m + 1) == (RatFunc::alpha(p) + one / RatFunc::alpha(p)) * s(m) - s(m - 1));
    }
}

TEST_CASE("gl2 unramified constant identity") {
    for (long p : {2L, 3L, 5L, 7L}) {
        auto rep = gl2_cv_identity(p);
        CHECK(rep.exact_one);
        CHECK(rep.truncation_error < rep.truncation_bound);
    }
}

TEST_CASE("gl2 moment identity: argument-shift finding") {
    for (long p : {2L, 3L, 5L}) {
        auto rep = gl2_moment_identity(p);
        CHECK(rep.matches_shifted);
        CHECK(!rep.matches_unshifted);
        CHECK(rep.alpha1_check_error < 1e-9);
    }
}

TEST_CASE("metaplectic spherical values at a = 1") {
    for (long p : {3L, 5L, 7L}) {
        CHECK(sl2t_whittaker(p, QQ(1)) == RatFunc::one(p));
        CHECK(sl2t_matcoef(p, QQ(1)) == RatFunc::one(p));
        CHECK(sl2t_whittaker(p, qq_pow(p, -1)).is_zero());
        CHECK_THROWS_AS(sl2t_matcoef(p, qq_pow(p, -1)), std::domain_error);
    }
}

TEST_CASE("metaplectic spherical whittaker at the uniformizer") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        RatFunc one = RatFunc::one(p);
        RatFunc a = RatFunc::alpha(p), Y = RatFunc::Y(p);
        RatFunc expect = RatFunc::from_cyc(p, chi_psi(ctx, QQ(p))) *
                         RatFunc::from_qq(p, QQ(1, p)) *
                         ((one - a * Y) / (one - a * a) / a +
                          (one - Y / a) / (one - one / (a * a)) * a);
        CHECK(sl2t_whittaker(p, QQ(p)) == expect);
    }
}

TEST_CASE("csigma identity: frozen residual") {
    for (long p : {3L, 5L, 7L}) {
        auto rep = sl2t_csigma_identity(p);
        // the delta = 1 data does NOT reproduce the paper constant by itself;
        // the residual is the reported square-class share, frozen from an
        // independent symbolic computation:
        //   num = Y^12 a^2 - Y^11 a^3 - Y^11 a + 3 Y^10 a^2 - 2 Y^8 a^4 + Y^8 a^2
        //         - 2 Y^8 + Y^7 a^3 + Y^7 a - 2 Y^6 a^4 + 2 Y^6 a^2 - 2 Y^6
        //         + Y^5 a^3 + Y^5 a - 2 Y^4 a^4 + Y^4 a^2 - 2 Y^4 + 3 Y^2 a^2
        //         - Y a^3 - Y a + a^2
        //   den = 2 Y^12 a^2 + 4 Y^10 a^2 - 2 Y^8 a^4 + 2 Y^8 a^2 - 2 Y^8
        //         - 4 Y^6 a^4 - 4 Y^6 - 2 Y^4 a^4 + 2 Y^4 a^2 - 2 Y^4
        //         + 4 Y^2 a^2 + 2 a^2
        RatFunc num = poly_from(p, {{1, 12, 2}, {-1, 11, 3}, {-1, 11, 1}, {3, 10, 2},
                                    {-2, 8, 4},  {1, 8, 2},  {-2, 8, 0},  {1, 7, 3},
                                    {1, 7, 1},   {-2, 6, 4}, {2, 6, 2},   {-2, 6, 0},
                                    {1, 5, 3},   {1, 5, 1},  {-2, 4, 4},  {1, 4, 2},
                                    {-2, 4, 0},  {3, 2, 2},  {-1, 1, 3},  {-1, 1, 1},
                                    {1, 0, 2}});
        RatFunc den = poly_from(p, {{2, 12, 2}, {4, 10, 2}, {-2, 8, 4}, {2, 8, 2},
                                    {-2, 8, 0}, {-4, 6, 4}, {-4, 6, 0}, {-2, 4, 4},
                                    {2, 4, 2},  {-2, 4, 0}, {4, 2, 2},  {2, 0, 2}});
        CHECK(rep.residual == num / den);
        CHECK(!rep.matches_claimed);
        CHECK(!rep.residual.is_zero());
        // spot value at alpha = i, q = 4 was hand-checked to 21/34; here check
        // the numeric embedding at alpha = i for this p instead
        std::complex<double> r = rep.residual.embed(0.0, std::complex<double>(0.0, 1.0));
        double q = static_cast<double>(p);
        // at alpha = i the residual simplifies to (3 q^2+2q+3)/(2(q+1)^2) - 1... just
        // check consistency between embed of num/den and the frozen forms
        std::complex<double> r2 = (num / den).embed(0.0, std::complex<double>(0.0, 1.0));
        CHECK(std::abs(r - r2) < 1e-12);
        (void)q;
        // recovered constant satisfies (|2|/2) c_recovered S1 = 1 by construction
        QQ half_two_abs = (p == 2) ? QQ(1, 4) : QQ(1, 2);
        RatFunc S1 = RatFunc::from_qq(p, QQ(1) / half_two_abs) / rep.c_recovered;
        CHECK(RatFunc::from_qq(p, half_two_abs) * rep.c_recovered * S1 == RatFunc::one(p));
    }
}

TEST_CASE("spherical expansion: shape and normalization") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        WhittakerExpansion e = expansion_from_spherical(&ctx);
        REQUIRE(e.terms.size() == 1);
        const auto& W = e.terms[0].W;
        CHECK(W.is_even());
        CHECK(W.tail_summable(QQ(0)));
        // represented matrix coefficient at n = 0 equals (phi0, phi0) = 1
        CHECK(e.eval(QQ(0)) == RatFunc::one(p));
        // with the paper constant instead, the value at 0 is 1 - residual
        WhittakerExpansion ep = expansion_from_spherical(&ctx, true);
        auto cs = sl2t_csigma_identity(p);
        CHECK(ep.eval(QQ(0)) == cs.pairing_term);
    }
}

TEST_CASE("spherical expansion: stable integral matches density") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        WhittakerExpansion e = expansion_from_spherical(&ctx);
        ToroidalDensity d = density_of(e);
        for (QQ a : std::vector<QQ>{QQ(-1), QQ(-4), QQ(-1 * (long)(p * p)),
                                    QQ(-(long)ctx.smallest_nonresidue()), QQ(2 - (long)p)}) {
            if (a == 0) continue;
            auto s = stable_integral(e, a);
            CHECK(s.value == d.eval(a));
            CHECK(s.stabilized_at <= s.predicted_bound);
        }
        // density at -b^2 equals |b|^-1 W(b) c: check at b = 1
        RatFunc expect = e.terms[0].c * e.terms[0].W.value(0, 0);
        CHECK(d.eval(QQ(-1)) == expect);
    }
}

TEST_CASE("spherical expansion feeds the matrix-coefficient identity") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        WhittakerExpansion e = expansion_from_spherical(&ctx);
        BruhatSchwartz Phi = BruhatSchwartz::indicator(&ctx, QQ(0), 0);
        auto rep = mbintegral_check(e, Phi, QQ(1));
        CHECK(rep.hypothesis_ok);
        CHECK(rep.equal);
    }
}
