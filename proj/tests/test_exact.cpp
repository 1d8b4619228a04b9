#include <doctest.h>

#include <random>

#include "lharm/zeta.hpp"

using namespace lharm;

TEST_CASE("cyclotomic basics") {
    // zeta_4^2 = -1
    Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
    CHECK(i * i == Cyclotomic(QQ(-1)));
    // conj(zeta_8) = zeta_8^7
    Cyclotomic z8 = Cyclotomic::root_of_unity(8, 1);
    CHECK(z8.conj() == Cyclotomic::root_of_unity(8, 7));
    // embed(zeta_3) ~ -1/2 + 0.8660 i
    auto e = Cyclotomic::root_of_unity(3, 1).embed();
    CHECK(std::abs(e.real() + 0.5) < 1e-12);
    CHECK(std::abs(e.imag() - std::sqrt(3.0) / 2) < 1e-12);
    // sum of all p-th roots is zero
    Cyclotomic s;
    for (int k = 0; k < 7; ++k) s += Cyclotomic::root_of_unity(7, k);
    CHECK(s.is_zero());
    // inverse
    Cyclotomic a = Cyclotomic::root_of_unity(5, 2) + Cyclotomic(QQ(3));
    CHECK(a * a.inverse() == Cyclotomic::one());
    // |zeta| = 1 exactly
    CHECK(z8.norm_sq() == Cyclotomic::one());
    // sqrt(p)^2 = p
    for (long p : {2L, 3L, 5L, 7L}) {
        Cyclotomic r = sqrt_p_cyclotomic(p);
        CHECK(r * r == Cyclotomic(QQ(p)));
    }
}

TEST_CASE("cyclotomic ring axioms on random triples") {
    std::mt19937_64 rng(11);
    auto rand_cyc = [&]() {
        long Ns[] = {3, 4, 5, 8, 9, 12};
        Cyclotomic z;
        for (int t = 0; t < 3; ++t) {
            long N = Ns[rng() % 6];
            z += Cyclotomic::root_of_unity(N, rng() % N) * QQ((long)(rng() % 7) - 3, 1 + rng() % 4);
        }
        return z;
    };
    for (int it = 0; it < 25; ++it) {
        Cyclotomic a = rand_cyc(), b = rand_cyc(), c = rand_cyc();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a.conj().conj() == a);
        auto ea = a.embed(), eb = b.embed();
        auto eab = (a * b).embed();
        CHECK(std::abs(eab - ea * eb) < 1e-10);
    }
}

TEST_CASE("rational function normalization and equality") {
    long p = 3;
    RatFunc X = RatFunc::X(p), one = RatFunc::one(p);
    // (1 - X^3)/(1 - X) == 1 + X + X^2
    RatFunc lhs = (one - X * X * X) / (one - X);
    RatFunc rhs = one + X + X * X;
    CHECK(lhs == rhs);
    CHECK(lhs.num() == rhs.num());  // gcd reduction actually fires
    // (1 - X^2)/(1 - X) == 1 + X
    CHECK((one - X * X) / (one - X) == one + X);
    // Y^2 = 1/p
    RatFunc Y = RatFunc::Y(p);
    CHECK(Y * Y == RatFunc::from_qq(p, QQ(1, p)));
    // alpha * alpha^-1 = 1
    RatFunc al = RatFunc::alpha(p);
    CHECK(al * (one / al) == one);
    // eval (1-X)/(1 - p^-1 X^-1) at X = 1 (finite: 1 - 1/p in denominator)
    RatFunc f = (one - X) / (one - RatFunc::from_qq(p, QQ(1, p)) / X);
    RatFunc v = f.eval_x(Cyclotomic::one());
    CHECK(v.rational_value() == QQ(0));
    // pole detection: same f at X = 1/p has num != 0, den = 0
    CHECK_THROWS_AS(f.eval_x(Cyclotomic(QQ(1, 3))), std::domain_error);
    // removable singularity: (1-X^2)/(1-X) at X = 1 -> 2
    RatFunc g = (one - X * X) / (one - X);
    CHECK(g.eval_x(Cyclotomic::one()).rational_value() == QQ(2));
}

TEST_CASE("ratfunc ring axioms on random triples") {
    std::mt19937_64 rng(7);
    long p = 5;
    auto rand_rf = [&]() {
        RatFunc f = RatFunc::zero(p);
        for (int t = 0; t < 3; ++t) {
            Mono m{(long)(rng() % 5) - 2, (long)(rng() % 3) - 1};
            f += RatFunc(Poly::monomial(p, m, Cyclotomic::root_of_unity(4, rng() % 4),
                                        (int)(rng() % 2)));
        }
        return f;
    };
    for (int it = 0; it < 15; ++it) {
        RatFunc a = rand_rf(), b = rand_rf(), c = rand_rf();
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("psi character") {
    PAdicContext ctx(3);
    CHECK(ctx.psi(QQ(1, 3)) == Cyclotomic::root_of_unity(3, 1));
    CHECK(ctx.psi(QQ(2)) == Cyclotomic::one());
    CHECK(ctx.psi(QQ(1, 9)) == Cyclotomic::root_of_unity(9, 1));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        QQ x = QQ((long)(rng() % 41) - 20, 1 + rng() % 26);
        QQ y = QQ((long)(rng() % 41) - 20, 1 + rng() % 26);
        CHECK(ctx.psi(x + y) == ctx.psi(x) * ctx.psi(y));
    }
}

TEST_CASE("hilbert symbol") {
    CHECK(hilbert_real(QQ(-1), QQ(-1)) == -1);
    CHECK(hilbert_real(QQ(-1), QQ(2)) == 1);
    PAdicContext c3(3), c5(5), c2(2);
    // units at odd p
    CHECK(c3.hilbert(QQ(2), QQ(2)) == 1);
    CHECK(c5.hilbert(QQ(2), QQ(3)) == 1);
    // <p, u> = legendre(u) for odd p
    CHECK(c3.hilbert(QQ(3), QQ(2)) == -1);   // 2 is a non-residue mod 3
    CHECK(c5.hilbert(QQ(5), QQ(2)) == -1);   // 2 is a non-residue mod 5
    CHECK(c5.hilbert(QQ(5), QQ(4)) == 1);
    // bimultiplicative, symmetric, <a,-a>=1 on random inputs
    std::mt19937_64 rng(17);
    std::vector<PAdicContext*> ctxs{&c2, &c3, &c5};
    for (auto* ctx : ctxs) {
        for (int it = 0; it < 40; ++it) {
            auto rnd = [&]() {
                QQ v = QQ((long)(rng() % 60) + 1, 1 + rng() % 30);
                if (rng() % 2) v = -v;
                return v;
            };
            QQ a = rnd(), b = rnd(), c = rnd();
            CHECK(ctx->hilbert(a, b) == ctx->hilbert(b, a));
            CHECK(ctx->hilbert(a, b) * ctx->hilbert(a, c) == ctx->hilbert(a, b * c));
            CHECK(ctx->hilbert(a, -a) == 1);
        }
    }
    // product formula over {2,3,5,7,inf} for {2,3,5,7}-smooth rationals
    PAdicContext c7(7);
    std::vector<PAdicContext*> all{&c2, &c3, &c5, &c7};
    for (int it = 0; it < 60; ++it) {
        auto smooth = [&]() {
            QQ v(1);
            long ps[] = {2, 3, 5, 7};
            for (long q : ps) {
                long e = (long)(rng() % 5) - 2;
                v *= qq_pow(q, e);
            }
            if (rng() % 2) v = -v;
            return v;
        };
        QQ a = smooth(), b = smooth();
        int prod = hilbert_real(a, b);
        for (auto* ctx : all) prod *= ctx->hilbert(a, b);
        CHECK(prod == 1);
    }
}

TEST_CASE("square classes") {
    PAdicContext c3(3), c5(5), c2(2);
    CHECK(c3.square_class_reps() == std::vector<QQ>{QQ(1), QQ(2), QQ(3), QQ(6)});
    CHECK(c5.square_class_reps() == std::vector<QQ>{QQ(1), QQ(2), QQ(5), QQ(10)});
    CHECK(c2.square_class_reps().size() == 8);
    // pairwise ratios are non-squares
    for (auto* ctx : {&c3, &c5, &c2}) {
        const auto& reps = ctx->square_class_reps();
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = 0; j < reps.size(); ++j)
                if (i != j) CHECK(!ctx->is_square(reps[i] / reps[j]));
    }
    // squares in Q_2 are 1 mod 8 on units
    CHECK(c2.is_square(QQ(17)));
    CHECK(!c2.is_square(QQ(3)));
    CHECK(!c2.is_square(QQ(2)));
    CHECK(c2.is_square(QQ(4)));
}

TEST_CASE("bruhat-schwartz fourier involution and plancherel") {
    std::mt19937_64 rng(23);
    for (long p : {2L, 3L, 5L, 7L}) {
        PAdicContext ctx(p);
        auto rand_bs = [&]() {
            BruhatSchwartz f(&ctx);
            int nt = 1 + rng() % 3;
            for (int t = 0; t < nt; ++t) {
                long level = (long)(rng() % 5) - 2;
                QQ center = QQ((long)(rng() % 9) - 4, qq_pow(p, rng() % 3).get_den() *
                                                          qq_pow(p, rng() % 3).get_num());
                Cyclotomic c = Cyclotomic::root_of_unity(8, rng() % 8) * QQ(1 + (long)(rng() % 3));
                f.add_term(c, center, level, QQ((long)(rng() % 5) - 2, 1));
            }
            return f;
        };
        for (int it = 0; it < 10; ++it) {
            BruhatSchwartz f = rand_bs(), g = rand_bs();
            BruhatSchwartz ff = f.fourier().fourier();
            CHECK((ff - f.reflected()).is_zero_function());
            CHECK(f.fourier().inner(g.fourier()) == f.inner(g));
        }
    }
}

TEST_CASE("fourier on standard balls") {
    PAdicContext ctx(5);
    BruhatSchwartz one_O = BruhatSchwartz::indicator(&ctx, QQ(0), 0);
    // FT(1_O) = 1_O
    CHECK((one_O.fourier() - one_O).is_zero_function());
    // FT(1_{pO}) = p^-1 1_{p^-1 O}
    BruhatSchwartz pO = BruhatSchwartz::indicator(&ctx, QQ(0), 1);
    BruhatSchwartz expect = BruhatSchwartz::indicator(&ctx, QQ(0), -1).scaled(Cyclotomic(QQ(1, 5)));
    CHECK((pO.fourier() - expect).is_zero_function());
    // FT(1_{1+pO})(t) = p^-1 psi(t) 1_{p^-1 O}(t)
    BruhatSchwartz sh = BruhatSchwartz::indicator(&ctx, QQ(1), 1);
    BruhatSchwartz want(&ctx);
    want.add_term(Cyclotomic(QQ(1, 5)), QQ(0), -1, QQ(1));
    CHECK((sh.fourier() - want).is_zero_function());
}

TEST_CASE("integrate") {
    PAdicContext ctx(3);
    long p = 3;
    BruhatSchwartz one_O = BruhatSchwartz::indicator(&ctx, QQ(0), 0);
    // additive volume of O
    CHECK(integrate_bs(one_O, Measure::Additive).rational_value() == QQ(1));
    // d^x volume of O^x with unit-normalized measure
    BruhatSchwartz units = BruhatSchwartz::unit_indicator(&ctx);
    CHECK(integrate_bs(units, Measure::UnitNormalized).rational_value() == QQ(1));
    // int_{O \ 0} |x|^s dx/|x| = (1 - 1/p)/(1 - X)
    RatFunc z = integrate_bs(one_O, Measure::Multiplicative, true);
    RatFunc X = RatFunc::X(p), one = RatFunc::one(p);
    CHECK(z == RatFunc::from_qq(p, QQ(p - 1, p)) / (one - X));
    // volume of a ball under additive measure is p^-level
    for (long lvl : {-2L, 0L, 3L}) {
        BruhatSchwartz b = BruhatSchwartz::indicator(&ctx, QQ(2), lvl);
        CHECK(integrate_bs(b, Measure::Additive).rational_value() == qq_pow(p, -lvl));
    }
    // d^x volume of a unit shell p^m O^x is 1 - 1/p for every m
    for (long m : {-2L, 0L, 2L}) {
        BruhatSchwartz sh = units.scaled_arg(qq_pow(p, -m));
        CHECK(integrate_bs(sh, Measure::Multiplicative).rational_value() == QQ(p - 1, p));
    }
    // non-summable: int_O |x|^-1 dx/|x| must throw
    CHECK_THROWS_AS(integrate_bs(one_O, Measure::Multiplicative, false, QQ(-1)),
                    std::domain_error);
}

TEST_CASE("tate zeta basics") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        QuasiCharacter triv = QuasiCharacter::unramified(&ctx, Cyclotomic::one());
        BruhatSchwartz one_O = BruhatSchwartz::indicator(&ctx, QQ(0), 0);
        RatFunc X = RatFunc::X(p), one = RatFunc::one(p);
        CHECK(tate_zeta(one_O, triv) == RatFunc::from_qq(p, QQ(p - 1, p)) / (one - X));
        // ramified character kills 1_{O^x}
        QuasiCharacter ram = QuasiCharacter::ramified_odd(
            &ctx, 1, Cyclotomic::root_of_unity(p - 1, 1), Cyclotomic::one());
        BruhatSchwartz units = BruhatSchwartz::unit_indicator(&ctx);
        CHECK(tate_zeta(units, ram).is_zero());
        // single shell: Z(1_{1+pO}, level-1 chi) = p^-1
        BruhatSchwartz sh = BruhatSchwartz::indicator(&ctx, QQ(1), 1);
        CHECK(tate_zeta(sh, ram) == RatFunc::from_qq(p, QQ(1, p)));
    }
}

TEST_CASE("gamma factor") {
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        RatFunc X = RatFunc::X(p), one = RatFunc::one(p);
        QuasiCharacter triv = QuasiCharacter::unramified(&ctx, Cyclotomic::one());
        GammaData g = gamma_factor(triv);
        // gamma(s) = (1 - X)/(1 - p^-1 X^-1)
        RatFunc expect = (one - X) / (one - RatFunc::from_qq(p, QQ(1, p)) / X);
        CHECK(g.gamma == expect);
        CHECK(g.epsilon == one);
        CHECK(g.gamma == g.epsilon * g.L_1ms_inv / g.L_s);

        // unramified twist: epsilon still 1
        QuasiCharacter tw = QuasiCharacter::unramified(&ctx, Cyclotomic::root_of_unity(4, 1));
        CHECK(gamma_factor(tw).epsilon == one);

        // ramified: gamma is a unit monomial in X times a Gauss sum
        QuasiCharacter ram = QuasiCharacter::ramified_odd(
            &ctx, 1, Cyclotomic::root_of_unity(p - 1, 1), Cyclotomic::one());
        GammaData gr = gamma_factor(ram);
        CHECK(gr.L_s == one);
        CHECK(gr.L_1ms_inv == one);
        // |gamma(1/2)| = 1: evaluate at X = Y...  check via functional equation instead:
        // gamma(s, chi) * gamma(1-s, chi^-1) with psi -> conj should be 1; verified as
        // gamma(s,chi) * conj-dual below in the functional equation suite.
    }
}

TEST_CASE("functional equation residual zero on random functions") {
    std::mt19937_64 rng(41);
    for (long p : {3L, 5L}) {
        PAdicContext ctx(p);
        std::vector<QuasiCharacter> chis;
        chis.push_back(QuasiCharacter::unramified(&ctx, Cyclotomic::one()));
        chis.push_back(QuasiCharacter::unramified(&ctx, Cyclotomic::root_of_unity(6, 1)));
        chis.push_back(QuasiCharacter::ramified_odd(&ctx, 1,
                                                    Cyclotomic::root_of_unity(p - 1, 1),
                                                    Cyclotomic::root_of_unity(4, 1)));
        Cyclotomic pinv(QQ(1, p));
        for (const auto& chi : chis) {
            GammaData g = gamma_factor(chi);
            QuasiCharacter chi_inv = chi.inverse();
            for (int it = 0; it < 5; ++it) {
                BruhatSchwartz f(&ctx);
                int nt = 1 + rng() % 3;
                for (int t = 0; t < nt; ++t)
                    f.add_term(Cyclotomic::root_of_unity(8, rng() % 8),
                               QQ((long)(rng() % 7) - 3, 1 + rng() % 9), (long)(rng() % 4) - 1,
                               QQ((long)(rng() % 3) - 1));
                RatFunc lhs = tate_zeta(f.fourier(), chi_inv).subst_x_monomial(pinv, -1);
                RatFunc rhs = g.gamma * tate_zeta(f, chi);
                CHECK(lhs == rhs);
            }
        }
    }
}
