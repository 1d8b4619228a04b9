#include "lharm/weilrep.hpp"

#include <array>
#include <map>
#include <sstream>

namespace lharm {

namespace {

using Mat3 = std::array<std::array<QQ, 3>, 3>;

// q(X) = -det X for X = x0 e0 + x+ e+ + x- e-  (computed, not hardcoded)
QQ qform(const QQ& x0, const QQ& xp, const QQ& xm) {
    // X = [[x0, x+], [x-, -x0]]
    QQ det = x0 * (-x0) - xp * xm;
    return -det;
}

// gamma(psi, V) from an orthogonal basis of (V, q)
Cyclotomic gamma_V(const PAdicContext& ctx) {
    // f1 = e0, f2 = e+ + e-, f3 = e+ - e-: mutually orthogonal for q
    std::vector<QQ> diag{qform(QQ(1), QQ(0), QQ(0)), qform(QQ(0), QQ(1), QQ(1)),
                         qform(QQ(0), QQ(1), QQ(-1))};
    return weil_gamma_diag(ctx, diag);
}

QuadPhase quad_subst(const QuadPhase& Q, const Mat3& L) {
    // Q'(X) = Q(L X): S' = L^T S L, l' = L^T l with S the symmetric matrix
    QQ S[3][3] = {{Q.q00, Q.q0p / 2, Q.q0m / 2},
                  {Q.q0p / 2, Q.qpp, Q.qpm / 2},
                  {Q.q0m / 2, Q.qpm / 2, Q.qmm}};
    QQ l[3] = {Q.l0, Q.lp, Q.lm};
    QQ S2[3][3], l2[3];
    for (int i = 0; i < 3; ++i) {
        l2[i] = 0;
        for (int k = 0; k < 3; ++k) l2[i] += L[k][i] * l[k];
        for (int j = 0; j < 3; ++j) {
            S2[i][j] = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) S2[i][j] += L[a][i] * S[a][b] * L[b][j];
        }
    }
    QuadPhase R;
    R.q00 = S2[0][0];
    R.qpp = S2[1][1];
    R.qmm = S2[2][2];
    R.q0p = 2 * S2[0][1];
    R.q0m = 2 * S2[0][2];
    R.qpm = 2 * S2[1][2];
    R.l0 = l2[0];
    R.lp = l2[1];
    R.lm = l2[2];
    return R;
}

Ball ball_scale_arg(const PAdicContext& ctx, const Ball& B, const QQ& s) {
    // {x : s x in B}
    long v = valuation(s, ctx.p());
    return Ball{canonical_mod(B.center / s, ctx.p(), B.level - v), B.level - v};
}

struct ExtA {
    Ball sup;
    QQ qcoef, lcoef;
    Cyclotomic cst;
};

// I(x) = int_B psi(t y^2 + (l + 2x) y) dy as a list of cst psi(q x^2 + c x)
// pieces on balls
std::vector<ExtA> ext_gauss(const PAdicContext& ctx, const Ball& B, const QQ& t, const QQ& l) {
    long p = ctx.p();
    long v2 = (p == 2) ? 1 : 0;
    long n = B.level;
    const QQ& c = B.center;
    std::vector<ExtA> out;
    if (t == 0 || valuation(t, p) + 2 * n >= 0) {
        QQ beta = l + 2 * t * c;
        Ball sup{canonical_mod(-beta / 2, p, -n - v2), -n - v2};
        Cyclotomic cst = ctx.psi(t * c * c + l * c) * qq_pow(p, -n);
        out.push_back({sup, QQ(0), 2 * c, cst});
        return out;
    }
    long vt = valuation(t, p);
    QQ beta = l + 2 * t * c;
    long L = n + vt;  // support: v(x + beta/2) >= L
    QQ xstar = canonical_mod(-beta / 2, p, L);
    QQ qcoef = QQ(-1) / t;
    QQ lcoef = 2 * c - beta / t;
    auto scalar = [&](const QQ& x) { return gauss_ball_integral(ctx, t, l + 2 * x, B); };
    auto phase = [&](const QQ& x) { return ctx.psi(qcoef * x * x + lcoef * x); };

    for (long Lp = L + v2; Lp <= L + 6; ++Lp) {
        out.clear();
        bool ok = true;
        long cnt = 1;
        for (long i = 0; i < Lp - L; ++i) cnt *= p;
        for (long j = 0; j < cnt && ok; ++j) {
            QQ xc = xstar + QQ(j) * qq_pow(p, L);
            Cyclotomic base = scalar(xc);
            Cyclotomic cst = base * phase(xc).conj();
            // verify on two more points of the sub-ball
            for (int k = 1; k <= 2 && ok; ++k) {
                QQ xv = xc + QQ(k) * qq_pow(p, Lp);
                if (!(scalar(xv) == cst * phase(xv))) ok = false;
            }
            if (ok && !cst.is_zero())
                out.push_back({Ball{canonical_mod(xc, p, Lp), Lp}, qcoef, lcoef, cst});
        }
        if (!ok) continue;
        // outside the support ball the integral must vanish
        QQ xo = xstar + qq_pow(p, L - 1);
        if (!scalar(xo).is_zero()) throw std::logic_error("ext_gauss: support analysis failed");
        return out;
    }
    throw std::logic_error("ext_gauss: phase structure did not stabilize");
}

struct ExtB {
    Ball sup_p, sup_m;
    QQ bilin, lin_p, lin_m;
    Cyclotomic cst;
};

// J(x+, x-) = int int psi(sigma y+ y- + (lp + x-) y+ + (lm + x+) y-) dy+ dy-
std::vector<ExtB> ext_bilinear(const PAdicContext& ctx, const Ball& Bp, const Ball& Bm,
                               const QQ& sigma, const QQ& lp, const QQ& lm) {
    long p = ctx.p();
    long np = Bp.level, nm = Bm.level;
    const QQ& cp = Bp.center;
    const QQ& cm = Bm.center;
    std::vector<ExtB> out;
    if (sigma == 0) {
        Ball sp{canonical_mod(-lm, p, -nm), -nm};  // from the y- integral: v(lm + x+) >= -nm
        Ball sm{canonical_mod(-lp, p, -np), -np};
        Cyclotomic cst = ctx.psi(lp * cp + lm * cm) * qq_pow(p, -np - nm);
        out.push_back({sp, sm, QQ(0), cm, cp, cst});
        return out;
    }
    long vs = valuation(sigma, p);
    long lambda = -nm - vs;
    if (lambda >= np) {
        // J = p^{-nm-lambda} psi(-(lm + x+)(lp + x-)/sigma) on the balls below
        Ball sp{canonical_mod(-(lm + sigma * cp), p, np + vs), np + vs};
        Ball sm{canonical_mod(-(lp + sigma * cm), p, -lambda), -lambda};
        Cyclotomic cst = ctx.psi(-lm * lp / sigma) * qq_pow(p, -nm - lambda);
        out.push_back({sp, sm, QQ(-1) / sigma, -lp / sigma, -lm / sigma, cst});
        return out;
    }
    Ball sp{canonical_mod(-(lm + sigma * cp), p, lambda + vs), lambda + vs};
    Ball sm{canonical_mod(-(lp + sigma * cm), p, -np), -np};
    Cyclotomic cst = ctx.psi((lp + sigma * cm) * cp + lm * cm) * qq_pow(p, -nm - np);
    out.push_back({sp, sm, QQ(0), cm, cp, cst});
    return out;
}

} // namespace

BruhatSchwartzV BruhatSchwartzV::lattice_indicator(const PAdicContext* ctx) {
    BruhatSchwartzV f(ctx);
    VTerm t;
    t.coeff = RatFunc::one(ctx->p());
    t.b0 = t.bp = t.bm = Ball{QQ(0), 0};
    f.add_term(std::move(t));
    return f;
}

void BruhatSchwartzV::add_term(VTerm t) {
    if (t.coeff.is_zero()) return;
    long p = ctx_->p();
    t.b0.center = canonical_mod(t.b0.center, p, t.b0.level);
    t.bp.center = canonical_mod(t.bp.center, p, t.bp.level);
    t.bm.center = canonical_mod(t.bm.center, p, t.bm.level);
    terms_.push_back(std::move(t));
}

RatFunc BruhatSchwartzV::eval(const QQ& x0, const QQ& xp, const QQ& xm) const {
    long p = ctx_->p();
    auto inside = [&](const Ball& B, const QQ& x) {
        QQ d = x - B.center;
        return d == 0 || valuation(d, p) >= B.level;
    };
    RatFunc v = RatFunc::zero(p);
    for (const auto& t : terms_) {
        if (!inside(t.b0, x0) || !inside(t.bp, xp) || !inside(t.bm, xm)) continue;
        v += t.coeff * RatFunc::from_cyc(p, ctx_->psi(t.Q.eval(x0, xp, xm)));
    }
    return v;
}

BruhatSchwartzV BruhatSchwartzV::operator+(const BruhatSchwartzV& o) const {
    BruhatSchwartzV r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return r;
}

BruhatSchwartzV BruhatSchwartzV::scaled(const RatFunc& c) const {
    BruhatSchwartzV r(ctx_);
    if (c.is_zero()) return r;
    for (auto t : terms_) {
        t.coeff *= c;
        r.terms_.push_back(std::move(t));
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_n(const QQ& n, int eps) const {
    BruhatSchwartzV r(ctx_);
    for (auto t : terms_) {
        t.Q.q00 += n;
        t.Q.qpm += n;
        if (eps < 0) t.coeff = -t.coeff;
        r.add_term(std::move(t));
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_diag(const QQ& a, int eps) const {
    long p = ctx_->p();
    long v = valuation(a, p);
    RatFunc fac = RatFunc::from_cyc(p, chi_psi(*ctx_, a)) * RatFunc::p_pow(p, QQ(3 * v, 2));
    if (eps < 0) fac = -fac;
    Mat3 L{{{a, QQ(0), QQ(0)}, {QQ(0), a, QQ(0)}, {QQ(0), QQ(0), a}}};
    BruhatSchwartzV r(ctx_);
    for (const auto& t : terms_) {
        VTerm s;
        s.coeff = t.coeff * fac;
        s.b0 = ball_scale_arg(*ctx_, t.b0, a);
        s.bp = ball_scale_arg(*ctx_, t.bp, a);
        s.bm = ball_scale_arg(*ctx_, t.bm, a);
        s.Q = quad_subst(t.Q, L);
        r.add_term(std::move(s));
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_w(int eps) const {
    long p = ctx_->p();
    RatFunc fac = RatFunc::from_cyc(p, gamma_V(*ctx_));
    if (p == 2) fac *= RatFunc::p_pow(p, QQ(1, 2));  // self-dual measure for the pairing
    if (eps < 0) fac = -fac;
    BruhatSchwartzV r(ctx_);
    for (const auto& t : terms_) {
        if (!t.Q.diagonal_compatible())
            throw std::domain_error("act_w: phase outside the closed class (mixed terms)");
        auto As = ext_gauss(*ctx_, t.b0, t.Q.q00, t.Q.l0);
        auto Bs = ext_bilinear(*ctx_, t.bp, t.bm, t.Q.qpm, t.Q.lp, t.Q.lm);
        for (const auto& A : As)
            for (const auto& Bx : Bs) {
                VTerm s;
                s.coeff = t.coeff * fac * RatFunc::from_cyc(p, A.cst * Bx.cst);
                s.b0 = A.sup;
                s.bp = Bx.sup_p;
                s.bm = Bx.sup_m;
                s.Q.q00 = A.qcoef;
                s.Q.l0 = A.lcoef;
                s.Q.qpm = Bx.bilin;
                s.Q.lp = Bx.lin_p;
                s.Q.lm = Bx.lin_m;
                r.add_term(std::move(s));
            }
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_pgl_diag(const QQ& t) const {
    long p = ctx_->p();
    // h^-1 X h = (x0, xp/t, t xm)
    Mat3 L{{{QQ(1), QQ(0), QQ(0)}, {QQ(0), QQ(1) / t, QQ(0)}, {QQ(0), QQ(0), t}}};
    BruhatSchwartzV r(ctx_);
    for (const auto& tm : terms_) {
        VTerm s;
        s.coeff = tm.coeff;
        s.b0 = tm.b0;
        s.bp = ball_scale_arg(*ctx_, tm.bp, QQ(1) / t);
        s.bm = ball_scale_arg(*ctx_, tm.bm, t);
        s.Q = quad_subst(tm.Q, L);
        r.add_term(std::move(s));
    }
    (void)p;
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_pgl_weyl() const {
    Mat3 L{{{QQ(-1), QQ(0), QQ(0)}, {QQ(0), QQ(0), QQ(-1)}, {QQ(0), QQ(-1), QQ(0)}}};
    BruhatSchwartzV r(ctx_);
    for (const auto& tm : terms_) {
        VTerm s;
        s.coeff = tm.coeff;
        s.b0 = Ball{canonical_mod(-tm.b0.center, ctx_->p(), tm.b0.level), tm.b0.level};
        s.bp = Ball{canonical_mod(-tm.bm.center, ctx_->p(), tm.bm.level), tm.bm.level};
        s.bm = Ball{canonical_mod(-tm.bp.center, ctx_->p(), tm.bp.level), tm.bp.level};
        s.Q = quad_subst(tm.Q, L);
        r.add_term(std::move(s));
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::act_pgl_unipotent(const QQ& u) const {
    long p = ctx_->p();
    long vu = (u == 0) ? 0 : valuation(u, p);
    long v2 = (p == 2) ? 1 : 0;
    if (u == 0) return *this;
    Mat3 L{{{QQ(1), QQ(0), QQ(-u)}, {QQ(2) * u, QQ(1), -u * u}, {QQ(0), QQ(0), QQ(1)}}};
    // careful: map is x0' = x0 - u xm, xp' = xp + 2u x0 - u^2 xm, xm' = xm;
    // in matrix form (column X) the rows above give L X with rows ordered
    // (x0', xp', xm') -- build accordingly
    Mat3 M{{{QQ(1), QQ(0), QQ(-u)}, {QQ(2) * u, QQ(1), -u * u}, {QQ(0), QQ(0), QQ(1)}}};
    (void)L;
    BruhatSchwartzV r(ctx_);
    for (const auto& tm : terms_) {
        long n0 = tm.b0.level, np = tm.bp.level, nm = tm.bm.level;
        long ellm = std::max({nm, n0 - vu, np - 2 * vu});
        long ell0 = std::max(n0, np - vu - v2);
        long cm_cnt = 1, c0_cnt = 1;
        for (long i = 0; i < ellm - nm; ++i) cm_cnt *= p;
        for (long i = 0; i < ell0 - n0; ++i) c0_cnt *= p;
        if (cm_cnt * c0_cnt > 100000)
            throw std::runtime_error("act_pgl_unipotent: refinement too large");
        for (long jm = 0; jm < cm_cnt; ++jm) {
            QQ mc = tm.bm.center + QQ(jm) * qq_pow(p, nm);
            for (long j0 = 0; j0 < c0_cnt; ++j0) {
                QQ oc = tm.b0.center + u * mc + QQ(j0) * qq_pow(p, n0);
                VTerm s;
                s.coeff = tm.coeff;
                s.b0 = Ball{canonical_mod(oc, p, ell0), ell0};
                s.bm = Ball{canonical_mod(mc, p, ellm), ellm};
                s.bp = Ball{canonical_mod(tm.bp.center - 2 * u * oc + u * u * mc, p, np), np};
                s.Q = quad_subst(tm.Q, M);
                r.add_term(std::move(s));
            }
        }
    }
    return r;
}

BruhatSchwartzV BruhatSchwartzV::omega(const MetaplecticElement& x) const {
    if (x.g.det() != 1) throw std::invalid_argument("omega: determinant must be 1");
    Place v{ctx_, false};
    int sign = x.eps;
    if (x.g.c == 0) {
        Mat2 m1 = mat_n(x.g.a * x.g.b), m2 = mat_diag(x.g.a);
        sign *= cocycle_eps(v, m1, m2);
        return act_diag(x.g.a).act_n(x.g.a * x.g.b, sign);
    }
    QQ xn1 = x.g.a / x.g.c, t = QQ(-1) / x.g.c, xn2 = x.g.d / x.g.c;
    Mat2 m1 = mat_n(xn1), m2 = mat_diag(t), m3 = mat_w(), m4 = mat_n(xn2);
    sign *= cocycle_eps(v, m1, m2);
    sign *= cocycle_eps(v, m1 * m2, m3);
    sign *= cocycle_eps(v, m1 * m2 * m3, m4);
    return act_n(xn2).act_w().act_diag(t).act_n(xn1, sign);
}

bool BruhatSchwartzV::is_zero_function() const {
    long p = ctx_->p();
    if (p == 2)
        throw std::domain_error("exact V-function comparison is implemented for odd p");
    if (terms_.empty()) return true;
    long L0 = terms_[0].b0.level, Lp = terms_[0].bp.level, Lm = terms_[0].bm.level;
    for (const auto& t : terms_) {
        L0 = std::max(L0, t.b0.level);
        Lp = std::max(Lp, t.bp.level);
        Lm = std::max(Lm, t.bm.level);
    }
    std::map<std::string, RatFunc> acc;
    for (const auto& t : terms_) {
        long c0 = 1, cp = 1, cm = 1;
        for (long i = 0; i < L0 - t.b0.level; ++i) c0 *= p;
        for (long i = 0; i < Lp - t.bp.level; ++i) cp *= p;
        for (long i = 0; i < Lm - t.bm.level; ++i) cm *= p;
        if (c0 * cp * cm > 2000000)
            throw std::runtime_error("is_zero_function: refinement too large");
        for (long j0 = 0; j0 < c0; ++j0)
            for (long jp = 0; jp < cp; ++jp)
                for (long jm = 0; jm < cm; ++jm) {
                    QQ a0 = canonical_mod(t.b0.center + QQ(j0) * qq_pow(p, t.b0.level), p, L0);
                    QQ ap = canonical_mod(t.bp.center + QQ(jp) * qq_pow(p, t.bp.level), p, Lp);
                    QQ am = canonical_mod(t.bm.center + QQ(jm) * qq_pow(p, t.bm.level), p, Lm);
                    // substitute x = a + p^L z and reduce each coefficient mod O
                    const QuadPhase& Q = t.Q;
                    QQ P0 = qq_pow(p, L0), Pp = qq_pow(p, Lp), Pm = qq_pow(p, Lm);
                    QQ cq00 = canonical_mod(Q.q00 * P0 * P0, p, 0);
                    QQ cqpp = canonical_mod(Q.qpp * Pp * Pp, p, 0);
                    QQ cqmm = canonical_mod(Q.qmm * Pm * Pm, p, 0);
                    QQ cq0p = canonical_mod(Q.q0p * P0 * Pp, p, 0);
                    QQ cq0m = canonical_mod(Q.q0m * P0 * Pm, p, 0);
                    QQ cqpm = canonical_mod(Q.qpm * Pp * Pm, p, 0);
                    QQ cl0 = canonical_mod((2 * Q.q00 * a0 + Q.q0p * ap + Q.q0m * am + Q.l0) * P0,
                                           p, 0);
                    QQ clp = canonical_mod((2 * Q.qpp * ap + Q.q0p * a0 + Q.qpm * am + Q.lp) * Pp,
                                           p, 0);
                    QQ clm = canonical_mod((2 * Q.qmm * am + Q.q0m * a0 + Q.qpm * ap + Q.lm) * Pm,
                                           p, 0);
                    Cyclotomic cphase = ctx_->psi(Q.eval(a0, ap, am));
                    std::ostringstream key;
                    key << a0 << "|" << ap << "|" << am << "|" << cq00 << "|" << cqpp << "|"
                        << cqmm << "|" << cq0p << "|" << cq0m << "|" << cqpm << "|" << cl0 << "|"
                        << clp << "|" << clm;
                    RatFunc add = t.coeff * RatFunc::from_cyc(p, cphase);
                    auto it = acc.find(key.str());
                    if (it == acc.end()) acc.emplace(key.str(), add);
                    else it->second += add;
                }
    }
    for (const auto& [k, v] : acc)
        if (!v.is_zero()) return false;
    return true;
}

std::string BruhatSchwartzV::str() const {
    std::ostringstream os;
    os << terms_.size() << " terms";
    return os.str();
}

BruhatSchwartzV partial_fourier(const BruhatSchwartzV& phi) {
    const PAdicContext& ctx = *phi.ctx();
    long p = ctx.p();
    BruhatSchwartzV r(&ctx);
    for (const auto& t : phi.terms()) {
        if (t.Q.qpm != 0 || t.Q.q0p != 0 || t.Q.qpp != 0)
            throw std::domain_error("partial_fourier: x+ must appear only linearly");
        VTerm s;
        // output slots: (x0; x-, y-)
        s.b0 = t.b0;
        s.bp = t.bm;
        s.bm = Ball{canonical_mod(-t.Q.lp, p, -t.bp.level), -t.bp.level};
        s.Q.q00 = t.Q.q00;
        s.Q.l0 = t.Q.l0;
        s.Q.qpp = t.Q.qmm;
        s.Q.q0p = t.Q.q0m;
        s.Q.lp = t.Q.lm;
        s.Q.lm = t.bp.center;  // psi(c_+ y_-)
        s.coeff = t.coeff * RatFunc::from_cyc(
                                p, ctx.psi(t.bp.center * t.Q.lp) * qq_pow(p, -t.bp.level));
        r.add_term(std::move(s));
    }
    return r;
}

ProjectiveReport projective_check(const PAdicContext& ctx, const Mat2& g1, const Mat2& g2,
                                  const BruhatSchwartzV& phi) {
    Place v{&ctx, false};
    ProjectiveReport rep;
    rep.eps = cocycle_eps(v, g1, g2);
    BruhatSchwartzV lhs = phi.omega({g2, 1}).omega({g1, 1});
    BruhatSchwartzV rhs = phi.omega({g1 * g2, 1}).scaled(RatFunc::from_qq(ctx.p(), QQ(rep.eps)));
    BruhatSchwartzV diff = lhs + rhs.scaled(-RatFunc::one(ctx.p()));
    rep.equal = diff.is_zero_function();
    return rep;
}

} // namespace lharm
