#include "lharm/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace lharm {

namespace {
long merge_prime(long a, long b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::invalid_argument("mixing polynomials over different primes");
    return a;
}
} // namespace

YCyc ycyc_add(const YCyc& a, const YCyc& b) { return {a.re + b.re, a.yc + b.yc}; }
YCyc ycyc_neg(const YCyc& a) { return {-a.re, -a.yc}; }
YCyc ycyc_mul(const YCyc& a, const YCyc& b, long p) {
    // (a.re + a.yc Y)(b.re + b.yc Y),  Y^2 = 1/p
    Cyclotomic cross = a.yc * b.yc;
    if (!cross.is_zero()) {
        if (p == 0) throw std::logic_error("Y arithmetic requires a prime");
        cross = cross * QQ(1, p);
    }
    return {a.re * b.re + cross, a.re * b.yc + a.yc * b.re};
}
YCyc ycyc_conj(const YCyc& a) { return {a.re.conj(), a.yc.conj()}; }
YCyc ycyc_inverse(const YCyc& a, long p) {
    if (a.yc.is_zero()) return {a.re.inverse(), Cyclotomic::zero()};
    if (p == 0) throw std::logic_error("Y arithmetic requires a prime");
    // (re + yc Y)(re - yc Y) = re^2 - yc^2 / p
    Cyclotomic n = a.re * a.re - a.yc * a.yc * QQ(1, p);
    if (n.is_zero()) throw std::domain_error("YCyc inverse: zero divisor");
    Cyclotomic ninv = n.inverse();
    return {a.re * ninv, -(a.yc * ninv)};
}
std::string ycyc_str(const YCyc& a) {
    if (a.yc.is_zero()) return a.re.str();
    std::string s;
    if (!a.re.is_zero()) s = a.re.str() + " + ";
    if (a.yc == Cyclotomic::one()) s += "Y";
    else s += "(" + a.yc.str() + ")*Y";
    return s;
}

void Poly::add(Mono m, const Cyclotomic& c, int ye) {
    if (c.is_zero()) return;
    Cyclotomic v = c;
    long folds = 0;
    long k = ye;
    while (k >= 2) { k -= 2; ++folds; }
    while (k < 0) { k += 2; --folds; }
    if (folds != 0) {
        if (p_ == 0) throw std::logic_error("Y power without a prime");
        v = v * qq_pow(p_, -folds);
    }
    YCyc inc = (k == 0) ? YCyc{v, Cyclotomic::zero()} : YCyc{Cyclotomic::zero(), v};
    add_ycyc(m, inc);
}

void Poly::add_ycyc(Mono m, const YCyc& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second = ycyc_add(it->second, c);
        if (it->second.is_zero()) t_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(merge_prime(p_, o.p_));
    r.t_ = t_;
    for (const auto& [m, c] : o.t_) r.add_ycyc(m, c);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = ycyc_neg(c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    long p = merge_prime(p_, o.p_);
    Poly r(p);
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_)
            r.add_ycyc(Mono{m1.xe + m2.xe, m1.ae + m2.ae}, ycyc_mul(c1, c2, p));
    return r;
}

Poly Poly::conj() const {
    Poly r(p_);
    for (const auto& [m, c] : t_) r.add_ycyc(Mono{m.xe, -m.ae}, ycyc_conj(c));
    return r;
}

Poly Poly::scaled(const YCyc& c) const {
    Poly r(p_);
    for (const auto& [m, v] : t_) r.add_ycyc(m, ycyc_mul(v, c, p_));
    return r;
}

Poly Poly::subst_x_monomial(const Cyclotomic& c, long e) const {
    Poly r(p_);
    Cyclotomic cinv;
    bool have_inv = false;
    for (const auto& [m, co] : t_) {
        Cyclotomic factor = Cyclotomic::one();
        long k = m.xe;
        if (k >= 0) {
            for (long i = 0; i < k; ++i) factor *= c;
        } else {
            if (!have_inv) { cinv = c.inverse(); have_inv = true; }
            for (long i = 0; i < -k; ++i) factor *= cinv;
        }
        r.add_ycyc(Mono{m.xe * e, m.ae}, ycyc_mul(co, YCyc{factor, Cyclotomic::zero()}, p_));
    }
    return r;
}

Poly Poly::subst_alpha_value(const Cyclotomic& v) const {
    YCyc vv{v, Cyclotomic::zero()};
    YCyc vinv{v.inverse(), Cyclotomic::zero()};
    return subst_alpha_ycyc(vv, vinv);
}

Poly Poly::subst_alpha_ycyc(const YCyc& v, const YCyc& vinv) const {
    Poly r(p_);
    for (const auto& [m, co] : t_) {
        YCyc factor{Cyclotomic::one(), Cyclotomic::zero()};
        long k = m.ae;
        const YCyc& base = k >= 0 ? v : vinv;
        for (long i = 0; i < std::abs(k); ++i) factor = ycyc_mul(factor, base, p_);
        r.add_ycyc(Mono{m.xe, 0}, ycyc_mul(co, factor, p_));
    }
    return r;
}

long Poly::min_xe() const {
    long m = 0; bool first = true;
    for (const auto& [mo, c] : t_) { if (first || mo.xe < m) m = mo.xe; first = false; }
    return m;
}
long Poly::max_xe() const {
    long m = 0; bool first = true;
    for (const auto& [mo, c] : t_) { if (first || mo.xe > m) m = mo.xe; first = false; }
    return m;
}
long Poly::min_ae() const {
    long m = 0; bool first = true;
    for (const auto& [mo, c] : t_) { if (first || mo.ae < m) m = mo.ae; first = false; }
    return m;
}
bool Poly::has_x() const {
    return std::any_of(t_.begin(), t_.end(), [](auto& kv) { return kv.first.xe != 0; });
}
bool Poly::has_alpha() const {
    return std::any_of(t_.begin(), t_.end(), [](auto& kv) { return kv.first.ae != 0; });
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        bool unit = c.yc.is_zero() && c.re == Cyclotomic::one() && !(m == Mono{});
        if (!unit) {
            std::string cs = ycyc_str(c);
            bool simple = c.yc.is_zero() && c.re.support_size() <= 1;
            os << (simple ? cs : "(" + cs + ")");
        }
        bool star = !unit;
        auto put = [&](const char* n, long e) {
            if (e == 0) return;
            if (star) os << "*";
            os << n;
            if (e != 1) os << "^" << e;
            star = true;
        };
        put("X", m.xe);
        put("a", m.ae);
    }
    return os.str();
}

// ---------------------------------------------------------------- division

std::optional<Poly> poly_exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    long p = a.prime() ? a.prime() : b.prime();
    if (a.is_zero()) return Poly(p);
    Poly rem = a, q(p);
    auto lead_b = *b.terms().rbegin();
    YCyc lb_inv;
    try {
        lb_inv = ycyc_inverse(lead_b.second, p);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 20000) return std::nullopt;
        auto lead_r = *rem.terms().rbegin();
        Mono m{lead_r.first.xe - lead_b.first.xe, lead_r.first.ae - lead_b.first.ae};
        YCyc c = ycyc_mul(lead_r.second, lb_inv, p);
        Poly t(p);
        t.add_ycyc(m, c);
        Poly nrem = rem - t * b;
        if (!nrem.is_zero() && !(nrem.terms().rbegin()->first < lead_r.first)) return std::nullopt;
        rem = nrem;
        q += t;
    }
    return q;
}

namespace {

enum class Var { X, Alpha };

long vdeg(const Mono& m, Var v) { return v == Var::X ? m.xe : m.ae; }

std::map<long, Poly> coeffs_in(const Poly& f, Var v) {
    std::map<long, Poly> r;
    long shift = 0;
    for (const auto& [m, c] : f.terms()) shift = std::min(shift, vdeg(m, v));
    for (const auto& [m, c] : f.terms()) {
        long d = vdeg(m, v) - shift;
        Mono rest = m;
        (v == Var::X ? rest.xe : rest.ae) = 0;
        auto it = r.find(d);
        if (it == r.end()) it = r.emplace(d, Poly(f.prime())).first;
        it->second.add_ycyc(rest, c);
    }
    return r;
}

Poly gcd_impl(Poly a, Poly b, int depth);

Poly content_in(const Poly& f, Var v, int depth) {
    auto cs = coeffs_in(f, v);
    Poly g(f.prime());
    for (const auto& [d, c] : cs) {
        g = gcd_impl(g, c, depth + 1);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

Poly gcd_impl(Poly a, Poly b, int depth) {
    long p = a.prime() ? a.prime() : b.prime();
    Poly one = Poly::constant(p, QQ(1));
    if (depth > 8) return one;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Var v;
    if (a.has_x() || b.has_x()) v = Var::X;
    else if (a.has_alpha() || b.has_alpha()) v = Var::Alpha;
    else return one;

    Poly ca = content_in(a, v, depth), cb = content_in(b, v, depth);
    auto pa = poly_exact_divide(a, ca), pb = poly_exact_divide(b, cb);
    if (!pa || !pb) return one;
    Poly cg = gcd_impl(ca, cb, depth + 1);
    if (cg.is_zero()) cg = one;

    Poly r0 = *pa, r1 = *pb;
    auto deg = [&](const Poly& f) {
        if (f.is_zero()) return -1L;
        long d = 0; bool first = true;
        for (const auto& [m, c] : f.terms()) {
            long dd = vdeg(m, v);
            if (first || dd > d) d = dd;
            first = false;
        }
        return d;
    };
    auto lead_coeff = [&](const Poly& f) { return coeffs_in(f, v).rbegin()->second; };
    if (deg(r0) < deg(r1)) std::swap(r0, r1);
    int guard = 0;
    while (!r1.is_zero()) {
        if (++guard > 64) return one;
        if (deg(r0) < deg(r1)) std::swap(r0, r1);
        Poly rem = r0;
        Poly lc1 = lead_coeff(r1);
        int inner = 0;
        bool bad = false;
        while (!rem.is_zero() && deg(rem) >= deg(r1)) {
            if (++inner > 512) { bad = true; break; }
            Poly lcr = lead_coeff(rem);
            long shift = deg(rem) - deg(r1);
            Poly mono = Poly::monomial(p, v == Var::X ? Mono{shift, 0} : Mono{0, shift},
                                       Cyclotomic::one());
            rem = rem * lc1 - r1 * (lcr * mono);
        }
        if (bad) return one;
        if (!rem.is_zero()) {
            Poly c = content_in(rem, v, depth);
            auto pr = poly_exact_divide(rem, c);
            if (!pr) return one;
            rem = *pr;
        }
        r0 = r1;
        r1 = rem;
    }
    Poly g = r0 * cg;
    if (!poly_exact_divide(a, g) || !poly_exact_divide(b, g)) return one;
    return g;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly g = gcd_impl(a, b, 0);
    if (g.is_zero()) return Poly::constant(a.prime() ? a.prime() : b.prime(), QQ(1));
    return g;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
    if (d.is_zero()) throw std::domain_error("division by zero rational function");
    merge_prime(n.prime(), d.prime());
    normalize();
}

void RatFunc::normalize() {
    long p = prime();
    if (num_.is_zero()) {
        den_ = Poly::constant(p, QQ(1));
        return;
    }
    long mx = std::min(num_.min_xe(), den_.min_xe());
    long ma = std::min(num_.min_ae(), den_.min_ae());
    if (mx != 0 || ma != 0) {
        Poly shift = Poly::monomial(p, Mono{-mx, -ma}, Cyclotomic::one());
        num_ = num_ * shift;
        den_ = den_ * shift;
    }
    // a single-term factor shares only monomial content, which the Laurent
    // shift has already removed; full gcd is needed only for multi-term pairs
    if (num_.terms().size() > 1 && den_.terms().size() > 1) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_zero() && !g.is_constant()) {
            auto qn = poly_exact_divide(num_, g);
            auto qd = poly_exact_divide(den_, g);
            if (qn && qd) {
                num_ = *qn;
                den_ = *qd;
            }
        }
    }
    try {
        YCyc lc = den_.terms().rbegin()->second;
        if (!(lc == YCyc{Cyclotomic::one(), Cyclotomic::zero()})) {
            YCyc inv = ycyc_inverse(lc, p);
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    } catch (const std::exception&) {
        // non-invertible leading coefficient; leave unnormalized
    }
}

RatFunc RatFunc::p_pow(long p, const QQ& exponent) {
    QQ two_e = exponent * 2;
    if (two_e.get_den() != 1) throw std::invalid_argument("p_pow: exponent must be half-integral");
    long m = static_cast<long>(two_e.get_num().get_si());
    // p^(-exponent) = Y^m
    Poly f(p);
    f.add(Mono{}, Cyclotomic::one(), static_cast<int>(m));
    return RatFunc(f);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }
RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}
RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}
bool RatFunc::operator==(const RatFunc& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

RatFunc RatFunc::subst_x_monomial(const Cyclotomic& c, long e) const {
    return RatFunc(num_.subst_x_monomial(c, e), den_.subst_x_monomial(c, e));
}

RatFunc RatFunc::eval_x(const Cyclotomic& v) const {
    Poly n = num_, d = den_;
    Poly nv = n.subst_x_value(v), dv = d.subst_x_value(v);
    int guard = 0;
    long p = prime();
    while (dv.is_zero() && nv.is_zero() && ++guard < 64) {
        Poly lin(p);
        lin.add(Mono{1, 0}, Cyclotomic::one());
        lin.add(Mono{0, 0}, -v);
        auto qn = poly_exact_divide(n, lin);
        auto qd = poly_exact_divide(d, lin);
        if (!qn || !qd) break;
        n = *qn;
        d = *qd;
        nv = n.subst_x_value(v);
        dv = d.subst_x_value(v);
    }
    if (dv.is_zero()) throw std::domain_error("evaluation at a pole");
    return RatFunc(nv, dv);
}

RatFunc RatFunc::eval_alpha(const Cyclotomic& v) const {
    Poly nv = num_.subst_alpha_value(v), dv = den_.subst_alpha_value(v);
    if (dv.is_zero()) throw std::domain_error("evaluation at a pole (alpha)");
    return RatFunc(nv, dv);
}

YCyc RatFunc::constant_ycyc() const {
    if (!is_constant()) throw std::domain_error("not a constant rational function");
    if (num_.is_zero()) return YCyc{Cyclotomic::zero(), Cyclotomic::zero()};
    YCyc n = num_.terms().begin()->second;
    YCyc d = den_.terms().begin()->second;
    return ycyc_mul(n, ycyc_inverse(d, prime()), prime());
}

Cyclotomic RatFunc::constant_value() const {
    YCyc v = constant_ycyc();
    if (!v.yc.is_zero()) throw std::domain_error("constant has a Y component");
    return v.re;
}

std::complex<double> RatFunc::embed(std::complex<double> x, std::complex<double> a) const {
    long p = prime();
    double y = p > 0 ? 1.0 / std::sqrt(static_cast<double>(p)) : 1.0;
    auto ev = [&](const Poly& f) {
        std::complex<double> s(0, 0);
        for (const auto& [m, c] : f.terms()) {
            std::complex<double> t = c.re.embed() + c.yc.embed() * y;
            if (m.xe != 0) t *= std::pow(x, static_cast<double>(m.xe));
            if (m.ae != 0) t *= std::pow(a, static_cast<double>(m.ae));
            s += t;
        }
        return s;
    };
    return ev(num_) / ev(den_);
}

std::string RatFunc::str() const {
    if (num_.is_zero()) return "0";
    bool den_is_one =
        den_.is_constant() && den_.terms().begin()->second == YCyc{Cyclotomic::one(), Cyclotomic::zero()};
    if (den_is_one) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace lharm
