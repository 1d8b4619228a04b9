#pragma once

#include <map>
#include <optional>

#include "lharm/cyclotomic.hpp"

namespace lharm {

// coefficient ring Q(zeta) + Q(zeta)*Y with Y^2 = 1/p
struct YCyc {
    Cyclotomic re;  // Y-free part
    Cyclotomic yc;  // coefficient of Y

    bool is_zero() const { return re.is_zero() && yc.is_zero(); }
    bool operator==(const YCyc& o) const { return re == o.re && yc == o.yc; }
};

YCyc ycyc_add(const YCyc& a, const YCyc& b);
YCyc ycyc_neg(const YCyc& a);
YCyc ycyc_mul(const YCyc& a, const YCyc& b, long p);
YCyc ycyc_conj(const YCyc& a);
YCyc ycyc_inverse(const YCyc& a, long p);  // throws if not invertible
std::string ycyc_str(const YCyc& a);

// monomial X^xe * alpha^ae (Laurent)
struct Mono {
    long xe = 0;
    long ae = 0;
    auto operator<=>(const Mono&) const = default;
};

// Polynomial over the YCyc ring in X and alpha.
class Poly {
public:
    Poly() : p_(0) {}
    explicit Poly(long p) : p_(p) {}
    Poly(long p, const Cyclotomic& c) : p_(p) { add(Mono{}, c); }

    static Poly constant(long p, const QQ& q) { return Poly(p, Cyclotomic(q)); }
    static Poly monomial(long p, Mono m, const Cyclotomic& c, int ye = 0) {
        Poly f(p);
        f.add(m, c, ye);
        return f;
    }

    long prime() const { return p_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono{}); }
    const std::map<Mono, YCyc>& terms() const { return t_; }

    // add c * X^m.xe * alpha^m.ae * Y^ye  (ye any integer, folded eagerly)
    void add(Mono m, const Cyclotomic& c, int ye = 0);
    void add_ycyc(Mono m, const YCyc& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    bool operator==(const Poly& o) const { return (*this - o).is_zero(); }

    Poly conj() const;  // zeta -> conj zeta, alpha -> alpha^-1 (X, Y fixed)
    Poly scaled(const YCyc& c) const;

    Poly subst_x_monomial(const Cyclotomic& c, long e) const;  // X -> c * X^e
    Poly subst_x_value(const Cyclotomic& v) const { return subst_x_monomial(v, 0); }
    Poly subst_alpha_value(const Cyclotomic& v) const;
    Poly subst_alpha_ycyc(const YCyc& v, const YCyc& vinv) const;

    long min_xe() const;
    long max_xe() const;
    long min_ae() const;
    bool has_x() const;
    bool has_alpha() const;

    std::string str() const;

private:
    long p_;
    std::map<Mono, YCyc> t_;
};

// Rational function num/den, canonicalized: Laurent content shifted away,
// best-effort gcd reduction, denominator leading coefficient normalized to 1
// when invertible.  Equality is decided by cross-multiplication.
class RatFunc {
public:
    RatFunc() : num_(0), den_(Poly::constant(0, QQ(1))) {}
    RatFunc(const Poly& n, const Poly& d);
    explicit RatFunc(const Poly& n) : RatFunc(n, Poly::constant(n.prime(), QQ(1))) {}

    static RatFunc zero(long p) { return RatFunc(Poly(p)); }
    static RatFunc one(long p) { return RatFunc(Poly::constant(p, QQ(1))); }
    static RatFunc from_qq(long p, const QQ& q) { return RatFunc(Poly::constant(p, q)); }
    static RatFunc from_cyc(long p, const Cyclotomic& c) { return RatFunc(Poly(p, c)); }
    static RatFunc X(long p) { return RatFunc(Poly::monomial(p, Mono{1, 0}, Cyclotomic::one())); }
    static RatFunc Y(long p) { return RatFunc(Poly::monomial(p, Mono{0, 0}, Cyclotomic::one(), 1)); }
    static RatFunc alpha(long p) { return RatFunc(Poly::monomial(p, Mono{0, 1}, Cyclotomic::one())); }
    // p^(-exponent) for half-integral exponent, as a Y-monomial
    static RatFunc p_pow(long p, const QQ& exponent);
    static RatFunc x_pow(long p, long e) {
        return RatFunc(Poly::monomial(p, Mono{e, 0}, Cyclotomic::one()));
    }
    static RatFunc alpha_pow(long p, long e) {
        return RatFunc(Poly::monomial(p, Mono{0, e}, Cyclotomic::one()));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    long prime() const { return num_.prime() ? num_.prime() : den_.prime(); }

    bool is_zero() const { return num_.is_zero(); }
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc conj() const { return RatFunc(num_.conj(), den_.conj()); }

    RatFunc subst_x_monomial(const Cyclotomic& c, long e) const;
    RatFunc eval_x(const Cyclotomic& v) const;  // throws on pole
    RatFunc eval_alpha(const Cyclotomic& v) const;
    YCyc constant_ycyc() const;
    Cyclotomic constant_value() const;  // requires Y-free
    QQ rational_value() const { return constant_value().rational_value(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    std::complex<double> embed(std::complex<double> x, std::complex<double> a) const;

    std::string str() const;

private:
    Poly num_, den_;
    void normalize();
};

Poly poly_gcd(const Poly& a, const Poly& b);
std::optional<Poly> poly_exact_divide(const Poly& a, const Poly& b);

} // namespace lharm
