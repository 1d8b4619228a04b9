#pragma once

#include <complex>
#include <map>
#include <vector>

#include "lharm/rational.hpp"

namespace lharm {

// complex rational a + b i
struct CQ {
    QQ re, im;
    bool is_zero() const { return re == 0 && im == 0; }
    CQ operator+(const CQ& o) const { return {re + o.re, im + o.im}; }
    CQ operator-(const CQ& o) const { return {re - o.re, im - o.im}; }
    CQ operator*(const CQ& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const CQ& o) const { return re == o.re && im == o.im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

// element of Q(i)[pi, pi^-1]: exact coefficient for Hermite data
using PiCQ = std::map<long, CQ>;  // pi-exponent -> CQ

// P(x) e^{-pi x^2} with exact coefficients in Q(i)[pi^{+-1}]
class HermiteGaussian {
public:
    HermiteGaussian() = default;
    // polynomial from rational coefficients (constant pi-grade 0)
    static HermiteGaussian from_poly(const std::vector<QQ>& coeffs);
    static HermiteGaussian gaussian() { return from_poly({QQ(1)}); }
    static HermiteGaussian x_power(int k);

    const std::vector<PiCQ>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const;
    bool is_even() const;
    bool is_odd() const;
    long valuation() const;  // lowest nonzero x-power

    HermiteGaussian operator+(const HermiteGaussian& o) const;
    HermiteGaussian operator*(const QQ& s) const;
    HermiteGaussian mul_x() const;

    // exact Fourier transform (psi(xy) = e^{2 pi i x y}, self-dual measure)
    HermiteGaussian fourier() const;
    HermiteGaussian reflected() const;  // x -> -x
    bool operator==(const HermiteGaussian& o) const;

    double eval(double x) const;
    std::complex<double> eval_c(double x) const;

    // phi(0)
    std::complex<double> value_at_zero() const;

    std::string str() const;

private:
    std::vector<PiCQ> c_;
    void prune();
};

// quadratic Fourier transform F2 f(t) = int f(x) e^{2 pi i t x^2} dx
std::complex<double> f2_closed(const HermiteGaussian& f, double t);
std::complex<double> f2_quadrature(const HermiteGaussian& f, double t);

// complex Gamma (Lanczos)
std::complex<double> complex_gamma(std::complex<double> z);

// gamma(s, chi, psi) over R for chi = sgn^eps |.|^s0: closed form
std::complex<double> gamma_real(std::complex<double> s, int sgn_power, double s0 = 0.0);

// numeric Tate zeta Z(phi, chi, s) over R for chi = sgn^eps
std::complex<double> zeta_real_numeric(const HermiteGaussian& phi, int sgn_power,
                                       std::complex<double> s);

// FT(phi |.|^e)(x) numerically (trivial sign character)
std::complex<double> ft_phi_chi_real(const HermiteGaussian& phi, double e, double x);

struct DecayScan {
    std::vector<double> exponents;
    std::vector<long> ks;                    // |x| = 2^k
    std::vector<std::vector<double>> table;  // [exponent][k]
    bool monotone_from_3 = false;
    double value_at_10 = 0.0;
    bool verdict = false;
};
// |phi(0) - gamma(0, chi^-1, psi)^-1 chi(x) |x| FT(phi chi)(x)| on a dyadic grid
DecayScan asymptotic_decay_scan(const HermiteGaussian& phi, double e1, double e2, int n_exp);

struct ArchIsometry {
    bool hypothesis_ok = false;
    std::string failed_hypothesis;
    std::complex<double> lhs, rhs;
    double error = 0.0;
};
// int F2 W(delta t) F2 phi(-t) dt vs 2 int W phi |x|^-1 dx (delta = +-1)
ArchIsometry isometry_numeric(const HermiteGaussian& W, const HermiteGaussian& phi, int delta);

} // namespace lharm
