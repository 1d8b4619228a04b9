#include "lharm/arch.hpp"

#include <cmath>
#include <stdexcept>

namespace lharm {

namespace {

constexpr double PI = 3.14159265358979323846;

void picq_add(PiCQ& a, long pe, const CQ& v) {
    if (v.is_zero()) return;
    auto it = a.find(pe);
    if (it == a.end()) {
        a.emplace(pe, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) a.erase(it);
    }
}

std::complex<double> picq_eval(const PiCQ& a) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [pe, v] : a) s += v.to_complex() * std::pow(PI, static_cast<double>(pe));
    return s;
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
const double GL_X[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double GL_W[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
std::complex<double> gl_panel(F&& f, double a, double b) {
    std::complex<double> s{0.0, 0.0};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) s += GL_W[i] * f(mid + half * GL_X[i]);
    return s * half;
}

// adaptive panels for an oscillatory integrand with local frequency freq(x)
template <typename F, typename Freq>
std::complex<double> integrate_osc(F&& f, Freq&& freq, double a, double b) {
    std::complex<double> s{0.0, 0.0};
    double x = a;
    while (x < b) {
        double fr = std::max(1.0, freq(x));
        double step = std::min(0.25 / fr, 0.25);
        double nx = std::min(b, x + step);
        s += gl_panel(f, x, nx);
        x = nx;
    }
    return s;
}

} // namespace

HermiteGaussian HermiteGaussian::from_poly(const std::vector<QQ>& coeffs) {
    HermiteGaussian f;
    for (const QQ& q : coeffs) {
        PiCQ c;
        picq_add(c, 0, CQ{canon(q), QQ(0)});
        f.c_.push_back(std::move(c));
    }
    f.prune();
    return f;
}

HermiteGaussian HermiteGaussian::x_power(int k) {
    std::vector<QQ> v(k + 1, QQ(0));
    v[k] = QQ(1);
    return from_poly(v);
}

void HermiteGaussian::prune() {
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

bool HermiteGaussian::is_zero() const { return c_.empty(); }

bool HermiteGaussian::is_even() const {
    for (size_t k = 1; k < c_.size(); k += 2)
        if (!c_[k].empty()) return false;
    return true;
}

bool HermiteGaussian::is_odd() const {
    for (size_t k = 0; k < c_.size(); k += 2)
        if (!c_[k].empty()) return false;
    return true;
}

long HermiteGaussian::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].empty()) return static_cast<long>(k);
    return -1;
}

HermiteGaussian HermiteGaussian::operator+(const HermiteGaussian& o) const {
    HermiteGaussian r = *this;
    if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k)
        for (const auto& [pe, v] : o.c_[k]) picq_add(r.c_[k], pe, v);
    r.prune();
    return r;
}

HermiteGaussian HermiteGaussian::operator*(const QQ& s) const {
    HermiteGaussian r = *this;
    for (auto& c : r.c_)
        for (auto& [pe, v] : c) v = v * CQ{canon(s), QQ(0)};
    r.prune();
    return r;
}

HermiteGaussian HermiteGaussian::mul_x() const {
    HermiteGaussian r;
    r.c_.resize(c_.size() + 1);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k + 1] = c_[k];
    r.prune();
    return r;
}

HermiteGaussian HermiteGaussian::fourier() const {
    // T_0 = G; T_{k+1}(y) = (2 pi i)^-1 T_k'(y) + i y T_k(y), where T_k = FT(x^k G)
    // as a polynomial multiplying G
    std::vector<std::vector<PiCQ>> T;
    T.push_back({PiCQ{{0, CQ{QQ(1), QQ(0)}}}});
    for (size_t k = 1; k < c_.size(); ++k) {
        const auto& prev = T.back();
        std::vector<PiCQ> next(prev.size() + 1);
        // (2 pi i)^-1 d/dy: derivative of poly part
        for (size_t j = 1; j < prev.size(); ++j)
            for (const auto& [pe, v] : prev[j]) {
                // (1/(2 pi i)) * j * coeff: 1/i = -i
                CQ w = v * CQ{QQ(0), QQ(-(long)j, 2)};
                picq_add(next[j - 1], pe - 1, w);
            }
        // + i y T_k
        for (size_t j = 0; j < prev.size(); ++j)
            for (const auto& [pe, v] : prev[j])
                picq_add(next[j + 1], pe, v * CQ{QQ(0), QQ(1)});
        T.push_back(std::move(next));
    }
    HermiteGaussian r;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].empty()) continue;
        const auto& Tk = T[k];
        if (r.c_.size() < Tk.size()) r.c_.resize(Tk.size());
        for (size_t j = 0; j < Tk.size(); ++j)
            for (const auto& [pe1, v1] : Tk[j])
                for (const auto& [pe2, v2] : c_[k]) picq_add(r.c_[j], pe1 + pe2, v1 * v2);
    }
    r.prune();
    return r;
}

HermiteGaussian HermiteGaussian::reflected() const {
    HermiteGaussian r = *this;
    for (size_t k = 1; k < r.c_.size(); k += 2)
        for (auto& [pe, v] : r.c_[k]) v = CQ{-v.re, -v.im};
    return r;
}

bool HermiteGaussian::operator==(const HermiteGaussian& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t k = 0; k < c_.size(); ++k)
        if (!(c_[k] == o.c_[k])) return false;
    return true;
}

double HermiteGaussian::eval(double x) const {
    auto v = eval_c(x);
    return v.real();
}

std::complex<double> HermiteGaussian::eval_c(double x) const {
    std::complex<double> poly{0.0, 0.0};
    double xp = 1.0;
    for (size_t k = 0; k < c_.size(); ++k) {
        poly += picq_eval(c_[k]) * xp;
        xp *= x;
    }
    return poly * std::exp(-PI * x * x);
}

std::complex<double> HermiteGaussian::value_at_zero() const {
    return c_.empty() ? std::complex<double>{0.0, 0.0} : picq_eval(c_[0]);
}

std::string HermiteGaussian::str() const {
    return "P(x) e^{-pi x^2}, deg " + std::to_string(degree());
}

std::complex<double> f2_closed(const HermiteGaussian& f, double t) {
    // int x^{2k} e^{-pi a x^2} dx = (2k-1)!! / (2 pi a)^k * a^{-1/2}, a = 1 - 2 i t
    std::complex<double> a{1.0, -2.0 * t};
    std::complex<double> result{0.0, 0.0};
    std::complex<double> a_inv_sqrt = 1.0 / std::sqrt(a);  // principal branch (Re a > 0)
    double dfact = 1.0;                                    // (2k-1)!!
    std::complex<double> pw{1.0, 0.0};                     // (2 pi a)^-k
    const auto& c = f.coeffs();
    for (size_t k = 0; 2 * k < c.size(); ++k) {
        if (k > 0) {
            dfact *= (2.0 * k - 1.0);
            pw /= (2.0 * PI * a);
        }
        if (!c[2 * k].empty()) result += picq_eval(c[2 * k]) * dfact * pw;
    }
    return result * a_inv_sqrt;
}

std::complex<double> f2_quadrature(const HermiteGaussian& f, double t) {
    if (std::abs(t) > 1e6) throw std::domain_error("f2_quadrature: |t| out of validated range");
    double R = 6.5;
    auto integrand = [&](double x) {
        return f.eval_c(x) * std::exp(std::complex<double>(0.0, 2.0 * PI * t * x * x));
    };
    // panel width chosen so the phase advances at most a quarter cycle:
    // |t| ((x+d)^2 - x^2) <= 1/4  =>  d = sqrt(x^2 + 1/(4|t|)) - |x|
    double q = 0.25 / std::max(std::abs(t), 1e-12);
    std::complex<double> acc{0.0, 0.0};
    double x = -R;
    while (x < R) {
        double d = std::min(0.25, std::sqrt(x * x + q) - std::abs(x));
        double nx = std::min(R, x + std::max(d, 1e-9));
        acc += gl_panel(integrand, x, nx);
        x = nx;
    }
    return acc;
}

std::complex<double> complex_gamma(std::complex<double> z) {
    // Lanczos approximation, g = 7, 9 coefficients
    static const double g = 7.0;
    static const double c[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        return PI / (std::sin(PI * z) * complex_gamma(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    std::complex<double> tt = z + g + 0.5;
    return std::sqrt(2.0 * PI) * std::pow(tt, z + 0.5) * std::exp(-tt) * x;
}

std::complex<double> gamma_real(std::complex<double> s, int sgn_power, double s0) {
    // gamma(s, sgn^eps |.|^{s0}) = gamma(s + s0, sgn^eps); for sgn^eps:
    // L(s) = pi^{-(s+eps)/2} Gamma((s+eps)/2), epsilon-factor (-i)^eps
    std::complex<double> z = s + s0;
    int e = ((sgn_power % 2) + 2) % 2;
    auto L = [&](std::complex<double> w) {
        return std::pow(PI, -(w + static_cast<double>(e)) / 2.0) *
               complex_gamma((w + static_cast<double>(e)) / 2.0);
    };
    std::complex<double> eps_factor = (e == 0) ? std::complex<double>(1.0, 0.0)
                                               : std::complex<double>(0.0, 1.0);
    return eps_factor * L(1.0 - z) / L(z);
}

std::complex<double> zeta_real_numeric(const HermiteGaussian& phi, int sgn_power,
                                       std::complex<double> s) {
    // int_0^inf [phi(y) + (-1)^eps phi(-y)] y^{s-1} dy via y = e^u
    auto integrand = [&](double u) {
        double y = std::exp(u);
        std::complex<double> val = phi.eval_c(y);
        std::complex<double> valm = phi.eval_c(-y);
        if (sgn_power % 2) valm = -valm;
        return (val + valm) * std::exp(s * u);
    };
    std::complex<double> acc{0.0, 0.0};
    for (double a = -80.0; a < 4.5; a += 0.5) acc += gl_panel(integrand, a, a + 0.5);
    return acc;
}

std::complex<double> ft_phi_chi_real(const HermiteGaussian& phi, double e, double x) {
    // int phi(y)|y|^e e^{2 pi i x y} dy = int_0^inf [phi(y) e^{2 pi i x y} +
    // phi(-y) e^{-2 pi i x y}] y^e dy
    double h = std::min(0.25, 0.25 / std::max(1.0, std::abs(x)));
    // series part on [0, h]: expand g(y) = phi(y) e^{2 pi i xy} + phi(-y) e^{-2 pi i xy}
    // via Taylor coefficients of each factor
    const int N = 48;
    std::vector<std::complex<double>> pos(N, {0.0, 0.0}), neg(N, {0.0, 0.0});
    {
        // phi(y) = P(y) e^{-pi y^2}: Taylor of P known from coeffs; e^{-pi y^2}
        // and e^{2 pi i x y} expanded and convolved
        std::vector<std::complex<double>> P(N, {0.0, 0.0});
        const auto& c = phi.coeffs();
        for (size_t k = 0; k < c.size() && k < N; ++k) P[k] = picq_eval(c[k]);
        std::vector<double> gauss(N, 0.0);
        for (int k = 0; 2 * k < N; ++k) {
            double term = std::pow(-PI, k);
            for (int j = 1; j <= k; ++j) term /= j;
            gauss[2 * k] = term;
        }
        std::vector<std::complex<double>> expp(N), expm(N);
        for (int k = 0; k < N; ++k) {
            std::complex<double> term = std::pow(std::complex<double>(0.0, 2.0 * PI * x), k);
            for (int j = 1; j <= k; ++j) term /= static_cast<double>(j);
            expp[k] = term;
            expm[k] = (k % 2) ? -term : term;
        }
        auto conv3 = [&](const std::vector<std::complex<double>>& A,
                         const std::vector<double>& B,
                         const std::vector<std::complex<double>>& C,
                         std::vector<std::complex<double>>& out) {
            std::vector<std::complex<double>> AB(N, {0.0, 0.0});
            for (int i = 0; i < N; ++i)
                for (int j = 0; i + j < N; ++j) AB[i + j] += A[i] * B[j];
            for (int i = 0; i < N; ++i)
                for (int j = 0; i + j < N; ++j) out[i + j] += AB[i] * C[j];
        };
        conv3(P, gauss, expp, pos);
        std::vector<std::complex<double>> Pm = P;
        for (int k = 1; k < N; k += 2) Pm[k] = -Pm[k];
        conv3(Pm, gauss, expm, neg);
    }
    std::complex<double> series{0.0, 0.0};
    for (int k = 0; k < N; ++k) {
        double integral = std::pow(h, k + e + 1.0) / (k + e + 1.0);
        series += (pos[k] + neg[k]) * integral;
    }
    // oscillatory part on [h, R]
    auto integrand = [&](double y) {
        std::complex<double> ph = std::exp(std::complex<double>(0.0, 2.0 * PI * x * y));
        return (phi.eval_c(y) * ph + phi.eval_c(-y) / ph) * std::pow(y, e);
    };
    auto freq = [&](double) { return std::abs(x); };
    return series + integrate_osc(integrand, freq, h, 7.0);
}

DecayScan asymptotic_decay_scan(const HermiteGaussian& phi, double e1, double e2, int n_exp) {
    if (!(e1 > -1.0 && e2 < 0.0 && e1 <= e2))
        throw std::invalid_argument("exponent interval must lie in (-1, 0)");
    DecayScan scan;
    for (int i = 0; i < n_exp; ++i)
        scan.exponents.push_back(e1 + (e2 - e1) * i / std::max(1, n_exp - 1));
    for (long k = 0; k <= 10; ++k) scan.ks.push_back(k);
    std::complex<double> phi0 = phi.value_at_zero();
    for (double e : scan.exponents) {
        std::vector<double> row;
        std::complex<double> g0 = gamma_real(0.0, 0, -e);  // gamma(0, chi^-1)
        for (long k : scan.ks) {
            double x = std::pow(2.0, static_cast<double>(k));
            std::complex<double> ft = ft_phi_chi_real(phi, e, x);
            std::complex<double> val = phi0 - std::pow(x, e) * x * ft / g0;
            row.push_back(std::abs(val));
        }
        scan.table.push_back(std::move(row));
    }
    scan.monotone_from_3 = true;
    scan.value_at_10 = 0.0;
    for (const auto& row : scan.table) {
        for (size_t k = 4; k < row.size(); ++k)
            if (row[k] > row[k - 1] * (1.0 + 1e-9) + 1e-12) scan.monotone_from_3 = false;
        scan.value_at_10 = std::max(scan.value_at_10, row.back());
    }
    scan.verdict = scan.monotone_from_3 && scan.value_at_10 < 1e-3;
    return scan;
}

ArchIsometry isometry_numeric(const HermiteGaussian& W, const HermiteGaussian& phi, int delta) {
    ArchIsometry rep;
    if (delta != 1 && delta != -1) throw std::invalid_argument("delta must be +-1 over R");
    if (W.is_odd()) {
        // F2 W = 0 identically
        rep.hypothesis_ok = true;
        rep.lhs = rep.rhs = 0.0;
        rep.error = 0.0;
        return rep;
    }
    if (!W.is_even()) {
        rep.failed_hypothesis = "W is not even";
        return rep;
    }
    if (W.valuation() < 1) {
        rep.failed_hypothesis = "W|x|^-1 not integrable (P(0) != 0)";
        return rep;
    }
    rep.hypothesis_ok = true;
    auto integrand = [&](double t) {
        return f2_closed(W, delta * t) * f2_closed(phi, -t);
    };
    // |integrand| decays like |t|^{-1-deg...}; dyadic panels with analytic tail bound
    std::complex<double> acc{0.0, 0.0};
    for (double a0 = -1.0; a0 < 1.0; a0 += 0.125) acc += gl_panel(integrand, a0, a0 + 0.125);
    double a = 1.0;
    while (a < 2.0e8) {
        double b = a * 1.5;
        acc += gl_panel(integrand, a, b);
        acc += gl_panel(integrand, -b, -a);
        a = b;
    }
    rep.lhs = acc;
    if (delta == 1) {
        // 2 int W phi |x|^-1 dx, with W phi = P(x) e^{-2 pi x^2}, P even val >= 2
        // multiply the polynomial parts of W and phi
        const auto& cw = W.coeffs();
        const auto& cp = phi.coeffs();
        std::vector<std::complex<double>> P(cw.size() + cp.size(), {0.0, 0.0});
        for (size_t i = 0; i < cw.size(); ++i)
            for (size_t j = 0; j < cp.size(); ++j)
                P[i + j] += picq_eval(cw[i]) * picq_eval(cp[j]);
        // 2 |2|_R^{-1} int W phi |x|^-1 dx = int P(x) |x|^-1 e^{-2 pi x^2} dx,
        // and int x^k |x|^-1 e^{-2 pi x^2} dx = Gamma(k/2)/(2 pi)^{k/2} for even k
        std::complex<double> rhs{0.0, 0.0};
        for (size_t k = 2; k < P.size(); k += 2)
            rhs += P[k] * std::tgamma(k / 2.0) / std::pow(2.0 * PI, k / 2.0);
        rep.rhs = rhs;
    } else {
        rep.rhs = 0.0;
    }
    rep.error = std::abs(rep.lhs - rep.rhs);
    return rep;
}

} // namespace lharm
