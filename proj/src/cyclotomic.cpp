#include "lharm/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace lharm {

const std::vector<std::pair<long, long>>& Cyclotomic::factorization(long N) {
    static std::map<long, std::vector<std::pair<long, long>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<long, long>> f;
    long n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long k = 0;
            while (n % p == 0) { n /= p; ++k; }
            f.push_back({p, k});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return cache.emplace(N, std::move(f)).first->second;
}

void Cyclotomic::add_term(long e, const QQ& v) {
    if (v == 0) return;
    e %= order_;
    if (e < 0) e += order_;
    for (const auto& [p, k] : factorization(order_)) {
        long pk = 1;
        for (long i = 0; i < k; ++i) pk *= p;
        long digit = e % pk;
        long phi = pk - pk / p;
        if (digit >= phi) {
            // zeta^e = -sum_{j=1}^{p-1} zeta^(e + j*N/p)
            long step = order_ / p;
            for (long j = 1; j < p; ++j) add_term(e + j * step, -v);
            return;
        }
    }
    QQ& slot = c_[e];
    slot += v;
    if (slot == 0) c_.erase(e);
}

void Cyclotomic::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second == 0) it = c_.erase(it); else ++it;
    }
}

Cyclotomic Cyclotomic::root_of_unity(long N, long k) {
    if (N <= 0) throw std::invalid_argument("root_of_unity: order must be positive");
    k %= N;
    if (k < 0) k += N;
    long g = std::gcd(N, k == 0 ? N : k);
    N /= g; k /= g;
    Cyclotomic z;
    z.order_ = N;
    z.add_term(k, QQ(1));
    return z;
}

QQ Cyclotomic::rational_value() const {
    if (c_.empty()) return QQ(0);
    if (!is_rational()) throw std::domain_error("rational_value: not rational");
    return c_.begin()->second;
}

Cyclotomic Cyclotomic::lifted(long N) const {
    if (N == order_) return *this;
    if (N % order_ != 0) throw std::invalid_argument("lifted: not a multiple of order");
    Cyclotomic r;
    r.order_ = N;
    long m = N / order_;
    for (const auto& [e, v] : c_) r.add_term(e * m, v);
    return r;
}

void Cyclotomic::shrink() {
    if (c_.empty()) { order_ = 1; return; }
    long g = order_;
    for (const auto& [e, v] : c_) g = std::gcd(g, e);
    if (g <= 1) return;
    // dividing all exponents by g is valid only if the result reduces cleanly;
    // basis digits stay in range because phi is multiplicative over the digits
    long N2 = order_ / g;
    Cyclotomic r;
    r.order_ = N2;
    for (const auto& [e, v] : c_) r.add_term(e / g, v);
    *this = r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long N = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(N), b = o.lifted(N);
    for (const auto& [e, v] : b.c_) {
        QQ& slot = a.c_[e];
        slot += v;
        if (slot == 0) a.c_.erase(e);
    }
    a.shrink();
    return a;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) { *this = o; return *this; }
    if (order_ == o.order_) {
        for (const auto& [e, v] : o.c_) {
            QQ& slot = c_[e];
            slot += v;
            if (slot == 0) c_.erase(e);
        }
        return *this;
    }
    if (o.order_ % order_ == 0) {
        *this = lifted(o.order_);
        return *this += o;
    }
    if (order_ % o.order_ == 0) {
        long m = order_ / o.order_;
        for (const auto& [e, v] : o.c_) add_term(e * m, v);
        return *this;
    }
    *this = *this + o;
    return *this;
}

void Cyclotomic::accumulate_root(long N, long e, const QQ& coeff) {
    if (coeff == 0) return;
    if (order_ % N != 0) throw std::logic_error("accumulate_root: order mismatch");
    add_term(e * (order_ / N), coeff);
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (c_.empty() || o.c_.empty()) return Cyclotomic();
    long N = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(N), b = o.lifted(N);
    Cyclotomic r;
    r.order_ = N;
    for (const auto& [e1, v1] : a.c_)
        for (const auto& [e2, v2] : b.c_) r.add_term(e1 + e2, v1 * v2);
    r.shrink();
    return r;
}

Cyclotomic Cyclotomic::operator*(const QQ& s0) const {
    QQ s = canon(s0);
    if (s == 0) return Cyclotomic();
    Cyclotomic r = *this;
    for (auto& [e, v] : r.c_) v *= s;
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    long N = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(N), b = o.lifted(N);
    return a.c_ == b.c_;
}

Cyclotomic Cyclotomic::galois(long j) const {
    j %= order_;
    if (j < 0) j += order_;
    if (std::gcd(j == 0 ? order_ : j, order_) != 1 && order_ > 1)
        throw std::invalid_argument("galois: exponent not coprime to order");
    Cyclotomic r;
    r.order_ = order_;
    for (const auto& [e, v] : c_) r.add_term(e * j, v);
    return r;
}

const std::vector<QQ>& cyclotomic_polynomial(long N) {
    static std::map<long, std::vector<QQ>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, by exact division
    std::function<std::vector<QQ>(long)> compute = [&](long n) -> std::vector<QQ> {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        std::vector<QQ> num(n + 1, QQ(0));
        num[0] = QQ(-1);
        num[n] = QQ(1);
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            std::vector<QQ> phi_d = compute(d);
            // divide num by phi_d exactly
            std::vector<QQ> q(num.size() - phi_d.size() + 1, QQ(0));
            std::vector<QQ> rem = num;
            for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
                QQ c = rem[i + phi_d.size() - 1] / phi_d.back();
                q[i] = c;
                if (c != 0)
                    for (size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
            }
            num = q;
        }
        cache[n] = num;
        return num;
    };
    compute(N);
    return cache[N];
}

Cyclotomic Cyclotomic::inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero");
    if (c_.size() == 1) {
        auto [e, v] = *c_.begin();
        Cyclotomic r;
        r.order_ = order_;
        r.add_term(-e, QQ(1) / v);
        r.shrink();
        return r;
    }
    const auto& phi = cyclotomic_polynomial(order_);
    long deg = static_cast<long>(phi.size()) - 1;
    if (deg > 4096) throw std::domain_error("inverse: order too large for dense inversion");

    // dense coefficient vector of this element over 1, zeta, ..., zeta^(deg-1);
    // basis exponents may exceed deg for composite orders, so rebuild by
    // reducing x^e mod Phi
    std::vector<QQ> a(deg, QQ(0));
    {
        std::vector<std::vector<QQ>> xpow;  // x^i mod Phi for i < order
        xpow.resize(order_);
        std::vector<QQ> cur(deg, QQ(0));
        cur[0] = QQ(1);
        for (long i = 0; i < order_; ++i) {
            xpow[i] = cur;
            // multiply by x mod Phi
            std::vector<QQ> nxt(deg, QQ(0));
            for (long j = 0; j < deg - 1; ++j) nxt[j + 1] = cur[j];
            QQ top = cur[deg - 1];
            if (top != 0)
                for (long j = 0; j < deg; ++j) nxt[j] -= top * phi[j];
            cur = nxt;
        }
        for (const auto& [e, v] : c_)
            for (long j = 0; j < deg; ++j) a[j] += v * xpow[e][j];
    }

    // extended Euclid in Q[x]: u*a + w*Phi = g (constant)
    auto polydeg = [](const std::vector<QQ>& f) {
        long d = static_cast<long>(f.size()) - 1;
        while (d >= 0 && f[d] == 0) --d;
        return d;
    };
    std::vector<QQ> r0 = phi, r1 = a, s0 = {QQ(0)}, s1 = {QQ(1)};
    while (true) {
        long d1 = polydeg(r1);
        if (d1 < 0) throw std::domain_error("inverse: element is zero mod Phi");
        if (d1 == 0) break;
        long d0 = polydeg(r0);
        // r0 = q*r1 + r; s0 -> s0 - q*s1
        std::vector<QQ> q(std::max<long>(d0 - d1 + 1, 1), QQ(0));
        std::vector<QQ> rem = r0;
        for (long i = d0 - d1; i >= 0; --i) {
            QQ c = rem[i + d1] / r1[d1];
            q[i] = c;
            if (c != 0)
                for (long j = 0; j <= d1; ++j) rem[i + j] -= c * r1[j];
        }
        // snew = s0 - q*s1
        std::vector<QQ> snew(std::max(s0.size(), q.size() + s1.size()), QQ(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] += s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        r0 = r1; r1 = rem;
        s0 = s1; s1 = snew;
    }
    QQ g = r1[0];
    // inverse = s1 / g, reinterpreted as cyclotomic element
    Cyclotomic inv;
    inv.order_ = order_;
    for (size_t i = 0; i < s1.size(); ++i)
        if (s1[i] != 0) inv.add_term(static_cast<long>(i), s1[i] / g);
    inv.shrink();
    return inv;
}

std::complex<double> Cyclotomic::embed() const {
    std::complex<double> z(0.0, 0.0);
    const double tau = 2.0 * M_PI / static_cast<double>(order_);
    for (const auto& [e, v] : c_) {
        double x = v.get_d();
        z += std::complex<double>(x * std::cos(tau * e), x * std::sin(tau * e));
    }
    return z;
}

std::string Cyclotomic::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << v.get_str();
        } else {
            if (v != 1) os << v.get_str() << "*";
            os << "z" << order_;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Cyclotomic sqrt_p_cyclotomic(long p) {
    if (p == 2) {
        // sqrt(2) = zeta_8 + zeta_8^-1
        return Cyclotomic::root_of_unity(8, 1) + Cyclotomic::root_of_unity(8, -1);
    }
    // quadratic Gauss sum g = sum_x zeta_p^(x^2); g^2 = (-1)^((p-1)/2) p
    Cyclotomic g = Cyclotomic::zero();
    for (long x = 0; x < p; ++x) g += Cyclotomic::root_of_unity(p, (x * x) % p);
    if (p % 4 == 1) return g;
    // p = 3 mod 4: g = i*sqrt(p), so sqrt(p) = -i*g = zeta_4^3 * g
    return Cyclotomic::root_of_unity(4, 3) * g;
}

} // namespace lharm
