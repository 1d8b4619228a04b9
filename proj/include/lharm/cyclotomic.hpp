#pragma once

#include <complex>
#include <map>
#include <vector>

#include "lharm/rational.hpp"

namespace lharm {

// Exact element of Q(zeta_N), stored sparsely over the tensor power basis:
// an exponent e in [0,N) is a basis element iff for every prime power p^k || N
// the digit e mod p^k lies in [0, phi(p^k)).  Out-of-basis exponents are
// rewritten with sum_{j=0}^{p-1} zeta^(e + jN/p) = 0, which never disturbs the
// digits at other primes.
class Cyclotomic {
public:
    Cyclotomic() : order_(1) {}
    explicit Cyclotomic(const QQ& r0) : order_(1) {
        QQ r = canon(r0);
        if (r != 0) c_[0] = r;
    }
    explicit Cyclotomic(long n) : Cyclotomic(QQ(n)) {}

    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(QQ(1)); }
    // zeta_N^k
    static Cyclotomic root_of_unity(long N, long k);

    long order() const { return order_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
    QQ rational_value() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o) { *this = *this - o; return *this; }
    Cyclotomic& operator*=(const Cyclotomic& o) { *this = *this * o; return *this; }

    // accumulate coeff * zeta_N^e in place; order must already be a multiple
    // of N (used by the brute-force character sums)
    void accumulate_root(long N, long e, const QQ& coeff);
    static Cyclotomic with_order(long N) { Cyclotomic z; z.order_ = N; return z; }
    Cyclotomic operator*(const QQ& s) const;
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic conj() const { return galois(-1); }
    // Galois action zeta -> zeta^j, gcd(j, order) = 1
    Cyclotomic galois(long j) const;
    // |z|^2 = z * conj(z)
    Cyclotomic norm_sq() const { return *this * conj(); }

    // Multiplicative inverse.  Cheap for monomials c*zeta^e; otherwise solved
    // by extended Euclid modulo the cyclotomic polynomial (dense, so guarded
    // by a degree cap -- large orders never need division in this codebase).
    Cyclotomic inverse() const;
    Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

    std::complex<double> embed() const;

    Cyclotomic lifted(long N) const;  // to a multiple N of order_
    void shrink();                    // smallest representing order

    size_t support_size() const { return c_.size(); }
    std::string str() const;

    // access for serialization/tests
    const std::map<long, QQ>& coeffs() const { return c_; }

private:
    long order_;
    std::map<long, QQ> c_;

    void add_term(long e, const QQ& v);
    void prune();
    static const std::vector<std::pair<long, long>>& factorization(long N);
    friend Cyclotomic operator*(const QQ& s, const Cyclotomic& z);
};

inline Cyclotomic operator*(const QQ& s, const Cyclotomic& z) { return z * s; }

// cyclotomic polynomial Phi_N as dense rational coefficient vector
const std::vector<QQ>& cyclotomic_polynomial(long N);

// exact sqrt(p) inside a cyclotomic field (via quadratic Gauss sums;
// order 4p for p = 3 mod 4, p for p = 1 mod 4, 8 for p = 2)
Cyclotomic sqrt_p_cyclotomic(long p);

} // namespace lharm
