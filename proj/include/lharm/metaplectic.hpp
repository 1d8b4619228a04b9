#pragma once

#include "lharm/padic.hpp"

namespace lharm {

// 2x2 rational matrix of determinant 1
struct Mat2 {
    QQ a, b, c, d;
    Mat2 operator*(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    QQ det() const { return a * d - b * c; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

inline Mat2 mat_n(const QQ& x) { return Mat2{QQ(1), x, QQ(0), QQ(1)}; }
inline Mat2 mat_diag(const QQ& t) { return Mat2{t, QQ(0), QQ(0), QQ(1) / t}; }
inline Mat2 mat_w() { return Mat2{QQ(0), QQ(1), QQ(-1), QQ(0)}; }

// the place at which Hilbert symbols are evaluated
struct Place {
    const PAdicContext* padic = nullptr;  // null means the real place
    bool complex_place = false;
    int hilbert(const QQ& x, const QQ& y) const {
        if (complex_place) return 1;
        return padic ? padic->hilbert(x, y) : hilbert_real(x, y);
    }
};

// j(g) = c when c != 0, else a
QQ j_func(const Mat2& g);

// Kubota 2-cocycle eps(g1, g2) = < j(g1) j(g1 g2), j(g2) j(g1 g2) >
int cocycle_eps(const Place& v, const Mat2& g1, const Mat2& g2);

struct MetaplecticElement {
    Mat2 g;
    int eps = 1;  // +-1
};

// [g1, e1][g2, e2] = [g1 g2, eps(g1, g2) e1 e2]
MetaplecticElement mp_mul(const Place& v, const MetaplecticElement& x,
                          const MetaplecticElement& y);

} // namespace lharm
