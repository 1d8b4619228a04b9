#include "lharm/metaplectic.hpp"

namespace lharm {

QQ j_func(const Mat2& g) { return g.c != 0 ? g.c : g.a; }

int cocycle_eps(const Place& v, const Mat2& g1, const Mat2& g2) {
    Mat2 g12 = g1 * g2;
    QQ x = canon(j_func(g1) * j_func(g12));
    QQ y = canon(j_func(g2) * j_func(g12));
    return v.hilbert(x, y);
}

MetaplecticElement mp_mul(const Place& v, const MetaplecticElement& x,
                          const MetaplecticElement& y) {
    if (x.g.det() != 1 || y.g.det() != 1)
        throw std::invalid_argument("mp_mul: determinant must be 1");
    return MetaplecticElement{x.g * y.g, cocycle_eps(v, x.g, y.g) * x.eps * y.eps};
}

} // namespace lharm
