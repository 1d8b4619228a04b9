#pragma once

#include <vector>

#include "lharm/cyclotomic.hpp"

namespace lharm {

// Q_p with the additive character psi of conductor O: psi(x) = e^(2 pi i {x}_p)
// where {x}_p is the p-fractional part.  The self-dual Haar measure gives
// vol(O) = 1.
class PAdicContext {
public:
    explicit PAdicContext(long p);

    long p() const { return p_; }
    long val(const QQ& x) const { return valuation(x, p_); }

    // additive character; a p-power root of unity
    Cyclotomic psi(const QQ& x) const;

    // Hilbert symbol <a,b>_p
    int hilbert(const QQ& a, const QQ& b) const;

    bool is_square_unit(const QQ& u) const;  // u must be a unit
    bool is_square(const QQ& x) const;       // x nonzero

    // representatives of k^x / (k^x)^2; first entry is 1
    const std::vector<QQ>& square_class_reps() const { return reps_; }
    // index into square_class_reps of x's class
    int square_class_index(const QQ& x) const;
    // class index of a product, via the class group law
    int class_mul(int i, int j) const;
    // number of unit classes (2 for p odd, 4 for p = 2); unit classes come
    // first in square_class_reps
    int unit_class_count() const { return p_ == 2 ? 4 : 2; }

    // d^x measure of the set of units in class i (units only), as exact QQ,
    // relative to the full unit measure (1 - 1/p) under dx
    QQ unit_class_additive_measure(int i) const;

    long smallest_nonresidue() const { return nonres_; }

private:
    long p_;
    long nonres_;
    std::vector<QQ> reps_;
    std::vector<std::vector<int>> mul_table_;
};

// Hilbert symbol over R
int hilbert_real(const QQ& a, const QQ& b);

// rational x0 with x0^2 = y mod p^digits (y a p-adic square); digits counted
// from v(y)
QQ padic_sqrt_approx(const PAdicContext& ctx, const QQ& y, long digits);

} // namespace lharm
