#pragma once

#include "lharm/bruhat.hpp"
#include "lharm/quasichar.hpp"

namespace lharm {

// Exact finite character sums; every integral in the p-adic engine reduces to
// these.  All are memoized.

// int over {u in u0 + p^k O : u unit [, class(u) = cls]} of psi(b u) chi0(u) du
// (additive measure; chi0 may be null; cls = -1 means no class restriction).
Cyclotomic unit_char_integral(const PAdicContext& ctx, const QuasiCharacter* chi0, const QQ& b,
                              const QQ& u0, long k, int cls = -1);

// int_{c + p^n O} psi(t x^2 + b x) dx, exact (stationary-phase reduction)
Cyclotomic gauss_ball_integral(const PAdicContext& ctx, const QQ& t, const QQ& b, const Ball& B);

// int over the shell {v(x) = m, class(unit part) = cls} of psi(t x^2) dx
Cyclotomic gauss_class_shell(const PAdicContext& ctx, const QQ& t, long m, int cls);

// brute-force evaluation of int_B psi(t x^2 + b x) dx by full refinement
// (test oracle; cost p^(M - level))
Cyclotomic gauss_ball_brute(const PAdicContext& ctx, const QQ& t, const QQ& b, const Ball& B);

void atoms_clear_cache();

} // namespace lharm
