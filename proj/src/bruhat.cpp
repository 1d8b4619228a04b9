#include "lharm/bruhat.hpp"

#include <algorithm>
#include <sstream>

namespace lharm {

namespace {
bool ball_contains(long p, const Ball& b, const QQ& x) {
    QQ d = x - b.center;
    if (d == 0) return true;
    return valuation(d, p) >= b.level;
}

// nested-or-disjoint test; returns -1 disjoint, 0 equal, 1 a contains b, 2 b contains a
int ball_relation(long p, const Ball& a, const Ball& b) {
    if (a.level == b.level) return a.center == b.center ? 0 : -1;
    const Ball& coarse = a.level < b.level ? a : b;
    const Ball& fine = a.level < b.level ? b : a;
    bool inside = ball_contains(p, coarse, fine.center);
    if (!inside) return -1;
    return a.level < b.level ? 1 : 2;
}
} // namespace

void BruhatSchwartz::normalize_term(BSTerm& t) const {
    long p = ctx_->p();
    t.ball.center = canonical_mod(t.ball.center, p, t.ball.level);
    QQ ph = canonical_mod(t.phase, p, -t.ball.level);
    if (ph != t.phase) {
        t.coeff *= ctx_->psi((t.phase - ph) * t.ball.center);
        t.phase = ph;
    }
}

BruhatSchwartz BruhatSchwartz::indicator(const PAdicContext* ctx, const QQ& center, long level) {
    BruhatSchwartz f(ctx);
    f.add_term(Cyclotomic::one(), center, level);
    return f;
}

BruhatSchwartz BruhatSchwartz::unit_indicator(const PAdicContext* ctx) {
    BruhatSchwartz f(ctx);
    f.add_term(Cyclotomic::one(), QQ(0), 0);
    f.add_term(-Cyclotomic::one(), QQ(0), 1);
    return f;
}

void BruhatSchwartz::add_term(const Cyclotomic& coeff, const QQ& center, long level,
                              const QQ& phase) {
    if (coeff.is_zero()) return;
    BSTerm t{coeff, Ball{center, level}, phase};
    normalize_term(t);
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

BruhatSchwartz BruhatSchwartz::operator+(const BruhatSchwartz& o) const {
    BruhatSchwartz r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return r;
}

BruhatSchwartz BruhatSchwartz::operator-(const BruhatSchwartz& o) const {
    return *this + o.scaled(-Cyclotomic::one());
}

BruhatSchwartz BruhatSchwartz::scaled(const Cyclotomic& c) const {
    BruhatSchwartz r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.ball, t.phase});
    return r;
}

BruhatSchwartz BruhatSchwartz::operator*(const BruhatSchwartz& o) const {
    long p = ctx_->p();
    BruhatSchwartz r(ctx_);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            int rel = ball_relation(p, a.ball, b.ball);
            if (rel == -1) continue;
            const Ball& fine = (rel == 2) ? a.ball : b.ball;
            r.add_term(a.coeff * b.coeff, fine.center, fine.level, a.phase + b.phase);
        }
    return r;
}

Cyclotomic BruhatSchwartz::eval(const QQ& x) const {
    Cyclotomic v = Cyclotomic::zero();
    for (const auto& t : terms_)
        if (ball_contains(ctx_->p(), t.ball, x)) v += t.coeff * ctx_->psi(t.phase * x);
    return v;
}

BruhatSchwartz BruhatSchwartz::fourier() const {
    // FT(coeff psi(a y) 1_{c+p^n O})(t) = coeff p^-n psi(c a) psi(c t) 1_{-a+p^-n O}(t)
    long p = ctx_->p();
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_) {
        Cyclotomic c = t.coeff * qq_pow(p, -t.ball.level) * ctx_->psi(t.ball.center * t.phase);
        r.add_term(c, -t.phase, -t.ball.level, t.ball.center);
    }
    return r;
}

BruhatSchwartz BruhatSchwartz::reflected() const {
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_) r.add_term(t.coeff, -t.ball.center, t.ball.level, -t.phase);
    return r;
}

BruhatSchwartz BruhatSchwartz::inverse_fourier() const { return fourier().reflected(); }

BruhatSchwartz BruhatSchwartz::conj() const {
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_) r.add_term(t.coeff.conj(), t.ball.center, t.ball.level, -t.phase);
    return r;
}

BruhatSchwartz BruhatSchwartz::translated(const QQ& s) const {
    // g(x) = f(x + s)
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_) {
        Cyclotomic c = t.coeff * ctx_->psi(t.phase * s);
        r.add_term(c, t.ball.center - s, t.ball.level, t.phase);
    }
    return r;
}

BruhatSchwartz BruhatSchwartz::scaled_arg(const QQ& s) const {
    // g(x) = f(s x)
    if (s == 0) throw std::domain_error("scaled_arg: zero scale");
    long p = ctx_->p();
    long v = valuation(s, p);
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_)
        r.add_term(t.coeff, t.ball.center / s, t.ball.level - v, t.phase * s);
    return r;
}

BruhatSchwartz BruhatSchwartz::phase_shifted(const QQ& a) const {
    BruhatSchwartz r(ctx_);
    for (const auto& t : terms_) r.add_term(t.coeff, t.ball.center, t.ball.level, t.phase + a);
    return r;
}

Cyclotomic BruhatSchwartz::integral() const {
    long p = ctx_->p();
    Cyclotomic s = Cyclotomic::zero();
    for (const auto& t : terms_) {
        if (t.phase != 0 && valuation(t.phase, p) < -t.ball.level) continue;
        s += t.coeff * ctx_->psi(t.phase * t.ball.center) * qq_pow(p, -t.ball.level);
    }
    return s;
}

Cyclotomic BruhatSchwartz::inner(const BruhatSchwartz& g) const {
    return ((*this) * g.conj()).integral();
}

void BruhatSchwartz::canonicalize() {
    long p = ctx_->p();
    std::vector<BSTerm> work = terms_;
    for (auto& t : work) normalize_term(t);

    // split coarser balls until all pairwise disjoint or equal
    bool changed = true;
    int guard = 0;
    while (changed) {
        if (++guard > 4000) throw std::runtime_error("canonicalize: split budget exceeded");
        changed = false;
        for (size_t i = 0; i < work.size() && !changed; ++i)
            for (size_t j = i + 1; j < work.size() && !changed; ++j) {
                int rel = ball_relation(p, work[i].ball, work[j].ball);
                if (rel != 1 && rel != 2) continue;
                size_t coarse = rel == 1 ? i : j;
                BSTerm t = work[coarse];
                work.erase(work.begin() + coarse);
                for (long d = 0; d < p; ++d) {
                    BSTerm child = t;
                    child.ball.center = t.ball.center + QQ(d) * qq_pow(p, t.ball.level);
                    child.ball.level = t.ball.level + 1;
                    normalize_term(child);
                    work.push_back(child);
                }
                changed = true;
            }
    }
    // merge identical (ball, phase)
    std::sort(work.begin(), work.end(), [](const BSTerm& a, const BSTerm& b) {
        if (a.ball.level != b.ball.level) return a.ball.level < b.ball.level;
        if (a.ball.center != b.ball.center) return a.ball.center < b.ball.center;
        return a.phase < b.phase;
    });
    std::vector<BSTerm> merged;
    for (auto& t : work) {
        if (!merged.empty() && merged.back().ball == t.ball && merged.back().phase == t.phase)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    terms_.clear();
    for (auto& t : merged)
        if (!t.coeff.is_zero()) terms_.push_back(t);
}

bool BruhatSchwartz::is_zero_function() const {
    BruhatSchwartz c = *this;
    c.canonicalize();
    return c.terms_.empty();
}

bool BruhatSchwartz::support_inside(const QQ& center, long level) const {
    BruhatSchwartz c = *this;
    c.canonicalize();
    Ball target{canonical_mod(center, ctx_->p(), level), level};
    for (const auto& t : c.terms_) {
        int rel = ball_relation(ctx_->p(), target, t.ball);
        if (rel != 0 && rel != 1) return false;
    }
    return true;
}

std::optional<long> BruhatSchwartz::support_min_val() const {
    BruhatSchwartz c = *this;
    c.canonicalize();
    std::optional<long> m;
    for (const auto& t : c.terms_) {
        long v = t.ball.center == 0 ? t.ball.level : valuation(t.ball.center, ctx_->p());
        if (!m || v < *m) m = v;
    }
    return m;
}

long BruhatSchwartz::max_level() const {
    long m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.ball.level > m) m = t.ball.level;
        first = false;
    }
    return m;
}

std::string BruhatSchwartz::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.str() << ")";
        if (t.phase != 0) os << "*psi(" << t.phase.get_str() << "*x)";
        os << "*1[" << t.ball.center.get_str() << "+p^" << t.ball.level << "O]";
    }
    return os.str();
}

} // namespace lharm
