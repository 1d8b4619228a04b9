#include "lharm/shell.hpp"

#include <sstream>

namespace lharm {

namespace {
long cdiv(long a, long b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); }

std::optional<QQ> ycyc_abs_sq(const YCyc& c, long p) {
    const Cyclotomic* part = nullptr;
    long yshift = 0;
    if (c.yc.is_zero() && !c.re.is_zero()) {
        part = &c.re;
    } else if (c.re.is_zero() && !c.yc.is_zero()) {
        part = &c.yc;
        yshift = 1;
    } else {
        return std::nullopt;
    }
    if (part->support_size() != 1) return std::nullopt;
    QQ q = part->coeffs().begin()->second;
    QQ r = q * q;
    if (yshift) r /= p;
    return r;
}
} // namespace

std::optional<QQ> ratfunc_abs_sq(const RatFunc& r) {
    if (r.is_zero()) return QQ(0);
    if (r.num().terms().size() != 1 || r.den().terms().size() != 1) return std::nullopt;
    const auto& [mn, cn] = *r.num().terms().begin();
    const auto& [md, cd] = *r.den().terms().begin();
    if (mn.xe != md.xe) return std::nullopt;  // a genuine X power has no modulus
    long p = r.prime();
    auto an = ycyc_abs_sq(cn, p), ad = ycyc_abs_sq(cd, p);
    if (!an || !ad) return std::nullopt;
    return *an / *ad;
}

ShellFunction::ShellFunction(const PAdicContext* ctx, long m_lo, long m_hi,
                             std::vector<std::vector<RatFunc>> window, std::vector<Strand> tail)
    : ctx_(ctx),
      nclasses_(ctx->unit_class_count()),
      m_lo_(m_lo),
      m_hi_(m_hi),
      window_(std::move(window)),
      tail_(std::move(tail)) {
    if (m_hi_ < m_lo_) throw std::invalid_argument("ShellFunction: bad window");
    if (window_.size() != static_cast<size_t>(m_hi_ - m_lo_))
        throw std::invalid_argument("ShellFunction: window size mismatch");
    for (auto& row : window_)
        if (row.size() != static_cast<size_t>(nclasses_))
            throw std::invalid_argument("ShellFunction: class count mismatch");
    for (auto& s : tail_)
        if (s.coeff.size() != static_cast<size_t>(nclasses_))
            throw std::invalid_argument("ShellFunction: strand class count mismatch");
}

ShellFunction ShellFunction::zero(const PAdicContext* ctx) {
    return ShellFunction(ctx, 0, 0, {}, {});
}

ShellFunction ShellFunction::shell_indicator(const PAdicContext* ctx, long m0, long m1) {
    long p = ctx->p();
    int C = ctx->unit_class_count();
    std::vector<std::vector<RatFunc>> w(m1 - m0, std::vector<RatFunc>(C, RatFunc::one(p)));
    return ShellFunction(ctx, m0, m1, std::move(w), {});
}

ShellFunction ShellFunction::square_unit_shell(const PAdicContext* ctx) {
    long p = ctx->p();
    int C = ctx->unit_class_count();
    std::vector<std::vector<RatFunc>> w(1, std::vector<RatFunc>(C, RatFunc::zero(p)));
    w[0][0] = RatFunc::one(p);  // class index 0 is the trivial class
    return ShellFunction(ctx, 0, 1, std::move(w), {});
}

RatFunc ShellFunction::value(int cls, long m) const {
    long p = ctx_->p();
    if (cls < 0 || cls >= nclasses_) throw std::invalid_argument("bad class index");
    if (m < m_lo_) return RatFunc::zero(p);
    if (m < m_hi_) return window_[m - m_lo_][cls];
    auto it = tail_cache_.find(m);
    if (it == tail_cache_.end()) {
        std::vector<RatFunc> row;
        for (int i = 0; i < nclasses_; ++i) {
            RatFunc v = RatFunc::zero(p);
            for (const auto& s : tail_) {
                RatFunc r = s.coeff[i];
                for (long k = 0; k < m - m_hi_; ++k) r *= s.ratio;
                v += r;
            }
            row.push_back(std::move(v));
        }
        it = tail_cache_.emplace(m, std::move(row)).first;
    }
    return it->second[cls];
}

RatFunc ShellFunction::value_at(const QQ& x) const {
    if (x == 0) throw std::domain_error("shell function at 0");
    long m = ctx_->val(x);
    int cls = ctx_->square_class_index(unit_part(x, ctx_->p()));
    return value(cls, m);
}

bool ShellFunction::is_zero() const {
    for (const auto& row : window_)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    for (const auto& s : tail_)
        for (const auto& v : s.coeff)
            if (!v.is_zero()) return false;
    return true;
}

bool ShellFunction::is_even() const {
    int neg = ctx_->square_class_index(QQ(-1));
    for (long m = m_lo_; m < m_hi_; ++m)
        for (int i = 0; i < nclasses_; ++i)
            if (!(value(i, m) == value(ctx_->class_mul(i, neg), m))) return false;
    for (const auto& s : tail_)
        for (int i = 0; i < nclasses_; ++i)
            if (!(s.coeff[i] == s.coeff[ctx_->class_mul(i, neg)])) return false;
    return true;
}

bool ShellFunction::class_independent() const {
    for (const auto& row : window_)
        for (const auto& v : row)
            if (!(v == row[0])) return false;
    for (const auto& s : tail_)
        for (const auto& v : s.coeff)
            if (!(v == s.coeff[0])) return false;
    return true;
}

ShellFunction ShellFunction::conj() const {
    auto w = window_;
    for (auto& row : w)
        for (auto& v : row) v = v.conj();
    auto t = tail_;
    for (auto& s : t) {
        for (auto& v : s.coeff) v = v.conj();
        s.ratio = s.ratio.conj();
    }
    return ShellFunction(ctx_, m_lo_, m_hi_, std::move(w), std::move(t));
}

ShellFunction ShellFunction::scaled(const RatFunc& c) const {
    auto w = window_;
    for (auto& row : w)
        for (auto& v : row) v *= c;
    auto t = tail_;
    for (auto& s : t)
        for (auto& v : s.coeff) v *= c;
    return ShellFunction(ctx_, m_lo_, m_hi_, std::move(w), std::move(t));
}

ShellFunction ShellFunction::operator+(const ShellFunction& o) const {
    long p = ctx_->p();
    long lo = std::min(m_lo_, o.m_lo_);
    long hi = std::max(m_hi_, o.m_hi_);
    std::vector<std::vector<RatFunc>> w(hi - lo, std::vector<RatFunc>(nclasses_, RatFunc::zero(p)));
    for (long m = lo; m < hi; ++m)
        for (int i = 0; i < nclasses_; ++i) w[m - lo][i] = value(i, m) + o.value(i, m);
    std::vector<Strand> t;
    for (const auto& s : tail_) {
        Strand s2 = s;
        for (auto& c : s2.coeff) {
            RatFunc shift = RatFunc::one(p);
            for (long i = 0; i < hi - m_hi_; ++i) shift *= s.ratio;
            c *= shift;
        }
        t.push_back(std::move(s2));
    }
    for (const auto& s : o.tail_) {
        Strand s2 = s;
        for (auto& c : s2.coeff) {
            RatFunc shift = RatFunc::one(p);
            for (long i = 0; i < hi - o.m_hi_; ++i) shift *= s.ratio;
            c *= shift;
        }
        t.push_back(std::move(s2));
    }
    return ShellFunction(ctx_, lo, hi, std::move(w), std::move(t));
}

bool ShellFunction::tail_summable(const QQ& w) const {
    long p = ctx_->p();
    for (const auto& s : tail_) {
        bool live = false;
        for (const auto& c : s.coeff)
            if (!c.is_zero()) live = true;
        if (!live) continue;
        auto m = ratfunc_abs_sq(s.ratio);
        if (!m) return false;
        // |ratio * p^-w|^2 = |ratio|^2 p^{-2w} < 1
        QQ two_w = w * 2;
        if (two_w.get_den() != 1) return false;
        QQ bound = *m * qq_pow(p, -two_w.get_num().get_si());
        if (!(bound < 1)) return false;
    }
    return true;
}

std::string ShellFunction::str() const {
    std::ostringstream os;
    os << "shell[m in [" << m_lo_ << "," << m_hi_ << "), " << tail_.size() << " strands]";
    return os.str();
}

// ------------------------------------------------------------------ f2

RatFunc f2_shell(const ShellFunction& W, const QQ& t) {
    const PAdicContext& ctx = *W.ctx();
    long p = ctx.p();
    int C = W.classes();
    RatFunc total = RatFunc::zero(p);
    long vt_shifted = (t == 0) ? 0 : ctx.val(t);
    // shells where psi(t x^2) is nontrivial: 2m + v(t) < 0
    long m_triv = (t == 0) ? W.m_lo() : std::max(W.m_lo(), cdiv(-vt_shifted, 2));
    long m_expl = std::max(W.m_hi(), m_triv);

    for (long m = W.m_lo(); m < m_expl; ++m)
        for (int i = 0; i < C; ++i) {
            RatFunc v = W.value(i, m);
            if (v.is_zero()) continue;
            Cyclotomic atom = gauss_class_shell(ctx, t, m, i);
            if (!atom.is_zero()) total += v * RatFunc::from_cyc(p, atom);
        }
    // trivial range m >= m_expl: atom = measure(class) p^-m
    for (int i = 0; i < C; ++i) {
        RatFunc meas = RatFunc::from_qq(p, ctx.unit_class_additive_measure(i));
        for (const auto& s : W.tail()) {
            if (s.coeff[i].is_zero()) continue;
            RatFunc r = s.ratio * RatFunc::from_qq(p, QQ(1, p));
            if (r == RatFunc::one(p))
                throw std::domain_error("f2_shell: non-summable tail (ratio 1)");
            RatFunc first = s.coeff[i] * RatFunc::from_qq(p, qq_pow(p, -m_expl));
            for (long k = 0; k < m_expl - W.m_hi(); ++k) first *= s.ratio;
            total += meas * first / (RatFunc::one(p) - r);
        }
    }
    return total;
}


RatFunc f2_shell_tilde(const ShellFunction& W, const QQ& t) {
    // 2|2|^-1 int ~W(y) |y|^{-1/2} psi(ty) dy.  On the y-shell v(y) = 2m write
    // y = p^{2m} w with w a square unit; the contribution is
    // p^{-m} int_{w square unit} W(m, class(sqrt w)) psi(b w) dw,  b = t p^{2m}.
    const PAdicContext& ctx = *W.ctx();
    long p = ctx.p();
    if (!W.is_even()) throw std::domain_error("tilde route requires an even function");
    long cls_level = (p == 2) ? 3 : 1;
    long F = (p == 2) ? 5 : 1;  // measurability level of the root-class partition
    int neg = ctx.square_class_index(QQ(-1));

    // root-class pairs {i, i*cls(-1)}; the squared image of a pair has
    // w-measure vol(pair classes) * |2| / 2
    std::vector<int> pair_reps;
    for (int i = 0; i < ctx.unit_class_count(); ++i) {
        bool seen = false;
        for (int r : pair_reps)
            if (r == i || ctx.class_mul(r, neg) == i) seen = true;
        if (!seen) pair_reps.push_back(i);
    }
    auto pair_w_measure = [&](int rep) -> QQ {
        int other = ctx.class_mul(rep, neg);
        QQ u = ctx.unit_class_additive_measure(rep);
        if (other != rep) u += ctx.unit_class_additive_measure(other);
        return u * (p == 2 ? QQ(1, 2) : QQ(1)) / 2;
    };

    RatFunc total = RatFunc::zero(p);
    long vt = (t == 0) ? 0 : ctx.val(t);
    long m_triv = (t == 0) ? W.m_lo() : std::max(W.m_lo(), cdiv(-vt, 2));
    long m_start = (t == 0) ? W.m_lo() : std::max(W.m_lo(), cdiv(-F - vt, 2));

    // oscillatory band
    for (long m = m_start; m < m_triv; ++m) {
        QQ b = t * qq_pow(p, 2 * m);
        long vb = valuation(b, p);
        if (-vb > F) continue;  // the shell integral vanishes
        long M = std::max(F, -vb);
        long pM = 1;
        for (long i = 0; i < M; ++i) pM *= p;
        RatFunc acc = RatFunc::zero(p);
        for (long w = 1; w < pM; ++w) {
            if (w % p == 0) continue;
            if (!ctx.is_square_unit(QQ(w))) continue;
            QQ root = padic_sqrt_approx(ctx, QQ(w), cls_level + 2);
            int rcls = ctx.square_class_index(root);
            RatFunc val = W.value(rcls, m);
            if (val.is_zero()) continue;
            acc += val * RatFunc::from_cyc(p, ctx.psi(b * w));
        }
        total += acc * RatFunc::from_qq(p, qq_pow(p, -m - M));
    }

    // trivial range, explicit window part
    for (long m = std::max(W.m_lo(), m_triv); m < std::max(W.m_hi(), m_triv); ++m) {
        if (m >= W.m_hi()) break;
        for (int rep : pair_reps) {
            RatFunc val = W.value(rep, m);
            if (val.is_zero()) continue;
            total += val * RatFunc::from_qq(p, pair_w_measure(rep) * qq_pow(p, -m));
        }
    }
    // trivial range, geometric strands
    long m0 = std::max(W.m_hi(), m_triv);
    for (const auto& s : W.tail()) {
        for (int rep : pair_reps) {
            if (s.coeff[rep].is_zero()) continue;
            RatFunc r = s.ratio * RatFunc::from_qq(p, QQ(1, p));
            if (r == RatFunc::one(p))
                throw std::domain_error("f2_shell_tilde: non-summable tail");
            RatFunc first =
                s.coeff[rep] * RatFunc::from_qq(p, pair_w_measure(rep) * qq_pow(p, -m0));
            for (long k = 0; k < m0 - W.m_hi(); ++k) first *= s.ratio;
            total += first / (RatFunc::one(p) - r);
        }
    }

    QQ two_abs = (p == 2) ? QQ(4) : QQ(2);  // 2 |2|^-1
    return total * RatFunc::from_qq(p, two_abs);
}

ShellFunction tilde_lift(const ShellFunction& W) {
    const PAdicContext& ctx = *W.ctx();
    long p = ctx.p();
    if (!W.is_even()) throw std::domain_error("tilde_lift: function must be even");
    if (!W.class_independent())
        throw std::domain_error("tilde_lift: lift is shell-measurable only for "
                                "class-independent functions");
    for (const auto& s : W.tail())
        for (const auto& c : s.coeff)
            if (!c.is_zero())
                throw std::domain_error("tilde_lift: tails are handled through "
                                        "f2_shell_tilde, not materialized");
    // ~W(y) = W(sqrt y): supported on even shells 2m and the trivial class
    int C = ctx.unit_class_count();
    long lo = 2 * W.m_lo(), hi = 2 * (W.m_hi() - 1) + 1;
    std::vector<std::vector<RatFunc>> win(hi - lo, std::vector<RatFunc>(C, RatFunc::zero(p)));
    for (long m = W.m_lo(); m < W.m_hi(); ++m) win[2 * m - lo][0] = W.value(0, m);
    return ShellFunction(&ctx, lo, hi, std::move(win), {});
}

RatFunc pair_weighted(const ShellFunction& W, const BruhatSchwartz& phi) {
    // int W(x) phi(x) |x|^-1 dx
    const PAdicContext& ctx = *W.ctx();
    long p = ctx.p();
    long cls_level = (p == 2) ? 3 : 1;
    RatFunc total = RatFunc::zero(p);

    BruhatSchwartz f = phi;
    f.canonicalize();
    for (const auto& term : f.terms()) {
        const Ball& B = term.ball;
        const QQ& a = term.phase;
        if (B.center != 0) {
            long v = valuation(B.center, p);
            if (B.level - v >= cls_level) {
                int cls = ctx.square_class_index(unit_part(B.center, p));
                RatFunc val = W.value(cls, v);
                if (val.is_zero()) continue;
                // int_B psi(ax) dx, weighted by |x|^-1 = p^v on the shell
                Cyclotomic a1 = gauss_ball_integral(ctx, QQ(0), a, B);
                total += val * RatFunc::from_cyc(p, term.coeff * a1) *
                         RatFunc::from_qq(p, qq_pow(p, v));
            } else {
                // refine until the class is constant
                BruhatSchwartz sub(&ctx);
                long step = B.level;
                long want = v + cls_level;
                long cnt = 1;
                for (long i = 0; i < want - B.level; ++i) cnt *= p;
                for (long j = 0; j < cnt; ++j)
                    sub.add_term(term.coeff, B.center + QQ(j) * qq_pow(p, step), want, a);
                total += pair_weighted(W, sub);
            }
            continue;
        }
        // zero-centered ball p^n O: shells m >= n
        long n = B.level;
        long va = (a == 0) ? 0 : valuation(a, p);
        long m_stable = std::max({n, (a == 0) ? n : -va, W.m_hi()});
        for (long m = n; m < m_stable; ++m) {
            for (int i = 0; i < W.classes(); ++i) {
                RatFunc val = W.value(i, m);
                if (val.is_zero()) continue;
                Cyclotomic atom = unit_char_integral(ctx, nullptr, a * qq_pow(p, m), QQ(1), 0, i);
                if (atom.is_zero()) continue;
                total += val * RatFunc::from_cyc(p, term.coeff * atom);
            }
        }
        // stable tail: psi trivial, strand sums
        for (const auto& s : W.tail()) {
            for (int i = 0; i < W.classes(); ++i) {
                if (s.coeff[i].is_zero()) continue;
                if (s.ratio == RatFunc::one(p))
                    throw std::domain_error("pair_weighted: non-summable tail");
                RatFunc first = s.coeff[i] * RatFunc::from_qq(p, ctx.unit_class_additive_measure(i));
                for (long k = 0; k < m_stable - W.m_hi(); ++k) first *= s.ratio;
                total += RatFunc::from_cyc(p, term.coeff) * first / (RatFunc::one(p) - s.ratio);
            }
        }
    }
    return total;
}

} // namespace lharm
