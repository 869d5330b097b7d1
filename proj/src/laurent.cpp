#include "aperyforge/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace aperyforge {

LaurentPoly::LaurentPoly(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
}

LaurentPoly LaurentPoly::constant(int n, const mpq_class& c) {
    LaurentPoly f(n);
    f.add_term(ExponentVector(static_cast<std::size_t>(n), 0), c);
    return f;
}

LaurentPoly LaurentPoly::monomial(int n, const ExponentVector& e, const mpq_class& c) {
    LaurentPoly f(n);
    f.add_term(e, c);
    return f;
}

mpq_class LaurentPoly::coeff(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void LaurentPoly::add_term(const ExponentVector& e, const mpq_class& c) {
    if (static_cast<int>(e.size()) != n_)
        throw std::invalid_argument("exponent dimension mismatch");
    if (c == 0) return;
    mpq_class v = c;
    v.canonicalize(); // callers may pass raw p/q pairs
    auto [it, inserted] = terms_.emplace(e, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& g) const {
    if (n_ != g.n_) throw std::invalid_argument("dimension mismatch");
    LaurentPoly r = *this;
    for (const auto& [e, c] : g.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& g) const {
    if (n_ != g.n_) throw std::invalid_argument("dimension mismatch");
    LaurentPoly r = *this;
    for (const auto& [e, c] : g.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const mpq_class& c) const {
    LaurentPoly r(n_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& g) const {
    if (n_ != g.n_) throw std::invalid_argument("dimension mismatch");
    LaurentPoly r(n_);
    ExponentVector e(static_cast<std::size_t>(n_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : g.terms_) {
            for (int i = 0; i < n_; ++i) e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool LaurentPoly::is_integral() const {
    for (const auto& [e, c] : terms_)
        if (c.get_den() != 1) return false;
    return true;
}

LaurentPoly LaurentPoly::negate_variables() const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) {
        long s = 0;
        for (int v : e) s += v;
        r.terms_.emplace(e, (s % 2 == 0) ? c : -c);
    }
    return r;
}

void LaurentPoly::support_bounds(std::vector<int>& mn, std::vector<int>& mx) const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no support");
    mn.assign(static_cast<std::size_t>(n_), 0);
    mx.assign(static_cast<std::size_t>(n_), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < n_; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (first) { mn[ui] = mx[ui] = e[ui]; }
            else {
                mn[ui] = std::min(mn[ui], e[ui]);
                mx[ui] = std::max(mx[ui], e[ui]);
            }
        }
        first = false;
    }
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (int i = 0; i < n_; ++i) {
            int p = e[static_cast<std::size_t>(i)];
            if (p == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (p != 1) mono += "^" + std::to_string(p);
        }
        std::string cs = rat_to_string(c);
        std::string piece;
        if (mono.empty()) piece = cs;
        else if (cs == "1") piece = mono;
        else if (cs == "-1") piece = "-" + mono;
        else piece = cs + "*" + mono;
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out;
}

//
// ---- parser ----
//

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    mpz_class digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected number", start);
        return mpz_class(s.substr(start, pos - start));
    }

    long small_int(const mpz_class& z, std::size_t at) {
        if (!z.fits_slong_p()) throw SyntaxError("exponent out of range", at);
        return z.get_si();
    }

    // number := digits ['/' digits]
    mpq_class number() {
        mpz_class num = digits();
        if (accept('/')) {
            std::size_t at = pos;
            mpz_class den = digits();
            if (den == 0) throw SyntaxError("zero denominator", at);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

    // exponent := ['-'] digits | '(' ['-'] digits ')'
    long exponent(std::size_t caret_at) {
        skip_ws();
        bool paren = accept('(');
        bool negative = accept('-');
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw SyntaxError("expected integer exponent after '^'", caret_at);
        mpz_class z = digits();
        if (paren && !accept(')')) throw SyntaxError("expected ')'", pos);
        long e = small_int(z, caret_at);
        return negative ? -e : e;
    }

    LaurentPoly primary() {
        skip_ws();
        if (pos >= s.size()) throw SyntaxError("unexpected end of input", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            LaurentPoly f = expr();
            if (!accept(')')) throw SyntaxError("expected ')'", pos);
            return f;
        }
        if (c == 'x') {
            std::size_t at = pos;
            ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw SyntaxError("expected variable index", pos);
            long idx = small_int(digits(), at);
            if (idx < 1 || idx > n)
                throw SyntaxError("variable index out of dimension", at);
            ExponentVector e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(idx - 1)] = 1;
            return LaurentPoly::monomial(n, e);
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return LaurentPoly::constant(n, number());
        throw SyntaxError("unexpected character", pos);
    }

    LaurentPoly factor() {
        LaurentPoly base = primary();
        skip_ws();
        if (peek('^')) {
            std::size_t caret_at = pos;
            ++pos;
            long e = exponent(caret_at);
            if (base.term_count() != 1)
                throw SyntaxError("'^' applies to a single monomial", caret_at);
            const auto& [be, bc] = *base.terms().begin();
            ExponentVector ne(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                ne[static_cast<std::size_t>(i)] = static_cast<int>(be[static_cast<std::size_t>(i)] * e);
            return LaurentPoly::monomial(n, ne, rat_pow(bc, e));
        }
        return base;
    }

    LaurentPoly term() {
        LaurentPoly f = factor();
        while (accept('*')) f = f * factor();
        return f;
    }

    LaurentPoly expr() {
        bool neg = false;
        skip_ws();
        if (accept('-')) neg = true;
        else accept('+');
        LaurentPoly f = term();
        if (neg) f = -f;
        while (true) {
            skip_ws();
            if (accept('+')) f = f + term();
            else if (accept('-')) f = f - term();
            else break;
        }
        return f;
    }
};

} // namespace

LaurentPoly parse_laurent(const std::string& text, int n) {
    Parser p{text, 0, n};
    LaurentPoly f = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos);
    return f;
}

//
// ---- constant-term powers ----
//

namespace {

// Feasibility of one coordinate value v: exists m' in [0, rem] with
// m'*mn <= -v <= m'*mx  (mn/mx the support bounds of that coordinate).
bool coord_feasible(int v, int mn, int mx, int rem) {
    if (v == 0) return true;
    if (rem <= 0) return false;
    if (v > 0) {
        if (mn >= 0) return false;
        long need = (v + (-mn) - 1) / (-mn); // ceil(v / -mn)
        if (need > rem) return false;
        if (mx < 0 && need > v / (-mx)) return false;
        return true;
    }
    if (mx <= 0) return false;
    long need = ((-v) + mx - 1) / mx; // ceil(-v / mx)
    if (need > rem) return false;
    if (mn > 0 && need > (-v) / mn) return false;
    return true;
}

struct DenseBox {
    std::vector<long> lo, hi, stride; // per coordinate, stride[last]=1
    long size = 0;

    void set(const std::vector<long>& l, const std::vector<long>& h) {
        lo = l; hi = h;
        std::size_t n = lo.size();
        stride.assign(n, 1);
        long acc = 1; // last index fastest
        for (std::size_t i = n; i-- > 0;) {
            long w = hi[i] - lo[i] + 1;
            if (w <= 0) { size = 0; return; }
            stride[i] = acc;
            acc *= w;
        }
        size = acc;
    }

    long index(const std::vector<long>& coords) const {
        long idx = 0;
        for (std::size_t i = 0; i < lo.size(); ++i)
            idx += (coords[i] - lo[i]) * stride[i];
        return idx;
    }
};

} // namespace

RationalSequence constant_term_powers(const LaurentPoly& phi, int M, bool prune) {
    if (M < 0) throw std::invalid_argument("M must be >= 0");
    if (phi.is_zero()) throw std::domain_error("zero polynomial");
    const int n = phi.dim();

    RationalSequence out;
    out.start = 0;
    out.values.reserve(static_cast<std::size_t>(M) + 1);
    out.values.emplace_back(1); // a_0 = 1 by convention
    if (M == 0) return out;

    // Clear denominators: phi = psi / D with psi integral.
    mpz_class D = 1;
    for (const auto& [e, c] : phi.terms()) D = int_lcm(D, c.get_den());
    struct Term { ExponentVector e; mpz_class c; };
    std::vector<Term> terms;
    terms.reserve(phi.term_count());
    for (const auto& [e, c] : phi.terms()) {
        mpq_class scaled = c * D;
        terms.push_back({e, mpz_class(scaled.get_num())});
    }

    std::vector<int> mn, mx;
    phi.support_bounds(mn, mx);

    auto step_bounds = [&](int k, std::vector<long>& lo, std::vector<long>& hi) {
        lo.assign(static_cast<std::size_t>(n), 0);
        hi.assign(static_cast<std::size_t>(n), 0);
        long rem = prune ? (M - k) : 0;
        for (int i = 0; i < n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            long l = static_cast<long>(k) * mn[ui];
            long h = static_cast<long>(k) * mx[ui];
            if (prune) {
                l = std::max(l, -(rem * static_cast<long>(std::max(mx[ui], 0))));
                h = std::min(h, rem * static_cast<long>(std::max(-mn[ui], 0)));
            }
            lo[ui] = l; hi[ui] = h;
        }
    };

    DenseBox cur;
    {
        std::vector<long> lo(static_cast<std::size_t>(n), 0), hi(static_cast<std::size_t>(n), 0);
        cur.set(lo, hi);
    }
    std::vector<mpz_class> vals(1, mpz_class(1));
    mpz_class Dk = 1;

    std::vector<long> lo, hi, coords, tgt;
    for (int k = 1; k <= M; ++k) {
        step_bounds(k, lo, hi);
        DenseBox nxt;
        nxt.set(lo, hi);
        std::vector<mpz_class> nvals(static_cast<std::size_t>(std::max<long>(nxt.size, 0)));
        const int rem = M - k;

        // Per-coordinate feasibility masks on the output box.
        std::vector<std::vector<char>> mask(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            mask[ui].resize(static_cast<std::size_t>(hi[ui] - lo[ui] + 1), 1);
            if (prune)
                for (long v = lo[ui]; v <= hi[ui]; ++v)
                    mask[ui][static_cast<std::size_t>(v - lo[ui])] =
                        coord_feasible(static_cast<int>(v), mn[ui], mx[ui], rem) ? 1 : 0;
        }

        coords = cur.lo;
        tgt.assign(static_cast<std::size_t>(n), 0);
        for (long idx = 0; idx < cur.size; ++idx) {
            const mpz_class& v = vals[static_cast<std::size_t>(idx)];
            if (v != 0) {
                for (const Term& t : terms) {
                    bool ok = true;
                    for (int i = 0; i < n; ++i) {
                        auto ui = static_cast<std::size_t>(i);
                        long w = coords[ui] + t.e[ui];
                        if (w < lo[ui] || w > hi[ui] || !mask[ui][static_cast<std::size_t>(w - lo[ui])]) { ok = false; break; }
                        tgt[ui] = w;
                    }
                    if (!ok) continue;
                    mpz_class& dst = nvals[static_cast<std::size_t>(nxt.index(tgt))];
                    mpz_addmul(dst.get_mpz_t(), v.get_mpz_t(), t.c.get_mpz_t());
                }
            }
            // odometer increment
            for (std::size_t i = coords.size(); i-- > 0;) {
                if (++coords[i] <= cur.hi[i]) break;
                coords[i] = cur.lo[i];
            }
        }

        cur = nxt;
        vals = std::move(nvals);
        Dk *= D;

        std::vector<long> zero(static_cast<std::size_t>(n), 0);
        bool in_box = true;
        for (int i = 0; i < n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (lo[ui] > 0 || hi[ui] < 0) { in_box = false; break; }
        }
        mpq_class ak(0);
        if (in_box && cur.size > 0) {
            ak = mpq_class(vals[static_cast<std::size_t>(cur.index(zero))]);
            ak /= Dk;
        }
        out.values.push_back(ak);
    }
    return out;
}

LaurentPoly monomial_substitute(const LaurentPoly& f, const MonomialMap& map) {
    const int n = f.dim();
    if (static_cast<int>(map.target.size()) != n || static_cast<int>(map.sign.size()) != n)
        throw std::invalid_argument("map dimension mismatch");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int t = map.target[static_cast<std::size_t>(i)];
        if (t < 0 || t >= n || seen[static_cast<std::size_t>(t)])
            throw std::invalid_argument("map is not a bijection");
        seen[static_cast<std::size_t>(t)] = 1;
        int s = map.sign[static_cast<std::size_t>(i)];
        if (s != 1 && s != -1) throw std::invalid_argument("sign must be +1 or -1");
    }
    LaurentPoly r(n);
    ExponentVector e2(static_cast<std::size_t>(n));
    for (const auto& [e, c] : f.terms()) {
        std::fill(e2.begin(), e2.end(), 0);
        for (int i = 0; i < n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            e2[static_cast<std::size_t>(map.target[ui])] = map.sign[ui] * e[ui];
        }
        r.add_term(e2, c);
    }
    return r;
}

mpq_class eval_rational(const LaurentPoly& f, const std::vector<mpq_class>& point) {
    if (static_cast<int>(point.size()) != f.dim())
        throw std::invalid_argument("point dimension mismatch");
    for (const auto& x : point)
        if (x == 0) throw std::domain_error("zero coordinate");
    mpq_class acc = 0;
    for (const auto& [e, c] : f.terms()) {
        mpq_class t = c;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (e[i] != 0) t *= rat_pow(point[i], e[i]);
        acc += t;
    }
    return acc;
}

} // namespace aperyforge
