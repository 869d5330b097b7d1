#include "aperyforge/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace aperyforge {

namespace {

// strip square factors found by trial division; d need not be fully
// squarefree for correctness, only for a tidy printed surd
void extract_square_part(mpz_class& d, mpz_class& s) {
    s = 1;
    if (d == 0) return;
    for (long p = 2; p < 100000 && mpz_class(p) * p <= d; p == 2 ? p = 3 : p += 2) {
        mpz_class pp = mpz_class(p) * p;
        while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
            d /= pp;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
        s *= r;
        d = 1;
    }
}

void normalize_surd(QuadSurd& s) {
    if (s.q == 0 || s.d == 0) { s.q = 0; s.d = 0; }
    if (s.d == 1 && s.q != 0) { s.p += s.q; s.q = 0; s.d = 0; }
    if (s.e < 0) { s.e = -s.e; s.p = -s.p; s.q = -s.q; }
    mpz_class g = int_gcd(int_gcd(s.p, s.q), s.e);
    if (g > 1) { s.p /= g; s.q /= g; s.e /= g; }
}

} // namespace

Real QuadSurd::to_real(mpfr_prec_t prec, mpfr_rnd_t rnd) const {
    Real r(prec);
    if (q == 0 || d == 0) {
        mpq_class v(p, e);
        v.canonicalize();
        mpfr_set_q(r.raw(), v.get_mpq_t(), rnd);
        return r;
    }
    // directed rounding through q*sqrt(d): flip the mode on the sqrt when q < 0
    mpfr_rnd_t inner = rnd;
    if (q < 0) {
        if (rnd == MPFR_RNDU) inner = MPFR_RNDD;
        else if (rnd == MPFR_RNDD) inner = MPFR_RNDU;
    }
    Real sq(prec);
    mpfr_set_z(sq.raw(), d.get_mpz_t(), inner);
    mpfr_sqrt(sq.raw(), sq.raw(), inner);
    mpfr_mul_z(sq.raw(), sq.raw(), q.get_mpz_t(), rnd);
    mpfr_add_z(sq.raw(), sq.raw(), p.get_mpz_t(), rnd);
    mpfr_div_z(r.raw(), sq.raw(), e.get_mpz_t(), rnd);
    return r;
}

std::string QuadSurd::to_string() const {
    std::string out = "(" + p.get_str();
    if (q != 0) {
        out += (q > 0 ? "+" : "-");
        mpz_class aq = abs(q);
        if (aq != 1) out += aq.get_str() + "*";
        out += "sqrt(" + d.get_str() + ")";
    }
    out += ")";
    if (e != 1) out += "/" + e.get_str();
    return out;
}

SmallestRoot quadratic_smallest_root(const ZPoly& P, mpfr_prec_t precision) {
    if (polyutil::deg(P) != 2) throw std::invalid_argument("expected a quadratic");
    const mpz_class a = P[2], b = P[1], c = P[0];
    mpz_class disc = b * b - 4 * a * c;
    SmallestRoot out;
    if (disc < 0) {
        // complex pair: report the common modulus sqrt(c/a)
        out.real_roots = false;
        mpz_class d = c * a, s;
        if (d < 0) throw std::domain_error("complex roots with negative modulus square");
        extract_square_part(d, s);
        out.root = QuadSurd{0, s, d, abs(a)};
        normalize_surd(out.root);
        out.companion = out.root;
        out.value = out.root.to_real(precision);
        return out;
    }
    mpz_class d = disc, s;
    extract_square_part(d, s);
    // roots (-b +- s sqrt(d)) / (2a); |r1| < |r2| iff -b*sqrt(disc)/a^2 < 0
    int which = sgn(b) > 0 ? +1 : -1; // +1 takes the +sqrt branch
    out.root = QuadSurd{-b, which * s, d, 2 * a};
    out.companion = QuadSurd{-b, -which * s, d, 2 * a};
    normalize_surd(out.root);
    normalize_surd(out.companion);
    out.value = out.root.to_real(precision);
    return out;
}

RadiusEstimate radius_estimate(const RationalSequence& a, mpfr_prec_t precision) {
    const long len = static_cast<long>(a.values.size());
    if (len < 30) throw std::invalid_argument("need at least 30 terms");
    // last indices with nonzero consecutive values
    std::vector<long> idx;
    for (long m = len - 1; m >= 1 && static_cast<long>(idx.size()) < 16; --m)
        if (a.values[static_cast<std::size_t>(m)] != 0 &&
            a.values[static_cast<std::size_t>(m - 1)] != 0)
            idx.push_back(m);
    if (idx.size() < 6) throw std::domain_error("tail has too many zeros");
    std::reverse(idx.begin(), idx.end());

    // level-0 data: log |a_m / a_{m-1}|, the first Richardson transform of log|a_m|/m
    std::vector<Real> x;
    std::vector<long> ms;
    for (long m : idx) {
        mpq_class r = a.values[static_cast<std::size_t>(m)] / a.values[static_cast<std::size_t>(m - 1)];
        Real t = Real::of(abs(r), precision);
        x.push_back(Real::log(t));
        ms.push_back(m);
    }
    Real prev_last = x.back();
    for (int level = 1; level <= 3; ++level) {
        std::vector<Real> y;
        std::vector<long> msy;
        for (std::size_t i = 1; i < x.size(); ++i) {
            // eliminate the 1/m^level error term
            Real wm = Real::of(mpq_class(ms[i]), precision);
            Real wp = Real::of(mpq_class(ms[i - 1]), precision);
            Real num = Real::sub(Real::mul(x[i], wm), Real::mul(x[i - 1], wp));
            if (level > 1) {
                Real wml(precision), wpl(precision);
                mpfr_pow_si(wml.raw(), wm.raw(), level, MPFR_RNDN);
                mpfr_pow_si(wpl.raw(), wp.raw(), level, MPFR_RNDN);
                num = Real::sub(Real::mul(x[i], wml), Real::mul(x[i - 1], wpl));
                y.push_back(Real::div(num, Real::sub(wml, wpl)));
            } else {
                y.push_back(num); // m - (m-1) = 1
            }
            msy.push_back(ms[i]);
        }
        prev_last = x.back();
        x = std::move(y);
        ms = std::move(msy);
    }
    RadiusEstimate est{Real(precision), Real(precision)};
    Real inv_r = x.back();
    Real neg(precision);
    mpfr_neg(neg.raw(), inv_r.raw(), MPFR_RNDN);
    est.value = Real::exp(neg);
    Real drift = Real::abs(Real::sub(inv_r, x[x.size() - 2]));
    Real jump = Real::abs(Real::sub(inv_r, prev_last));
    Real spread = Real::add(drift, jump);
    est.error_bar = Real::mul(est.value, spread);
    return est;
}

GateResult gate_check(const Real& r_phi_upper, int n, const mpz_class& C) {
    if (r_phi_upper.sign() <= 0) throw std::invalid_argument("r_phi must be positive");
    GateResult g;
    g.r_phi = r_phi_upper;
    g.n = n;
    g.C = C;
    const mpfr_prec_t prec = r_phi_upper.prec();
    Real en(prec);
    mpfr_set_si(en.raw(), n, MPFR_RNDU);
    mpfr_exp(en.raw(), en.raw(), MPFR_RNDU);
    Real prod(prec);
    mpfr_mul(prod.raw(), r_phi_upper.raw(), en.raw(), MPFR_RNDU);
    mpz_class ac = abs(C);
    mpfr_mul_z(prod.raw(), prod.raw(), ac.get_mpz_t(), MPFR_RNDU);
    g.product = prod;
    g.pass = mpfr_cmp_ui(prod.raw(), 1) < 0;
    return g;
}

LimitEstimate apery_limit(const RationalSequence& a, const RationalSequence& b,
                          mpfr_prec_t precision) {
    const long len = static_cast<long>(std::min(a.values.size(), b.values.size()));
    if (len < 4) throw std::invalid_argument("need at least 4 terms");
    const mpfr_prec_t wp = precision + 64;

    LimitEstimate best{Real(precision), Real(precision), 0};
    Real prev(wp);
    bool have_prev = false;
    Real target(wp);
    mpfr_set_ui_2exp(target.raw(), 1, -static_cast<mpfr_exp_t>(precision), MPFR_RNDN);

    std::vector<Real> diffs;
    for (long m = 1; m < len; ++m) {
        if (a.values[static_cast<std::size_t>(m)] == 0) continue;
        mpq_class ratio = b.values[static_cast<std::size_t>(m)] / a.values[static_cast<std::size_t>(m)];
        Real cur = Real::of(ratio, wp);
        if (have_prev) {
            Real err = Real::abs(Real::sub(cur, prev));
            diffs.push_back(err);
            best.value = cur;
            best.error_bar = err;
            best.used_index = m;
            Real scale = Real::mul(Real::abs(cur), target);
            if (mpfr_cmp(err.raw(), scale.raw()) <= 0 && m >= 8) break; // precision met
        }
        prev = cur;
        have_prev = true;
    }
    if (diffs.size() < 3) throw std::domain_error("not enough usable ratio terms");
    // no limit detected when the differences stopped decaying
    const Real& last = diffs.back();
    const Real& mid = diffs[diffs.size() / 2];
    if (last.sign() != 0 && mpfr_cmp(last.raw(), mid.raw()) > 0)
        throw std::domain_error("ratio differences do not decay; no limit detected");
    return best;
}

//
// ---- constants ----
//

namespace {

std::vector<mpq_class> bernoulli_upto(int n) {
    // B_0 .. B_n by sum_{k<=m} C(m+1,k) B_k = 0
    std::vector<mpq_class> B(static_cast<std::size_t>(n) + 1);
    B[0] = 1;
    mpz_class bin;
    for (int m = 1; m <= n; ++m) {
        mpq_class s = 0;
        for (int k = 0; k < m; ++k) {
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(m + 1),
                         static_cast<unsigned long>(k));
            s += mpq_class(bin) * B[static_cast<std::size_t>(k)];
        }
        B[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return B;
}

} // namespace

Real zeta_euler_maclaurin(int s, mpfr_prec_t precision, long terms) {
    if (s < 2) throw std::invalid_argument("s must be >= 2");
    const mpfr_prec_t wp = precision + 32;
    const int J = std::max<int>(16, static_cast<int>(precision / 10));
    long K = terms;
    if (K == 0) {
        // choose K so the first dropped correction is below 2^-(precision+16)
        double lg = std::lgamma(static_cast<double>(s + 2 * J + 1)) -
                    std::lgamma(static_cast<double>(s)) -
                    (2 * J + 2) * std::log(2 * std::acos(-1.0));
        double bits_needed = static_cast<double>(precision) + 16.0 + lg / std::log(2.0);
        K = static_cast<long>(std::pow(2.0, std::max(6.0, bits_needed / (s + 2 * J + 1))));
        K = std::max<long>(K, 32);
    }

    Real acc(wp), term(wp);
    mpfr_set_zero(acc.raw(), 1);
    for (long k = 1; k <= K; ++k) {
        mpfr_set_si(term.raw(), k, MPFR_RNDN);
        mpfr_pow_si(term.raw(), term.raw(), -s, MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
    }
    // tail from K: K^{1-s}/(s-1) - K^{-s}/2 (the k = K term was summed above)
    Real Kr(wp);
    mpfr_set_si(Kr.raw(), K, MPFR_RNDN);
    mpfr_pow_si(term.raw(), Kr.raw(), 1 - s, MPFR_RNDN);
    mpfr_div_si(term.raw(), term.raw(), s - 1, MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
    mpfr_pow_si(term.raw(), Kr.raw(), -s, MPFR_RNDN);
    mpfr_div_si(term.raw(), term.raw(), 2, MPFR_RNDN);
    mpfr_sub(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
    // sum_j B_{2j}/(2j)! (s)_{2j-1} K^{-s-2j+1}
    std::vector<mpq_class> B = bernoulli_upto(2 * J);
    mpq_class poch = s; // (s)_{2j-1} = s (s+1) ... (s+2j-2)
    mpz_class fact = 2; // (2j)!
    for (int j = 1; j <= J; ++j) {
        mpq_class coef = B[static_cast<std::size_t>(2 * j)] * poch / mpq_class(fact);
        Real t = Real::of(coef, wp);
        mpfr_pow_si(term.raw(), Kr.raw(), -s - 2 * j + 1, MPFR_RNDN);
        mpfr_mul(term.raw(), term.raw(), t.raw(), MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
        poch *= (s + 2 * j - 1);
        poch *= (s + 2 * j);
        fact *= (2 * j + 1);
        fact *= (2 * j + 2);
    }
    Real out(precision);
    mpfr_set(out.raw(), acc.raw(), MPFR_RNDN);
    return out;
}

std::map<std::string, Real> constant_catalog(mpfr_prec_t precision) {
    const mpfr_prec_t wp = 2 * precision; // computed at twice the request
    std::map<std::string, Real> cat;
    auto put = [&](const std::string& k, const Real& v) {
        Real r(precision);
        mpfr_set(r.raw(), v.raw(), MPFR_RNDN);
        cat.emplace(k, r);
    };
    put("zeta(2)", zeta_euler_maclaurin(2, wp));
    put("zeta(3)", zeta_euler_maclaurin(3, wp));
    for (long b = 1; b <= 16; ++b) {
        Real v(wp);
        mpq_class arg(b + 1, b);
        mpfr_set_q(v.raw(), arg.get_mpq_t(), MPFR_RNDN);
        mpfr_log(v.raw(), v.raw(), MPFR_RNDN);
        put("log(" + std::to_string(b + 1) + "/" + std::to_string(b) + ")", v);
    }
    Real g(wp);
    mpfr_const_catalan(g.raw(), MPFR_RNDN);
    put("catalan", g);
    // L(chi_{-3}, 3) = 4 pi^3 / (81 sqrt(3))
    Real pi(wp), l(wp);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    mpfr_pow_ui(l.raw(), pi.raw(), 3, MPFR_RNDN);
    mpfr_mul_ui(l.raw(), l.raw(), 4, MPFR_RNDN);
    Real s3(wp);
    mpfr_sqrt_ui(s3.raw(), 3, MPFR_RNDN);
    mpfr_mul_ui(s3.raw(), s3.raw(), 81, MPFR_RNDN);
    mpfr_div(l.raw(), l.raw(), s3.raw(), MPFR_RNDN);
    put("L(chi-3,3)", l);
    return cat;
}

MatchResult match_constant(const Real& v, const Real& err,
                           const std::map<std::string, Real>& catalog, long max_denominator) {
    if (!v.is_finite()) throw std::invalid_argument("v must be finite");
    const mpfr_prec_t prec = v.prec();
    MatchResult best;
    best.residual = Real(prec);
    mpfr_set_inf(best.residual.raw(), 1);

    for (const auto& [name, kappa] : catalog) {
        for (long q = 1; q <= max_denominator; ++q) {
            for (long p = -max_denominator; p <= max_denominator; ++p) {
                if (p == 0) continue;
                if (int_gcd(mpz_class(p), mpz_class(q)) != 1) continue;
                mpq_class c(p, q);
                c.canonicalize();
                Real cand = Real::mul(Real::of(c, prec), kappa);
                Real diff = Real::abs(Real::sub(v, cand));
                if (mpfr_cmp(diff.raw(), best.residual.raw()) < 0) {
                    best.residual = diff;
                    best.name = name;
                    best.multiple = c;
                }
            }
        }
    }
    // thresholds: within 10x error bar and ten significant digits, floored at
    // the resolution of the coarser operand (the catalog itself is rounded)
    mpfr_prec_t minprec = prec;
    for (const auto& [name, kappa] : catalog) minprec = std::min(minprec, kappa.prec());
    Real floor_tol(prec);
    mpfr_set_ui_2exp(floor_tol.raw(), 1, 8 - static_cast<mpfr_exp_t>(minprec), MPFR_RNDN);
    floor_tol = Real::mul(Real::abs(v), floor_tol);
    Real tol1 = Real::mul(Real::of(mpq_class(10), prec), err);
    if (tol1 < floor_tol) tol1 = floor_tol;
    Real tol2 = Real::mul(Real::abs(v), Real::of(mpq_class(1, 10000000000L), prec));
    best.matched = best.residual <= tol1 && best.residual <= tol2;
    if (!best.matched) {
        best.name.clear();
        best.multiple = 0;
    }
    return best;
}

Real regulator_integral(RegulatorKind kind, mpfr_prec_t precision) {
    // termwise integration: int_0^1 s^{k-1} ds = 1/k and
    // int_0^1 r^{k-1} log r dr = -1/k^2, so the two integrals reduce to
    // zeta(2) and -2 zeta(3); summed here with their own tail length
    if (kind == RegulatorKind::Dilog) return zeta_euler_maclaurin(2, precision, 97);
    Real z = zeta_euler_maclaurin(3, precision, 97);
    Real out(precision);
    mpfr_mul_si(out.raw(), z.raw(), -2, MPFR_RNDN);
    return out;
}

} // namespace aperyforge
