#include "aperyforge/frobenius.hpp"

#include <algorithm>

namespace aperyforge {

namespace {

// univariate jet in s of fixed length n (order n-1)
struct SJet {
    std::vector<mpq_class> c;
    explicit SJet(int n) : c(static_cast<std::size_t>(n)) {}

    static SJet constant(int n, const mpq_class& v) {
        SJet j(n);
        j.c[0] = v;
        return j;
    }

    SJet mul(const SJet& o) const {
        SJet r(static_cast<int>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; i + j < c.size(); ++j) {
                if (o.c[j] == 0) continue;
                r.c[i + j] += c[i] * o.c[j];
            }
        }
        return r;
    }

    SJet add(const SJet& o) const {
        SJet r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }

    SJet scaled(const mpq_class& v) const {
        SJet r = *this;
        for (auto& x : r.c) x *= v;
        return r;
    }

    SJet inverse() const {
        if (c[0] == 0) throw std::domain_error("jet is not a unit");
        SJet r(static_cast<int>(c.size()));
        r.c[0] = 1 / c[0];
        for (std::size_t k = 1; k < c.size(); ++k) {
            mpq_class s = 0;
            for (std::size_t i = 1; i <= k; ++i) s += c[i] * r.c[k - i];
            r.c[k] = -s / c[0];
        }
        return r;
    }
};

// q(x) evaluated at the jet x = m + s
SJet eval_at_shift(const QPoly& q, long m, int n) {
    SJet x(n);
    x.c[0] = m;
    if (n > 1) x.c[1] = 1;
    SJet acc = SJet::constant(n, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        acc = acc.mul(x);
        acc.c[0] += q[i];
    }
    return acc;
}

} // namespace

FrobeniusBasis frobenius_solutions(const DeltaOperator& d, long M) {
    if (d.is_zero()) throw std::invalid_argument("zero operator");
    const int n = d.order();
    // MUM at 0: the indicial polynomial q_0(x) must be (+-1) x^n
    PolynomialRecurrence rec = operator_to_recurrence(d);
    {
        const QPoly& q0 = rec.q.at(0);
        bool mum = polyutil::deg(q0) == n;
        for (int i = 0; i < n && mum; ++i)
            if (q0[static_cast<std::size_t>(i)] != 0) mum = false;
        if (!mum) throw std::domain_error("indicial polynomial at 0 is not s^n (not MUM)");
    }

    FrobeniusBasis basis;
    basis.order = n;
    basis.truncation = M;
    basis.f.assign(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(M) + 1));

    std::vector<SJet> cs;
    cs.reserve(static_cast<std::size_t>(M) + 1);
    cs.push_back(SJet::constant(n, 1));
    basis.f[0][0] = 1;
    for (long m = 1; m <= M; ++m) {
        SJet acc = SJet::constant(n, 0);
        for (int j = 1; j <= rec.span && j <= m; ++j) {
            const QPoly& qj = rec.q.at(static_cast<std::size_t>(j));
            if (qj.empty()) continue;
            acc = acc.add(eval_at_shift(qj, m, n).mul(cs[static_cast<std::size_t>(m - j)]));
        }
        SJet q0 = eval_at_shift(rec.q.at(0), m, n);
        SJet cm = acc.scaled(-1).mul(q0.inverse());
        for (int j = 0; j < n; ++j)
            basis.f[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] =
                cm.c[static_cast<std::size_t>(j)];
        cs.push_back(std::move(cm));
    }
    return basis;
}

std::variant<mpz_class, CertificateFailure> frobenius_denominator_certificate(
    const FrobeniusBasis& basis, long M, const mpz_class& bound) {
    if (M > basis.truncation) throw std::invalid_argument("basis truncation too short");
    ArithTables tables(std::max<long>(M + 1, 64));
    mpz_class eps = 1, lpow;
    for (long m = 0; m <= M; ++m) {
        const mpz_class& lm = m >= 1 ? tables.lcm_upto(m) : tables.lcm_upto(1);
        for (int j = 0; j < basis.order; ++j) {
            mpz_pow_ui(lpow.get_mpz_t(), lm.get_mpz_t(), static_cast<unsigned long>(j));
            mpq_class scaled = basis.f[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] * lpow;
            if (scaled.get_den() == 1) continue;
            eps = int_lcm(eps, scaled.get_den());
            if (eps > bound) return CertificateFailure{m, j};
        }
    }
    return eps;
}

//
// ---- jets in several variables ----
//

JetSeries JetSeries::constant(int nvars, int cap, const mpq_class& c) {
    JetSeries j(nvars, cap);
    j.add(std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
    return j;
}

JetSeries JetSeries::linear(int nvars, int cap, const std::vector<mpz_class>& coeffs) {
    JetSeries j(nvars, cap);
    for (int k = 0; k < nvars; ++k) {
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(k)] = 1;
        j.add(e, mpq_class(coeffs.at(static_cast<std::size_t>(k))));
    }
    return j;
}

void JetSeries::add(const std::vector<int>& e, const mpq_class& c) {
    if (c == 0) return;
    int total = 0;
    for (int v : e) total += v;
    if (total > cap_) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

mpq_class JetSeries::coeff(const std::vector<int>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

JetSeries JetSeries::operator+(const JetSeries& o) const {
    JetSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

JetSeries JetSeries::operator-(const JetSeries& o) const {
    JetSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, -c);
    return r;
}

JetSeries JetSeries::operator*(const JetSeries& o) const {
    JetSeries r(nvars_, cap_);
    std::vector<int> e(static_cast<std::size_t>(nvars_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add(e, ca * cb);
        }
    return r;
}

JetSeries JetSeries::operator*(const mpq_class& c) const {
    JetSeries r(nvars_, cap_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

JetSeries JetSeries::inverse() const {
    std::vector<int> zero(static_cast<std::size_t>(nvars_), 0);
    mpq_class u = coeff(zero);
    if (u == 0) throw std::domain_error("jet is not a unit");
    // 1/(u(1+v)) = (1/u) sum (-v)^p
    JetSeries v = *this * (1 / u);
    JetSeries vm = JetSeries::constant(nvars_, cap_, 1) - v; // = -v_+ (nilpotent part negated)
    JetSeries acc = JetSeries::constant(nvars_, cap_, 1);
    JetSeries pw = JetSeries::constant(nvars_, cap_, 1);
    for (int p = 1; p <= cap_; ++p) {
        pw = pw * vm;
        acc = acc + pw;
    }
    return acc * (1 / u);
}

//
// ---- GKZ coefficients ----
//

Effectivity classify_lvector(const LVector& l) {
    int negatives = 0;
    for (std::size_t i = 1; i < l.ell.size(); ++i)
        if (l.ell[i] < 0) ++negatives;
    if (negatives == 0) return Effectivity::Effective;
    if (negatives == 1) return Effectivity::QuasiEffective;
    return Effectivity::Neither;
}

GkzValue gkz_coefficient(const LVector& l, const MoriData& mori, const std::vector<int>& kappa) {
    const std::size_t N1 = l.ell.size();
    const int M = static_cast<int>(mori.generators.size());
    if (M == 0 || static_cast<int>(kappa.size()) != M)
        throw std::invalid_argument("kappa must have one entry per Mori generator");
    for (const auto& g : mori.generators)
        if (g.size() != N1) throw std::invalid_argument("generator size mismatch");
    int cap = 0;
    for (int k : kappa) cap += k;

    GkzValue out;
    out.effectivity = classify_lvector(l);
    if (l.l0() > 0) {
        out.pole = true; // Gamma(D_0)/Gamma(D_0 + l_0) is not a jet for l_0 > 0
        return out;
    }

    // D_i = sum_k l_i^(k) J_k
    auto D = [&](std::size_t i) {
        std::vector<mpz_class> coeffs;
        for (int k = 0; k < M; ++k) coeffs.push_back(mori.generators[static_cast<std::size_t>(k)][i]);
        return JetSeries::linear(M, cap, coeffs);
    };

    JetSeries num = JetSeries::constant(M, cap, 1);
    JetSeries den = JetSeries::constant(M, cap, 1);
    for (std::size_t i = 1; i < N1; ++i) {
        const mpz_class& li = l.ell[i];
        if (li > 0) {
            JetSeries Di = D(i);
            for (mpz_class t = 1; t <= li; ++t)
                den = den * (Di + JetSeries::constant(M, cap, mpq_class(t)));
        } else if (li < 0) {
            JetSeries Di = D(i);
            for (mpz_class t = 0; t < -li; ++t)
                num = num * (Di - JetSeries::constant(M, cap, mpq_class(t)));
        }
    }
    // trailing factor (D_0 - 1) ... (D_0 + l_0), sign-normalized so that the
    // kappa = 0 value on effective vectors is the positive multinomial
    JetSeries d0 = D(0);
    for (mpz_class t = 1; t <= -l.l0(); ++t)
        num = num * (d0 - JetSeries::constant(M, cap, mpq_class(t)));
    JetSeries b = num * den.inverse();
    if (mpz_odd_p(l.l0().get_mpz_t())) b = b * mpq_class(-1);

    // kappa-th derivative = kappa! * coefficient
    mpq_class fact = 1;
    for (int k : kappa)
        for (int t = 2; t <= k; ++t) fact *= t;
    out.value = b.coeff(kappa) * fact;
    return out;
}

bool gkz_divisibility_check(const LVector& l, const MoriData& mori, const std::vector<int>& kappa) {
    GkzValue v = gkz_coefficient(l, mori, kappa);
    if (v.pole) return false;
    if (v.value == 0) return true;
    long s = 0;
    if (v.effectivity == Effectivity::Effective) {
        s = mpz_class(abs(l.l0())).get_si();
    } else {
        mpz_class plus = 0;
        for (std::size_t i = 1; i < l.ell.size(); ++i)
            if (l.ell[i] > 0) plus += l.ell[i];
        s = plus.get_si();
    }
    int total = 0;
    for (int k : kappa) total += k;
    mpz_class lim = s >= 1 ? lcm_upto(s) : mpz_class(1), lpow;
    mpz_pow_ui(lpow.get_mpz_t(), lim.get_mpz_t(), static_cast<unsigned long>(total));
    return mpz_divisible_p(lpow.get_mpz_t(), v.value.get_den().get_mpz_t()) != 0;
}

} // namespace aperyforge
