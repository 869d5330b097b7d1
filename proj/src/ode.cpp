#include "aperyforge/ode.hpp"

#include <algorithm>

#include "aperyforge/linalg.hpp"

namespace aperyforge {

namespace polyutil {

int deg(const ZPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

int deg(const QPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) g = int_gcd(g, c);
    return g;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

mpz_class eval(const ZPoly& p, const mpz_class& x) {
    mpz_class r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

} // namespace polyutil

DeltaOperator::DeltaOperator() = default;

DeltaOperator::DeltaOperator(std::vector<QPoly> coeffs, const mpq_class& scale) {
    // clear denominators, keep exact value in scale_
    mpz_class den = 1;
    for (auto& p : coeffs)
        for (auto& c : p) den = int_lcm(den, c.get_den());
    p_.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        p_[k].resize(coeffs[k].size());
        for (std::size_t j = 0; j < coeffs[k].size(); ++j) {
            mpq_class v = coeffs[k][j] * den;
            p_[k][j] = v.get_num();
        }
    }
    scale_ = scale / den;
    normalize();
}

DeltaOperator DeltaOperator::from_integer(std::vector<ZPoly> coeffs, const mpq_class& scale) {
    DeltaOperator d;
    d.p_ = std::move(coeffs);
    d.scale_ = scale;
    d.normalize();
    return d;
}

void DeltaOperator::normalize() {
    for (auto& p : p_) polyutil::trim(p);
    while (!p_.empty() && p_.back().empty()) p_.pop_back();
    if (p_.empty() || scale_ == 0) {
        p_.clear();
        scale_ = 0;
        return;
    }
    mpz_class g = 0;
    for (const auto& p : p_) g = int_gcd(g, polyutil::content(p));
    const ZPoly& lead = p_.back();
    int s = lead.front() != 0 ? sgn(lead.front()) : sgn(lead.back());
    if (s < 0) g = -g;
    if (g != 1) {
        for (auto& p : p_)
            for (auto& c : p) c /= g;
        scale_ *= mpq_class(g);
    }
}

int DeltaOperator::tdegree() const {
    int d = -1;
    for (const auto& p : p_) d = std::max(d, polyutil::deg(p));
    return d;
}

std::optional<mpq_class> DeltaOperator::proportional_to(const DeltaOperator& g) const {
    if (is_zero()) return mpq_class(0);
    if (g.is_zero()) return std::nullopt;
    if (p_ != g.p_) return std::nullopt; // canonical parts must match exactly
    return scale_ / g.scale_;
}

std::string DeltaOperator::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = p_.size(); k-- > 0;) {
        if (p_[k].empty()) continue;
        std::string poly;
        for (std::size_t j = p_[k].size(); j-- > 0;) {
            if (p_[k][j] == 0) continue;
            std::string term = p_[k][j].get_str();
            if (j > 0) {
                if (term == "1") term = "";
                else if (term == "-1") term = "-";
                term += "t";
                if (j > 1) term += "^" + std::to_string(j);
            }
            if (!poly.empty() && term[0] != '-') poly = poly + "+" + term;
            else poly += term;
        }
        std::string piece = "(" + poly + ")";
        if (k > 0) {
            piece += "*D";
            if (k > 1) piece += "^" + std::to_string(k);
        }
        if (!out.empty()) out += " + ";
        out += piece;
    }
    if (scale_ != 1) out = rat_to_string(scale_) + " * [" + out + "]";
    return out;
}

TruncSeries apply(const DeltaOperator& d, const TruncSeries& f) {
    TruncSeries out(f.size(), mpq_class(0));
    if (d.is_zero()) return out;
    for (int k = 0; k <= d.order(); ++k) {
        const ZPoly& p = d.coeff(k);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] == 0) continue;
            for (std::size_t m = j; m < f.size(); ++m) {
                const std::size_t src = m - j;
                if (f[src] == 0) continue;
                mpz_class w;
                mpz_class base(static_cast<long>(src));
                mpz_pow_ui(w.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
                out[m] += f[src] * mpq_class(p[j] * w);
            }
        }
    }
    for (auto& v : out) v *= d.scale();
    return out;
}

PolynomialRecurrence operator_to_recurrence(const DeltaOperator& d,
                                            const std::map<long, mpq_class>& rhs) {
    PolynomialRecurrence rec;
    rec.rhs = rhs;
    if (d.is_zero()) {
        rec.span = 0;
        rec.q = {QPoly{}};
        return rec;
    }
    const int s = std::max(d.tdegree(), 0);
    rec.span = s;
    rec.q.assign(static_cast<std::size_t>(s) + 1, QPoly{});
    // q_j(m) = scale * sum_k c_{k,j} (m - j)^k
    for (int j = 0; j <= s; ++j) {
        QPoly qj; // in m, degree <= order
        for (int k = 0; k <= d.order(); ++k) {
            const ZPoly& p = d.coeff(k);
            if (j >= static_cast<int>(p.size()) || p[static_cast<std::size_t>(j)] == 0) continue;
            mpq_class c = mpq_class(p[static_cast<std::size_t>(j)]) * d.scale();
            // expand c * (m - j)^k by binomials
            QPoly pw(static_cast<std::size_t>(k) + 1, mpq_class(0));
            mpz_class bin;
            for (int i = 0; i <= k; ++i) {
                mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k),
                             static_cast<unsigned long>(i));
                mpq_class term = c * bin * rat_pow(mpq_class(-j), k - i);
                pw[static_cast<std::size_t>(i)] = term;
            }
            if (qj.size() < pw.size()) qj.resize(pw.size(), mpq_class(0));
            for (std::size_t i = 0; i < pw.size(); ++i) qj[i] += pw[i];
        }
        polyutil::trim(qj);
        rec.q[static_cast<std::size_t>(j)] = std::move(qj);
    }
    return rec;
}

std::optional<DeltaOperator> fit_operator(const RationalSequence& a, int max_order,
                                          int max_degree, const FitOptions& opts) {
    const long L = static_cast<long>(a.values.size());
    const long need = static_cast<long>(max_order + 1) * (max_degree + 1) + 2L * opts.safety;
    if (L < need)
        throw std::invalid_argument("fit_operator: need at least " + std::to_string(need) +
                                    " terms, have " + std::to_string(L));
    auto term = [&](long m) -> const mpq_class& { return a.values[static_cast<std::size_t>(m)]; };

    for (int r = 0; r <= max_order; ++r) {
        for (int d = 0; d <= max_degree; ++d) {
            const int nun = (r + 1) * (d + 1);
            const long neq = L - opts.safety;
            if (neq < nun + opts.safety) continue;
            // unknown (j, k) at column j*(r+1)+k ; row m: sum c_{k,j} (m-j)^k a_{m-j}
            QMatrix mat(static_cast<std::size_t>(neq),
                        std::vector<mpq_class>(static_cast<std::size_t>(nun), mpq_class(0)));
            for (long m = 0; m < neq; ++m) {
                for (int j = 0; j <= d; ++j) {
                    if (m - j < 0) continue;
                    const mpq_class& am = term(m - j);
                    if (am == 0) continue;
                    mpq_class pw = 1;
                    for (int k = 0; k <= r; ++k) {
                        mat[static_cast<std::size_t>(m)][static_cast<std::size_t>(j * (r + 1) + k)] =
                            pw * am;
                        pw *= (m - j);
                    }
                }
            }
            auto null = nullspace_vector(std::move(mat), nun);
            if (!null) continue;
            std::vector<QPoly> coeffs(static_cast<std::size_t>(r) + 1,
                                      QPoly(static_cast<std::size_t>(d) + 1, mpq_class(0)));
            for (int j = 0; j <= d; ++j)
                for (int k = 0; k <= r; ++k)
                    coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                        (*null)[static_cast<std::size_t>(j * (r + 1) + k)];
            DeltaOperator cand(coeffs, 1);
            if (cand.is_zero()) continue;
            // verify on the full available range, particularly the held-out tail
            PolynomialRecurrence rec = operator_to_recurrence(cand);
            bool ok = true;
            for (long m = 0; m < L && ok; ++m) {
                mpq_class s = 0;
                for (int j = 0; j <= rec.span; ++j) {
                    if (m - j < 0) continue;
                    s += polyutil::eval(rec.q[static_cast<std::size_t>(j)], mpq_class(m)) *
                         term(m - j);
                }
                if (s != 0) ok = false;
            }
            if (!ok) continue;
            return DeltaOperator::from_integer(cand.coeffs(), 1);
        }
    }
    return std::nullopt;
}

StructuralReport structural_checks(const DeltaOperator& d, int weight) {
    StructuralReport rep;
    if (d.is_zero()) return rep;
    const int r = d.order();
    const ZPoly& lead = d.coeff(r);
    const mpz_class lead0 = lead.empty() ? mpz_class(0) : lead.front();
    rep.delta_phi = polyutil::deg(lead);

    if (lead0 != 0) {
        bool divides = true;
        for (int k = 0; k <= r && divides; ++k)
            for (const auto& c : d.coeff(k))
                if (!mpz_divisible_p(c.get_mpz_t(), lead0.get_mpz_t())) { divides = false; break; }
        rep.integral = divides;
    }

    bool lower_vanish = true;
    for (int k = 0; k < r; ++k) {
        const ZPoly& p = d.coeff(k);
        if (!p.empty() && p.front() != 0) { lower_vanish = false; break; }
    }
    rep.mum = (r == weight) && (lead0 == 1 || lead0 == -1) && lower_vanish;

    bool linear_g = lower_vanish;
    for (int k = 0; k < r && linear_g; ++k)
        if (polyutil::deg(d.coeff(k)) > 2) linear_g = false;
    rep.conifold_shape = (rep.delta_phi == 2) && linear_g;

    rep.hypothesis_ok = rep.integral && rep.mum && rep.conifold_shape && rep.delta_phi == 2;
    return rep;
}

DeltaOperator substitute_reciprocal(const DeltaOperator& d, const mpz_class& c, int sign) {
    if (c == 0) throw std::invalid_argument("substitute_reciprocal: c must be nonzero");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (d.is_zero()) return d;
    const int E = d.tdegree();
    std::vector<ZPoly> out(static_cast<std::size_t>(d.order()) + 1,
                           ZPoly(static_cast<std::size_t>(E) + 1, mpz_class(0)));
    for (int k = 0; k <= d.order(); ++k) {
        const ZPoly& p = d.coeff(k);
        const mpz_class ks = (k % 2 == 0) ? 1 : -1; // (-delta)^k
        for (int j = 0; j < static_cast<int>(p.size()); ++j) {
            const mpz_class& cj = p[static_cast<std::size_t>(j)];
            if (cj == 0) continue;
            mpz_class w = cj * ks * int_pow(c, static_cast<unsigned long>(E - j));
            if (sign < 0 && j % 2 == 1) w = -w;
            out[static_cast<std::size_t>(k)][static_cast<std::size_t>(E - j)] += w;
        }
    }
    mpq_class sc = d.scale() / mpq_class(int_pow(c, static_cast<unsigned long>(E)));
    return DeltaOperator::from_integer(std::move(out), sc);
}

namespace {

// A * (t .) : each t^j delta^k becomes t^{j+1} (delta + 1)^k.
DeltaOperator compose_with_t(const DeltaOperator& a) {
    if (a.is_zero()) return a;
    const int r = a.order(), E = a.tdegree();
    std::vector<ZPoly> out(static_cast<std::size_t>(r) + 1,
                           ZPoly(static_cast<std::size_t>(E) + 2, mpz_class(0)));
    mpz_class bin;
    for (int k = 0; k <= r; ++k) {
        const ZPoly& p = a.coeff(k);
        for (int j = 0; j < static_cast<int>(p.size()); ++j) {
            const mpz_class& cj = p[static_cast<std::size_t>(j)];
            if (cj == 0) continue;
            for (int i = 0; i <= k; ++i) {
                mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k),
                             static_cast<unsigned long>(i));
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)] += cj * bin;
            }
        }
    }
    return DeltaOperator::from_integer(std::move(out), a.scale());
}

int min_tdegree(const DeltaOperator& a) {
    int mn = -1;
    for (int k = 0; k <= a.order(); ++k) {
        const ZPoly& p = a.coeff(k);
        for (int j = 0; j < static_cast<int>(p.size()); ++j)
            if (p[static_cast<std::size_t>(j)] != 0) {
                if (mn < 0 || j < mn) mn = j;
                break;
            }
    }
    return mn;
}

DeltaOperator shift_by_t(const DeltaOperator& a, int e) {
    if (a.is_zero() || e == 0) return a;
    std::vector<ZPoly> out(static_cast<std::size_t>(a.order()) + 1);
    for (int k = 0; k <= a.order(); ++k) {
        const ZPoly& p = a.coeff(k);
        ZPoly q(p.size() + static_cast<std::size_t>(e), mpz_class(0));
        for (std::size_t j = 0; j < p.size(); ++j) q[j + static_cast<std::size_t>(e)] = p[j];
        out[static_cast<std::size_t>(k)] = std::move(q);
    }
    return DeltaOperator::from_integer(std::move(out), a.scale());
}

} // namespace

std::optional<std::pair<int, mpq_class>> monomial_proportional(const DeltaOperator& a,
                                                               const DeltaOperator& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    int e = min_tdegree(a) - min_tdegree(b);
    std::optional<mpq_class> q;
    if (e >= 0) q = a.proportional_to(shift_by_t(b, e));
    else q = shift_by_t(a, -e).proportional_to(b);
    if (!q) return std::nullopt;
    return std::make_pair(e, *q);
}

bool involutive_symmetry_check(const DeltaOperator& d, const mpz_class& c, int sign) {
    if (d.is_zero()) return false;
    DeltaOperator lhs = compose_with_t(substitute_reciprocal(d, c, sign));
    auto m = monomial_proportional(lhs, d);
    return m.has_value() && m->first >= 0;
}

RationalSequence solve_recurrence(const PolynomialRecurrence& rec,
                                  const std::map<long, mpq_class>& seeds, long M) {
    if (polyutil::deg(rec.q.empty() ? QPoly{} : rec.q[0]) < 0)
        throw std::invalid_argument("recurrence has zero leading coefficient polynomial");
    RationalSequence out;
    out.start = 0;
    out.values.reserve(static_cast<std::size_t>(M) + 1);
    for (long m = 0; m <= M; ++m) {
        auto it = seeds.find(m);
        if (it != seeds.end()) {
            out.values.push_back(it->second);
            continue;
        }
        mpq_class q0 = polyutil::eval(rec.q[0], mpq_class(m));
        if (q0 == 0)
            throw std::domain_error("recurrence leading coefficient vanishes at unseeded index " +
                                    std::to_string(m));
        mpq_class s = 0;
        auto rit = rec.rhs.find(m);
        if (rit != rec.rhs.end()) s = rit->second;
        for (int j = 1; j <= rec.span; ++j) {
            if (m - j < 0) continue;
            const QPoly& qj = rec.q[static_cast<std::size_t>(j)];
            if (qj.empty()) continue;
            s -= polyutil::eval(qj, mpq_class(m)) * out.values[static_cast<std::size_t>(m - j)];
        }
        out.values.push_back(s / q0);
    }
    return out;
}

} // namespace aperyforge
