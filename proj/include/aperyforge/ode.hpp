/**
 * @file ode.hpp
 * @brief Exact algebra of differential operators in delta = t d/dt:
 *        series application, operator <-> recurrence conversion, operator
 *        recovery from sequences, reciprocal substitution and the
 *        structural (integrality / MUM / conifold-shape) checks.
 */
#ifndef APERYFORGE_ODE_HPP
#define APERYFORGE_ODE_HPP

#include <map>
#include <optional>
#include <vector>

#include "aperyforge/laurent.hpp"
#include "aperyforge/rational.hpp"

namespace aperyforge {

using ZPoly = std::vector<mpz_class>; // ascending coefficients, trimmed
using QPoly = std::vector<mpq_class>;
using TruncSeries = std::vector<mpq_class>; // index = power of t

namespace polyutil {
int deg(const ZPoly& p);           // -1 for zero
int deg(const QPoly& p);
void trim(ZPoly& p);
void trim(QPoly& p);
mpz_class content(const ZPoly& p); // 0 for zero polynomial
mpq_class eval(const QPoly& p, const mpq_class& x);
mpz_class eval(const ZPoly& p, const mpz_class& x);
} // namespace polyutil

/// scale * sum_k p_k(t) delta^k with p_k integer, joint content 1 and a fixed
/// sign convention (value of the leading polynomial at 0 positive when
/// nonzero, else positive leading coefficient).
class DeltaOperator {
public:
    DeltaOperator(); // zero operator
    explicit DeltaOperator(std::vector<QPoly> coeffs, const mpq_class& scale = 1);
    static DeltaOperator from_integer(std::vector<ZPoly> coeffs, const mpq_class& scale = 1);

    bool is_zero() const { return p_.empty(); }
    int order() const { return static_cast<int>(p_.size()) - 1; } // -1 when zero
    int tdegree() const;
    const ZPoly& coeff(int k) const { return p_.at(static_cast<std::size_t>(k)); }
    const std::vector<ZPoly>& coeffs() const { return p_; }
    const mpq_class& scale() const { return scale_; }

    bool operator==(const DeltaOperator&) const = default;

    /// Ratio q with *this == q * g (valuewise), if proportional.
    std::optional<mpq_class> proportional_to(const DeltaOperator& g) const;

    std::string to_string() const;

private:
    std::vector<ZPoly> p_;
    mpq_class scale_ = 0;
    void normalize();
};

/// sum_j q_j(m) u_{m-j} = rhs_m, j = 0..span; q_0 nonzero.
struct PolynomialRecurrence {
    int span = 0;
    std::vector<QPoly> q;
    std::map<long, mpq_class> rhs;
};

struct StructuralReport {
    bool integral = false;       // paper normalization (leading poly constant 1) stays integral
    bool mum = false;            // order n, |P(0)| = 1, all lower coefficients vanish at 0
    bool conifold_shape = false; // delta_phi = 2 and each f_k = t * (linear)
    int delta_phi = -1;          // degree of the leading coefficient polynomial
    bool hypothesis_ok = false;  // integral && mum && delta_phi == 2 && conifold_shape
};

TruncSeries apply(const DeltaOperator& d, const TruncSeries& f);

PolynomialRecurrence operator_to_recurrence(const DeltaOperator& d,
                                            const std::map<long, mpq_class>& rhs = {});

struct FitOptions {
    int safety = 10; // overdetermination margin and verification tail
};

/// Least (order, then degree) exact annihilator of the truncated generating
/// series, or nullopt if none within the bounds.
std::optional<DeltaOperator> fit_operator(const RationalSequence& a, int max_order,
                                          int max_degree, const FitOptions& opts = {});

StructuralReport structural_checks(const DeltaOperator& d, int weight);

/// The operator D(sign / (c t)) rewritten in (t, delta) via delta -> -delta,
/// cleared to the integer form (left multiplication by t^E and c^E).
DeltaOperator substitute_reciprocal(const DeltaOperator& d, const mpz_class& c, int sign);

/// (e, q) with a == q * t^e * b when a and b agree up to a monomial unit.
std::optional<std::pair<int, mpq_class>> monomial_proportional(const DeltaOperator& a,
                                                               const DeltaOperator& b);

/// True iff substitute_reciprocal(d, c, sign) composed with multiplication
/// by t equals (q t^e) * d for some rational q and integer e >= 0.
bool involutive_symmetry_check(const DeltaOperator& d, const mpz_class& c, int sign);

/// Exact solution of the recurrence; explicit seeds take precedence and must
/// cover every index where q_0 vanishes.
RationalSequence solve_recurrence(const PolynomialRecurrence& rec,
                                  const std::map<long, mpq_class>& seeds, long M);

} // namespace aperyforge

#endif
