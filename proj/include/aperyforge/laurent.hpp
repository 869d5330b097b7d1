/**
 * @file laurent.hpp
 * @brief Exact Laurent-polynomial algebra over Q and constant-term period
 *        sequences of integral Laurent polynomials.
 *
 * A LaurentPoly is a finite map from exponent vectors in Z^n to nonzero
 * rational coefficients, kept in lexicographic term order. The period
 * sequence a_k = [phi^k]_0 is computed by iterated exact multiplication
 * with support pruning (terms that cannot return to the zero exponent
 * within the remaining multiplications are dropped).
 */
#ifndef APERYFORGE_LAURENT_HPP
#define APERYFORGE_LAURENT_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aperyforge/rational.hpp"

namespace aperyforge {

/// Lattice point of Z^n; comparison is lexicographic and total.
using ExponentVector = std::vector<int>;

struct SyntaxError : std::runtime_error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

class LaurentPoly {
public:
    using TermMap = std::map<ExponentVector, mpq_class>;

    explicit LaurentPoly(int n = 1);
    static LaurentPoly constant(int n, const mpq_class& c);
    static LaurentPoly monomial(int n, const ExponentVector& e, const mpq_class& c = 1);

    int dim() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    mpq_class coeff(const ExponentVector& e) const;

    /// Adds c * x^e, erasing the term if the sum cancels.
    void add_term(const ExponentVector& e, const mpq_class& c);

    LaurentPoly operator+(const LaurentPoly& g) const;
    LaurentPoly operator-(const LaurentPoly& g) const;
    LaurentPoly operator*(const LaurentPoly& g) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const mpq_class& c) const;
    bool operator==(const LaurentPoly& g) const = default;

    /// True when every coefficient is an integer.
    bool is_integral() const;

    /// phi(-x_1, ..., -x_n).
    LaurentPoly negate_variables() const;

    /// Per-coordinate min/max of the support; requires a nonzero polynomial.
    void support_bounds(std::vector<int>& mn, std::vector<int>& mx) const;

    std::string to_string() const;

private:
    int n_;
    TermMap terms_;
};

/// Sequence of exact rationals indexed from `start`; values in lowest terms.
struct RationalSequence {
    long start = 0;
    std::vector<mpq_class> values;

    long end() const { return start + static_cast<long>(values.size()); } // one past last
    const mpq_class& at(long m) const { return values.at(static_cast<std::size_t>(m - start)); }
    bool has(long m) const { return m >= start && m < end(); }
};

/// Per-variable substitution x_i -> x_{target(i)}^{sign(i)}; must be bijective.
struct MonomialMap {
    std::vector<int> target; // 0-based variable images
    std::vector<int> sign;   // each +1 or -1
};

LaurentPoly parse_laurent(const std::string& text, int n);

/// a_k = [phi^k]_0 for k = 0..M. `prune` enables support pruning; the naive
/// path is kept for cross-checking.
RationalSequence constant_term_powers(const LaurentPoly& phi, int M, bool prune = true);

LaurentPoly monomial_substitute(const LaurentPoly& f, const MonomialMap& map);

mpq_class eval_rational(const LaurentPoly& f, const std::vector<mpq_class>& point);

} // namespace aperyforge

#endif
