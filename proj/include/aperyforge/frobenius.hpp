/**
 * @file frobenius.hpp
 * @brief Frobenius basis at a MUM point via jets in the exponent deformation
 *        s, its L_m^j denominator certificate, and the formal GKZ coefficient
 *        engine with the lcm divisibility certificates.
 */
#ifndef APERYFORGE_FROBENIUS_HPP
#define APERYFORGE_FROBENIUS_HPP

#include <map>
#include <variant>
#include <vector>

#include "aperyforge/arith.hpp"
#include "aperyforge/ode.hpp"
#include "aperyforge/polytope.hpp"

namespace aperyforge {

/// f[j][m] = m-th series coefficient of the j-th Frobenius companion; the
/// multivalued periods are Pi_l = sum_{j<=l} log^j(xi)/j! f^{(l-j)}(xi).
struct FrobeniusBasis {
    int order = 0;    // n
    long truncation = 0; // M
    std::vector<std::vector<mpq_class>> f;
};

/// Deformed-recurrence construction: c_m(s) carried as a jet of order n-1,
/// inverted against the indicial factor (m+s)^n. Requires MUM at 0.
FrobeniusBasis frobenius_solutions(const DeltaOperator& d, long M);

/// Smallest eps <= bound with eps L_m^j f^(j)_m integral for all m <= M,
/// j <= n-1 (eps is the lcm of residual denominators after clearing L_m^j).
std::variant<mpz_class, CertificateFailure> frobenius_denominator_certificate(
    const FrobeniusBasis& basis, long M, const mpz_class& bound = 1000000);

/// Multivariate jet: truncated commutative algebra Q[J_1..J_M] / (deg > cap).
class JetSeries {
public:
    JetSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {}
    static JetSeries constant(int nvars, int cap, const mpq_class& c);
    static JetSeries linear(int nvars, int cap, const std::vector<mpz_class>& coeffs);

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    mpq_class coeff(const std::vector<int>& expo) const;
    bool is_unit() const { return coeff(std::vector<int>(static_cast<std::size_t>(nvars_), 0)) != 0; }

    JetSeries operator+(const JetSeries& o) const;
    JetSeries operator-(const JetSeries& o) const;
    JetSeries operator*(const JetSeries& o) const;
    JetSeries operator*(const mpq_class& c) const;
    JetSeries inverse() const; // requires a unit
    bool operator==(const JetSeries& o) const = default;

private:
    int nvars_, cap_;
    std::map<std::vector<int>, mpq_class> terms_;
    void add(const std::vector<int>& e, const mpq_class& c);
};

/// An integral-relation vector (l_0, ..., l_N) with l_0 = -sum_{i>=1} l_i.
struct LVector {
    std::vector<mpz_class> ell;
    mpz_class l0() const { return ell.at(0); }
};

enum class Effectivity { Effective, QuasiEffective, Neither };

Effectivity classify_lvector(const LVector& l);

struct GkzValue {
    mpq_class value = 0;            // kappa-th derivative of B_l(D) at J = 0
    Effectivity effectivity = Effectivity::Neither;
    bool pole = false;              // l_0 > 0: the Gamma-ratio normalization has a pole
};

/// Formal expansion of the Pochhammer-ratio coefficient with D_i the linear
/// jets given by the Mori generators; returns the kappa-th derivative at 0.
GkzValue gkz_coefficient(const LVector& l, const MoriData& mori, const std::vector<int>& kappa);

/// True iff the reduced denominator divides L_{|l_0|}^{|kappa|} (effective)
/// resp. L_{|l|+}^{|kappa|} (quasi-effective).
bool gkz_divisibility_check(const LVector& l, const MoriData& mori, const std::vector<int>& kappa);

} // namespace aperyforge

#endif
