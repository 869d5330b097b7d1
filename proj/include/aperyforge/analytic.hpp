/**
 * @file analytic.hpp
 * @brief High-precision real computations: smallest quadratic roots as exact
 *        surds, radius and Apery-limit estimation, the convergence gate with
 *        upward rounding, the classical-constant catalog and rational-multiple
 *        matching, and the two reduced regulator integrals.
 *
 * Estimates (radius, limit) are heuristics with error bars; certificates
 * (gate) use directed rounding. The smallest-root surd is exact.
 */
#ifndef APERYFORGE_ANALYTIC_HPP
#define APERYFORGE_ANALYTIC_HPP

#include <map>
#include <string>
#include <vector>

#include "aperyforge/laurent.hpp"
#include "aperyforge/ode.hpp"
#include "aperyforge/real.hpp"

namespace aperyforge {

/// (p + q sqrt(d)) / e with e > 0 and the square part of d extracted.
struct QuadSurd {
    mpz_class p = 0, q = 0, d = 0, e = 1;
    Real to_real(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) const;
    bool is_rational() const { return q == 0 || d == 0 || d == 1; }
    std::string to_string() const;
};

struct SmallestRoot {
    QuadSurd root;      // smaller absolute value (modulus when complex)
    QuadSurd companion; // the other root; equals `root` in the complex case
    bool real_roots = true;
    Real value;         // numeric value of `root`
};

/// Smallest-modulus root of an integer quadratic with P(0) = +-1.
SmallestRoot quadratic_smallest_root(const ZPoly& P, mpfr_prec_t precision = 256);

struct RadiusEstimate {
    Real value;
    Real error_bar; // heuristic, not a certificate
};

/// Root-test radius with Richardson extrapolation of log|a_m|/m.
RadiusEstimate radius_estimate(const RationalSequence& a, mpfr_prec_t precision = 256);

struct GateResult {
    Real r_phi;
    int n = 0;
    mpz_class C = 1;
    Real product; // r_phi * |C| * e^n, upward rounded
    bool pass = false;
};

GateResult gate_check(const Real& r_phi_upper, int n, const mpz_class& C);

struct LimitEstimate {
    Real value;
    Real error_bar;
    long used_index = 0;
};

/// v0 = lim b_m / a_m from the tail ratio, with error from the ratio decay.
LimitEstimate apery_limit(const RationalSequence& a, const RationalSequence& b,
                          mpfr_prec_t precision = 256);

/// zeta(2), zeta(3), log((b+1)/b) for b <= 16, Catalan G, L(chi_{-3}, 3),
/// each by classical series with Euler-Maclaurin tails (computed at twice the
/// requested precision, rounded back).
std::map<std::string, Real> constant_catalog(mpfr_prec_t precision = 256);

struct MatchResult {
    bool matched = false;
    std::string name;
    mpq_class multiple = 0;
    Real residual;
};

/// Best rational multiple c = p/q (|p|, q <= max_denominator) of a catalog
/// constant approximating v; a match needs |v - c k| <= 10 * err and ten
/// significant digits.
MatchResult match_constant(const Real& v, const Real& err,
                           const std::map<std::string, Real>& catalog, long max_denominator = 64);

enum class RegulatorKind { Dilog, Zeta3 };

/// Termwise-integrated 1-D regulator integrals: Dilog -> pi^2/6,
/// Zeta3 -> -2 zeta(3).
Real regulator_integral(RegulatorKind kind, mpfr_prec_t precision = 256);

/// zeta(s) for integer s >= 2 by Euler-Maclaurin summation.
Real zeta_euler_maclaurin(int s, mpfr_prec_t precision, long terms = 0);

} // namespace aperyforge

#endif
