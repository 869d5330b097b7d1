/**
 * @file arith.hpp
 * @brief Prime tables and the denominator/growth machinery: L_m = lcm(1..m),
 *        Lambda_m = gcd(m!, L_{rm}), the Chebyshev sums pi/chi, the sandwich
 *        inequality check with directed rounding, and the two-sided
 *        denominator certificate for b-sequences.
 */
#ifndef APERYFORGE_ARITH_HPP
#define APERYFORGE_ARITH_HPP

#include <optional>
#include <variant>
#include <vector>

#include "aperyforge/laurent.hpp"
#include "aperyforge/rational.hpp"
#include "aperyforge/real.hpp"

namespace aperyforge {

/// Append-only prime/lcm tables. Single writer; reads are const.
class ArithTables {
public:
    explicit ArithTables(long sieve_limit = 1 << 16);

    long limit() const { return limit_; }
    const std::vector<long>& primes() const { return primes_; }
    bool is_prime(long p) const;
    long prime_count(long m) const; // pi(m)

    /// chi(m) = sum_{p <= m} log p, rounded in the requested direction.
    Real chebyshev_chi(long m, mpfr_rnd_t rnd, mpfr_prec_t prec = 128) const;

    /// Exact L_m = lcm(1..m); lazily extended, m >= 1.
    const mpz_class& lcm_upto(long m);

private:
    void ensure(long m);
    long limit_;
    std::vector<char> sieve_;
    std::vector<long> primes_;
    std::vector<long> pi_;               // pi_[m] = #primes <= m
    mutable std::vector<mpz_class> lcm_; // lcm_[m] = L_m, grown on demand
};

mpz_class lcm_upto(long m);

/// Lambda_m = gcd(m!, L_{rm}).
mpz_class lambda_gcd(long m, long r);

struct SandwichResult {
    Real lower, mid, upper; // e^{chi(m)/m}, Lambda_m^{1/m}, (rm)^{pi(m)/m}
    bool ok = false;        // certified lower <= mid <= upper under outward rounding
};

SandwichResult sandwich_check(long m, long r, mpfr_prec_t precision = 128);

/// Incremental sweep over m = 2, 3, ...: maintains Lambda_m by prime-exponent
/// updates so whole-range scans stay cheap.
class SandwichScan {
public:
    SandwichScan(long r, long max_m, mpfr_prec_t precision = 128);
    /// Advances to the next m and returns its result; first call yields m = 2.
    SandwichResult next();
    long current_m() const { return m_; }
    const mpz_class& lambda() const { return lambda_; }

private:
    long r_, max_m_, m_ = 1;
    mpfr_prec_t prec_;
    ArithTables tables_;
    std::vector<long> vfact_;  // v_p(m!) per prime index
    std::vector<long> cap_;    // floor(log_p(r m)) per prime index
    std::vector<long> expo_;   // current min of the two
    mpz_class lambda_ = 1;
    mpz_class primorial_ = 1;
    Real chi_lo_;
    long pi_ = 0;
};

struct CertificateFailure {
    long m = -1;   // first uncovered index
    long j = -1;   // used by the Frobenius variant; -1 otherwise
};

/// Smallest eps_B <= bound with eps_B (m!)^n b_m and eps_B L_{rm}^n b_m both
/// integral for 1 <= m <= M (eps_B is the lcm of the residual denominators).
std::variant<mpz_class, CertificateFailure> denom_split_certificate(
    const RationalSequence& b, int n, long r, long M, const mpz_class& bound = 1000000);

/// eps_B Lambda_m^n a_m P - B_m Q for m = 1..M, where B_m = eps_B Lambda_m^n b_m
/// must be an integer. Throws std::domain_error on a non-integer B_m.
std::vector<mpz_class> linear_form_terms(const RationalSequence& a, const RationalSequence& b,
                                         const mpz_class& eps_b, int n, long r, long M,
                                         const mpz_class& P, const mpz_class& Q);

} // namespace aperyforge

#endif
