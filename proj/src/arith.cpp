#include "aperyforge/arith.hpp"

#include <algorithm>

namespace aperyforge {

ArithTables::ArithTables(long sieve_limit) : limit_(std::max(sieve_limit, 4L)) {
    sieve_.assign(static_cast<std::size_t>(limit_) + 1, 1);
    sieve_[0] = sieve_[1] = 0;
    for (long p = 2; p * p <= limit_; ++p)
        if (sieve_[static_cast<std::size_t>(p)])
            for (long q = p * p; q <= limit_; q += p) sieve_[static_cast<std::size_t>(q)] = 0;
    pi_.assign(static_cast<std::size_t>(limit_) + 1, 0);
    for (long m = 2; m <= limit_; ++m) {
        if (sieve_[static_cast<std::size_t>(m)]) primes_.push_back(m);
        pi_[static_cast<std::size_t>(m)] = static_cast<long>(primes_.size());
    }
    lcm_.resize(2, mpz_class(1)); // L_0 := 1 (unused), L_1 = 1
}

bool ArithTables::is_prime(long p) const {
    if (p < 0 || p > limit_) throw std::out_of_range("beyond sieve limit");
    return sieve_[static_cast<std::size_t>(p)] != 0;
}

long ArithTables::prime_count(long m) const {
    if (m < 0) return 0;
    if (m > limit_) throw std::out_of_range("beyond sieve limit");
    return pi_[static_cast<std::size_t>(m)];
}

Real ArithTables::chebyshev_chi(long m, mpfr_rnd_t rnd, mpfr_prec_t prec) const {
    if (m > limit_) throw std::out_of_range("beyond sieve limit");
    Real acc(prec);
    mpfr_set_zero(acc.raw(), 1);
    Real lg(prec);
    for (long p : primes_) {
        if (p > m) break;
        mpfr_set_si(lg.raw(), p, rnd);
        mpfr_log(lg.raw(), lg.raw(), rnd);
        mpfr_add(acc.raw(), acc.raw(), lg.raw(), rnd);
    }
    return acc;
}

void ArithTables::ensure(long m) {
    if (m > limit_) throw std::out_of_range("beyond sieve limit");
    while (static_cast<long>(lcm_.size()) <= m) {
        const long k = static_cast<long>(lcm_.size());
        mpz_class next = lcm_.back();
        // L_k gains a factor p exactly when k = p^e
        long q = k, p0 = 0;
        for (long p : primes_) {
            if (p * p > q) break;
            if (q % p == 0) {
                p0 = p;
                while (q % p == 0) q /= p;
                break;
            }
        }
        if (q == k) next *= k;          // k prime
        else if (q == 1) next *= p0;    // k = p0^e
        lcm_.push_back(next);
    }
}

const mpz_class& ArithTables::lcm_upto(long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    ensure(m);
    return lcm_[static_cast<std::size_t>(m)];
}

mpz_class lcm_upto(long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    mpz_class l = 1;
    for (long k = 2; k <= m; ++k) l = int_lcm(l, k);
    return l;
}

mpz_class lambda_gcd(long m, long r) {
    if (m < 1 || r < 1) throw std::invalid_argument("m and r must be >= 1");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    return int_gcd(fact, lcm_upto(r * m));
}

namespace {

// The m-th root chain e^{chi/m} <= Lambda^{1/m} <= (rm)^{pi/m} is certified on
// its exact integer form primorial(m) <= Lambda_m <= (rm)^pi(m); equality
// cases (m = 2) occur, which no outward float rounding could certify. The
// reported reals are still computed with directed rounding (lower rounded
// down, mid inside, upper rounded up, so the printed triple never overstates
// the inequality).
SandwichResult assemble(long m, long r, const Real& chi_dn, long pi, const mpz_class& lambda,
                        const mpz_class& primorial, mpfr_prec_t prec) {
    SandwichResult res{Real(prec), Real(prec), Real(prec), false};

    Real lower(prec);
    mpfr_div_si(lower.raw(), chi_dn.raw(), m, MPFR_RNDD);
    mpfr_exp(lower.raw(), lower.raw(), MPFR_RNDD);

    Real mid(prec);
    mpfr_set_z(mid.raw(), lambda.get_mpz_t(), MPFR_RNDN);
    mpfr_log(mid.raw(), mid.raw(), MPFR_RNDN);
    mpfr_div_si(mid.raw(), mid.raw(), m, MPFR_RNDN);
    mpfr_exp(mid.raw(), mid.raw(), MPFR_RNDN);

    Real upper(prec);
    mpfr_set_si(upper.raw(), r * m, MPFR_RNDU);
    mpfr_log(upper.raw(), upper.raw(), MPFR_RNDU);
    mpfr_mul_si(upper.raw(), upper.raw(), pi, MPFR_RNDU);
    mpfr_div_si(upper.raw(), upper.raw(), m, MPFR_RNDU);
    mpfr_exp(upper.raw(), upper.raw(), MPFR_RNDU);

    mpz_class rm_pow;
    mpz_ui_pow_ui(rm_pow.get_mpz_t(), static_cast<unsigned long>(r * m),
                  static_cast<unsigned long>(pi));
    res.ok = primorial <= lambda && lambda <= rm_pow;
    res.lower = lower;
    res.mid = mid;
    res.upper = upper;
    return res;
}

} // namespace

SandwichResult sandwich_check(long m, long r, mpfr_prec_t prec) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    ArithTables tables(r * m + 1);
    Real chi_dn = tables.chebyshev_chi(m, MPFR_RNDD, prec);
    mpz_class primorial = 1;
    for (long p : tables.primes()) {
        if (p > m) break;
        primorial *= p;
    }
    return assemble(m, r, chi_dn, tables.prime_count(m), lambda_gcd(m, r), primorial, prec);
}

SandwichScan::SandwichScan(long r, long max_m, mpfr_prec_t precision)
    : r_(r), max_m_(max_m), prec_(precision), tables_(r * max_m + 1), chi_lo_(precision) {
    const std::size_t np = tables_.primes().size();
    vfact_.assign(np, 0);
    cap_.assign(np, 0);
    expo_.assign(np, 0);
    mpfr_set_zero(chi_lo_.raw(), 1);
    // r*1 may already exceed small prime powers
    for (std::size_t i = 0; i < np; ++i) {
        long p = tables_.primes()[i];
        long c = 0, pw = p;
        while (pw <= r_) { ++c; if (pw > r_ / p) break; pw *= p; }
        cap_[i] = c;
    }
}

SandwichResult SandwichScan::next() {
    if (m_ >= max_m_) throw std::out_of_range("scan exhausted");
    ++m_;
    const long m = m_;
    const auto& primes = tables_.primes();

    // v_p(m!) gains v_p(m)
    long q = m;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        long p = primes[i];
        if (p * p > q) break;
        while (q % p == 0) {
            q /= p;
            ++vfact_[i];
        }
    }
    if (q > 1) { // remaining prime factor
        std::size_t i = static_cast<std::size_t>(tables_.prime_count(q)) - 1;
        ++vfact_[i];
    }

    // caps move when r*m crosses p^k for the two new values r(m-1)+1 .. r*m
    for (long val = r_ * (m - 1) + 1; val <= r_ * m; ++val) {
        long v = val, p0 = 0, k = 0;
        for (std::size_t i = 0; i < primes.size() && primes[i] * primes[i] <= v; ++i) {
            long p = primes[i];
            if (v % p == 0) {
                p0 = p;
                while (v % p == 0) { v /= p; ++k; }
                break;
            }
        }
        if (v > 1) {
            if (p0 != 0) continue; // two distinct primes: not a prime power
            p0 = v;
            k = 1;
        }
        std::size_t i = static_cast<std::size_t>(tables_.prime_count(p0)) - 1;
        cap_[i] = std::max(cap_[i], k);
    }

    // chi, pi and the primorial advance when m is prime; lambda takes all
    // exponent changes
    if (tables_.is_prime(m)) {
        Real lg(prec_);
        mpfr_set_si(lg.raw(), m, MPFR_RNDD);
        mpfr_log(lg.raw(), lg.raw(), MPFR_RNDD);
        mpfr_add(chi_lo_.raw(), chi_lo_.raw(), lg.raw(), MPFR_RNDD);
        primorial_ *= m;
        ++pi_;
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] > m) break;
        long e = std::min(vfact_[i], cap_[i]);
        while (expo_[i] < e) {
            lambda_ *= primes[i];
            ++expo_[i];
        }
    }
    return assemble(m, r_, chi_lo_, pi_, lambda_, primorial_, prec_);
}

std::variant<mpz_class, CertificateFailure> denom_split_certificate(
    const RationalSequence& b, int n, long r, long M, const mpz_class& bound) {
    if (!b.has(M) || !b.has(1))
        throw std::invalid_argument("sequence must cover indices 1..M");
    mpz_class eps = 1;
    mpz_class fact = 1, fact_n, lrm_n;
    ArithTables tables(r * M + 1);
    for (long m = 1; m <= M; ++m) {
        fact *= m;
        const mpz_class& q = b.at(m).get_den();
        if (q == 1) continue;
        mpz_pow_ui(fact_n.get_mpz_t(), fact.get_mpz_t(), static_cast<unsigned long>(n));
        mpz_pow_ui(lrm_n.get_mpz_t(), tables.lcm_upto(r * m).get_mpz_t(),
                   static_cast<unsigned long>(n));
        mpz_class r1 = q / int_gcd(q, fact_n);
        mpz_class r2 = q / int_gcd(q, lrm_n);
        eps = int_lcm(eps, int_lcm(r1, r2));
        if (eps > bound) return CertificateFailure{m, -1};
    }
    return eps;
}

std::vector<mpz_class> linear_form_terms(const RationalSequence& a, const RationalSequence& b,
                                         const mpz_class& eps_b, int n, long r, long M,
                                         const mpz_class& P, const mpz_class& Q) {
    if (!a.has(M) || !b.has(M)) throw std::invalid_argument("sequences must cover 1..M");
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(M));
    for (long m = 1; m <= M; ++m) {
        mpz_class lam_n;
        mpz_pow_ui(lam_n.get_mpz_t(), lambda_gcd(m, r).get_mpz_t(), static_cast<unsigned long>(n));
        mpq_class Bm = mpq_class(eps_b) * lam_n * b.at(m);
        if (Bm.get_den() != 1)
            throw std::domain_error("eps_B Lambda_m^n b_m is not an integer at m = " +
                                    std::to_string(m));
        mpq_class term = mpq_class(eps_b) * lam_n * a.at(m) * P - Bm * Q;
        if (term.get_den() != 1) throw std::domain_error("non-integer linear form term");
        out.push_back(mpz_class(term.get_num()));
    }
    return out;
}

} // namespace aperyforge
