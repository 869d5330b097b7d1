// Test-side oracles, independent of the library implementation paths they
// check: binomial sums, the Legendre three-term recurrence, and naive
// constant-term extraction are all computed from first principles here.
#ifndef APERYFORGE_TESTS_ORACLES_HPP
#define APERYFORGE_TESTS_ORACLES_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

namespace oracles {

inline mpz_class binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// sum_k C(m,k)^2 C(m+k,k)  (zeta(2) / baby Apery numbers)
inline mpz_class baby_apery(long m) {
    mpz_class s = 0;
    for (long k = 0; k <= m; ++k) s += binom(m, k) * binom(m, k) * binom(m + k, k);
    return s;
}

// sum_k C(m,k)^2 C(m+k,k)^2  (zeta(3) / Apery numbers)
inline mpz_class apery(long m) {
    mpz_class s = 0;
    for (long k = 0; k <= m; ++k) {
        mpz_class b1 = binom(m, k), b2 = binom(m + k, k);
        s += b1 * b1 * b2 * b2;
    }
    return s;
}

// Legendre values P_k(a) by the three-term recurrence
// (k+1) P_{k+1} = (2k+1) a P_k - k P_{k-1}.
inline std::vector<mpq_class> legendre_values(long a, int M) {
    std::vector<mpq_class> p;
    p.emplace_back(1);
    if (M >= 1) p.emplace_back(a);
    for (long k = 1; k + 1 <= M; ++k)
        p.push_back(((2 * k + 1) * mpq_class(a) * p[static_cast<std::size_t>(k)] -
                     k * p[static_cast<std::size_t>(k - 1)]) / (k + 1));
    return p;
}

// Catalog polynomial source strings (inputs under test, transcribed once).
inline const std::string kPhiZeta3 =
    "x1^-1*x2^-1*x3^-1*(x1-1)*(x2-1)*(x3-1)*(1-x1-x2+x1*x2-x1*x2*x3)";
inline const std::string kPhiZeta2 = "x1^-1*x2^-1*(1-x1)*(1-x2)*(1-x1-x2)";
inline const std::string kPhiN1B1 = "-x1+3-2*x1^-1";
inline const std::string kPhiII = "(1-x1-x2-x3)*(1-x1^-1)*(1-x2^-1)*(1-x3^-1)";
inline const std::string kPhiIII =
    "(x1+x2+x3)*(-1+x1^-1+x2^-1+x3^-1-x1^-1*x2^-1-x1^-1*x3^-1-x2^-1*x3^-1)";
inline const std::string kPhiIV = "(1-x1-x2-x3)*(1-x1^-1-x2^-1-x3^-1)";
inline const std::string kPhiZagierE = "(x1+x1^-1)*(x2+x2^-1)+4";

} // namespace oracles

#endif
