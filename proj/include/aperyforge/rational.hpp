/**
 * @file rational.hpp
 * @brief Exact rational/integer helpers shared across the library.
 */
#ifndef APERYFORGE_RATIONAL_HPP
#define APERYFORGE_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace aperyforge {

/// Parse "p", "-p" or "p/q" (q > 0 after canonicalization).
inline mpq_class rat_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

/// Canonical "p" or "p/q" string.
inline std::string rat_to_string(const mpq_class& q) {
    return q.get_str();
}

inline mpz_class int_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline mpq_class rat_pow(const mpq_class& b, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (b == 0) throw std::domain_error("0 to negative power");
        mpq_class inv = 1 / b;
        return rat_pow(inv, -e);
    }
    mpq_class r = int_pow(b.get_num(), static_cast<unsigned long>(e));
    r /= int_pow(b.get_den(), static_cast<unsigned long>(e));
    return r;
}

inline mpz_class int_lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class int_gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace aperyforge

#endif
