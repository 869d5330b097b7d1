/**
 * @file real.hpp
 * @brief Value-semantic wrapper over MPFR. Default operations round to
 *        nearest at the target precision; certificate code passes explicit
 *        directed rounding modes.
 */
#ifndef APERYFORGE_REAL_HPP
#define APERYFORGE_REAL_HPP

#include <mpfr.h>

#include <string>

#include "aperyforge/rational.hpp"

namespace aperyforge {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        return r;
    }
    static Real of(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Deterministic scientific-notation string with the given significant digits.
    std::string to_string(int digits = 40) const;

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }

#define AF_REAL_BINOP(name, fn)                                                        \
    static Real name(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {       \
        Real r(std::max(a.prec(), b.prec()));                                          \
        fn(r.v_, a.v_, b.v_, rnd);                                                     \
        return r;                                                                      \
    }
    AF_REAL_BINOP(add, mpfr_add)
    AF_REAL_BINOP(sub, mpfr_sub)
    AF_REAL_BINOP(mul, mpfr_mul)
    AF_REAL_BINOP(div, mpfr_div)
#undef AF_REAL_BINOP

#define AF_REAL_UNOP(name, fn)                                                         \
    static Real name(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {                      \
        Real r(a.prec());                                                              \
        fn(r.v_, a.v_, rnd);                                                           \
        return r;                                                                      \
    }
    AF_REAL_UNOP(log, mpfr_log)
    AF_REAL_UNOP(exp, mpfr_exp)
    AF_REAL_UNOP(sqrt, mpfr_sqrt)
    AF_REAL_UNOP(abs, mpfr_abs)
    AF_REAL_UNOP(neg, mpfr_neg)
#undef AF_REAL_UNOP

    Real operator+(const Real& o) const { return add(*this, o); }
    Real operator-(const Real& o) const { return sub(*this, o); }
    Real operator*(const Real& o) const { return mul(*this, o); }
    Real operator/(const Real& o) const { return div(*this, o); }

private:
    mpfr_t v_;
};

} // namespace aperyforge

#endif
