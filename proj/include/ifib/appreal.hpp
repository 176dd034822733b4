#pragma once

#include "poly.hpp"
#include "rat.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace ifib {

// Midpoint-radius real: the true value lies in [mid - rad, mid + rad].
// mid is rounded to nearest at `prec` bits; rad is a short float always
// rounded upward, and every rounding of mid is charged to rad.
class AppReal {
public:
    static constexpr mpfr_prec_t rad_prec = 64;

    explicit AppReal(mpfr_prec_t prec = 128)
    {
        mpfr_init2(mid_, prec);
        mpfr_init2(rad_, rad_prec);
        mpfr_set_zero(mid_, 1);
        mpfr_set_zero(rad_, 1);
    }
    AppReal(const Rat& q, mpfr_prec_t prec) : AppReal(prec)
    {
        int t = mpfr_set_q(mid_, q.get_mpq_t(), MPFR_RNDN);
        charge(t);
    }
    AppReal(long v, mpfr_prec_t prec) : AppReal(Rat(v), prec) {}
    AppReal(const AppReal& o)
    {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_init2(rad_, rad_prec);
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    AppReal(AppReal&& o) noexcept : AppReal(o) {}
    AppReal& operator=(const AppReal& o)
    {
        if (this != &o) {
            mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
            mpfr_set(mid_, o.mid_, MPFR_RNDN);
            mpfr_set(rad_, o.rad_, MPFR_RNDU);
        }
        return *this;
    }
    AppReal& operator=(AppReal&& o) noexcept
    {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }
    ~AppReal()
    {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }
    bool exact() const { return mpfr_zero_p(rad_); }

    static AppReal pi(mpfr_prec_t prec)
    {
        AppReal r(prec);
        r.charge(mpfr_const_pi(r.mid_, MPFR_RNDN));
        return r;
    }

    friend AppReal operator+(const AppReal& a, const AppReal& b)
    {
        AppReal r(std::max(a.prec(), b.prec()));
        int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        r.charge(t);
        return r;
    }
    friend AppReal operator-(const AppReal& a, const AppReal& b)
    {
        AppReal r(std::max(a.prec(), b.prec()));
        int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        r.charge(t);
        return r;
    }
    friend AppReal operator-(const AppReal& a)
    {
        AppReal r(a);
        mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
        return r;
    }
    friend AppReal operator*(const AppReal& a, const AppReal& b)
    {
        AppReal r(std::max(a.prec(), b.prec()));
        int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        // |a| rb + |b| ra + ra rb
        mpfr_t s, u;
        mpfr_init2(s, rad_prec);
        mpfr_init2(u, rad_prec);
        mpfr_abs_up(s, a.mid_);
        mpfr_mul(s, s, b.rad_, MPFR_RNDU);
        mpfr_abs_up(u, b.mid_);
        mpfr_mul(u, u, a.rad_, MPFR_RNDU);
        mpfr_add(s, s, u, MPFR_RNDU);
        mpfr_mul(u, a.rad_, b.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, s, u, MPFR_RNDU);
        mpfr_clear(s);
        mpfr_clear(u);
        r.charge(t);
        return r;
    }
    friend AppReal operator/(const AppReal& a, const AppReal& b)
    {
        AppReal r(std::max(a.prec(), b.prec()));
        mpfr_t babs, den, num, u;
        mpfr_init2(babs, rad_prec);
        mpfr_init2(den, rad_prec);
        mpfr_init2(num, rad_prec);
        mpfr_init2(u, rad_prec);
        mpfr_abs(babs, b.mid_, MPFR_RNDD);
        mpfr_sub(den, babs, b.rad_, MPFR_RNDD);
        if (mpfr_sgn(den) <= 0) {
            mpfr_clears(babs, den, num, u, static_cast<mpfr_ptr>(nullptr));
            throw std::domain_error("AppReal division by a ball containing zero");
        }
        int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        // (|a| rb + |b| ra) / (|b| (|b| - rb))
        mpfr_abs_up(num, a.mid_);
        mpfr_mul(num, num, b.rad_, MPFR_RNDU);
        mpfr_abs_up(u, b.mid_);
        mpfr_mul(u, u, a.rad_, MPFR_RNDU);
        mpfr_add(num, num, u, MPFR_RNDU);
        mpfr_mul(den, den, babs, MPFR_RNDD);
        mpfr_div(r.rad_, num, den, MPFR_RNDU);
        mpfr_clears(babs, den, num, u, static_cast<mpfr_ptr>(nullptr));
        r.charge(t);
        return r;
    }
    AppReal& operator+=(const AppReal& o) { return *this = *this + o; }
    AppReal& operator-=(const AppReal& o) { return *this = *this - o; }
    AppReal& operator*=(const AppReal& o) { return *this = *this * o; }
    AppReal& operator/=(const AppReal& o) { return *this = *this / o; }

    friend AppReal abs(const AppReal& a)
    {
        AppReal r(a);
        mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
        return r;
    }

    friend AppReal cos(const AppReal& a) { return lipschitz1(a, mpfr_cos); }
    friend AppReal sin(const AppReal& a) { return lipschitz1(a, mpfr_sin); }

    friend AppReal sqrt(const AppReal& a)
    {
        AppReal r(a.prec());
        mpfr_t lo;
        mpfr_init2(lo, a.prec() + 8);
        mpfr_sub(lo, a.mid_, a.rad_, MPFR_RNDD);
        if (mpfr_sgn(lo) > 0) {
            int t = mpfr_sqrt(r.mid_, a.mid_, MPFR_RNDN);
            mpfr_t s;
            mpfr_init2(s, rad_prec);
            mpfr_sqrt(s, lo, MPFR_RNDD);
            mpfr_div(r.rad_, a.rad_, s, MPFR_RNDU);
            mpfr_clear(s);
            r.charge(t);
        } else {
            // [0, sqrt(hi)] enclosure
            mpfr_t hi;
            mpfr_init2(hi, a.prec() + 8);
            mpfr_add(hi, a.mid_, a.rad_, MPFR_RNDU);
            if (mpfr_sgn(hi) < 0) {
                mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
                throw std::domain_error("AppReal sqrt of a negative ball");
            }
            mpfr_sqrt(hi, hi, MPFR_RNDU);
            mpfr_div_2ui(r.mid_, hi, 1, MPFR_RNDN);
            mpfr_div_2ui(r.rad_, hi, 1, MPFR_RNDU);
            r.charge(1);
            mpfr_clear(hi);
        }
        mpfr_clear(lo);
        return r;
    }

    friend AppReal acos(const AppReal& a)
    {
        mpfr_t m, lo, hi;
        mpfr_init2(m, rad_prec);
        mpfr_init2(lo, a.prec() + 8);
        mpfr_init2(hi, a.prec() + 8);
        mpfr_sub(lo, a.mid_, a.rad_, MPFR_RNDD);
        mpfr_add(hi, a.mid_, a.rad_, MPFR_RNDU);
        mpfr_abs(lo, lo, MPFR_RNDU);
        mpfr_abs(hi, hi, MPFR_RNDU);
        mpfr_max(m, lo, hi, MPFR_RNDU);
        // derivative bound 1/sqrt(1 - M^2)
        mpfr_sqr(m, m, MPFR_RNDU);
        mpfr_ui_sub(m, 1, m, MPFR_RNDD);
        if (mpfr_sgn(m) <= 0) {
            mpfr_clears(m, lo, hi, static_cast<mpfr_ptr>(nullptr));
            throw std::domain_error("AppReal acos near +-1");
        }
        mpfr_sqrt(m, m, MPFR_RNDD);
        AppReal r(a.prec());
        int t = mpfr_acos(r.mid_, a.mid_, MPFR_RNDN);
        mpfr_div(r.rad_, a.rad_, m, MPFR_RNDU);
        r.charge(t);
        mpfr_clears(m, lo, hi, static_cast<mpfr_ptr>(nullptr));
        return r;
    }

    friend AppReal pow(const AppReal& a, long e)
    {
        if (e < 0)
            return AppReal(1L, a.prec()) / pow(a, -e);
        AppReal r(1L, a.prec()), b(a);
        while (e) {
            if (e & 1)
                r = r * b;
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    // Certified predicates: true only if they hold for every point of the ball.
    bool positive() const { return cmp_lo(0) > 0; }
    bool negative() const { return cmp_hi(0) < 0; }
    bool contains_zero() const { return !positive() && !negative(); }
    bool contains(const Rat& q) const { return (*this - AppReal(q, prec() + 64)).contains_zero(); }

    // |x| <= bound for every point of the ball
    bool abs_below(const Rat& bound) const
    {
        mpfr_t h;
        mpfr_init2(h, prec() + 8);
        mpfr_abs(h, mid_, MPFR_RNDU);
        mpfr_add(h, h, rad_, MPFR_RNDU);
        int c = mpfr_cmp_q(h, bound.get_mpq_t());
        mpfr_clear(h);
        return c < 0;
    }

    // upper bound of |x| as a double (rounded up)
    double mag() const
    {
        mpfr_t h;
        mpfr_init2(h, prec() + 8);
        mpfr_abs(h, mid_, MPFR_RNDU);
        mpfr_add(h, h, rad_, MPFR_RNDU);
        double d = mpfr_get_d(h, MPFR_RNDU);
        mpfr_clear(h);
        return d;
    }
    // rad <= 2^e
    bool rad_below_pow2(long e) const { return mpfr_cmp_ui_2exp(rad_, 1, e) <= 0; }
    double to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // floor of every point of the ball, if they all agree
    bool floor_if_certain(Integer& out) const
    {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec() + 8);
        mpfr_init2(hi, prec() + 8);
        mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
        mpfr_add(hi, mid_, rad_, MPFR_RNDU);
        mpfr_floor(lo, lo);
        mpfr_floor(hi, hi);
        bool ok = mpfr_equal_p(lo, hi);
        if (ok)
            mpfr_get_z(out.get_mpz_t(), lo, MPFR_RNDN);
        mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
        return ok;
    }

    // rational endpoints enclosing the ball
    std::pair<Rat, Rat> bounds() const
    {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec() + rad_prec + 8);
        mpfr_init2(hi, prec() + rad_prec + 8);
        mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
        mpfr_add(hi, mid_, rad_, MPFR_RNDU);
        Rat l, h;
        mpfr_get_q(l.get_mpq_t(), lo);
        mpfr_get_q(h.get_mpq_t(), hi);
        mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
        return {l, h};
    }

    std::string mid_str(int digits = 20) const
    {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, mid_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    std::string rad_str() const
    {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.3RUe", rad_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    // ceil(log2 rad); a very negative sentinel for exact values
    long err_exponent() const
    {
        if (mpfr_zero_p(rad_))
            return -1000000;
        return mpfr_get_exp(rad_);
    }

private:
    static void mpfr_abs_up(mpfr_ptr dst, mpfr_srcptr src) { mpfr_abs(dst, src, MPFR_RNDU); }

    // charges one ulp of mid to rad when the last rounding was inexact
    void charge(int ternary)
    {
        if (ternary == 0 || mpfr_zero_p(mid_))
            return;
        mpfr_t u;
        mpfr_init2(u, rad_prec);
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(mid_) - prec(), MPFR_RNDU);
        mpfr_add(rad_, rad_, u, MPFR_RNDU);
        mpfr_clear(u);
    }

    int cmp_lo(long v) const
    {
        mpfr_t lo;
        mpfr_init2(lo, prec() + 8);
        mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
        int c = mpfr_cmp_si(lo, v);
        mpfr_clear(lo);
        return c;
    }
    int cmp_hi(long v) const
    {
        mpfr_t hi;
        mpfr_init2(hi, prec() + 8);
        mpfr_add(hi, mid_, rad_, MPFR_RNDU);
        int c = mpfr_cmp_si(hi, v);
        mpfr_clear(hi);
        return c;
    }

    template <class F>
    static AppReal lipschitz1(const AppReal& a, F f)
    {
        AppReal r(a.prec());
        int t = f(r.mid_, a.mid_, MPFR_RNDN);
        mpfr_set(r.rad_, a.rad_, MPFR_RNDU);
        r.charge(t);
        return r;
    }

    mpfr_t mid_;
    mpfr_t rad_;
};

// 2cos(pi q); rational values are returned exactly.
inline AppReal two_cos_pi(const Rat& q, mpfr_prec_t prec)
{
    Rat t = q - 2 * Rat(floor_rat(q / 2));
    const Integer& d = t.get_den();
    if (d == 1)
        return AppReal(t == 0 ? 2L : -2L, prec);
    if (d == 2)
        return AppReal(0L, prec);
    if (d == 3) {
        bool pos = (t == Rat(1, 3) || t == Rat(5, 3));
        return AppReal(pos ? 1L : -1L, prec);
    }
    for (mpfr_prec_t w = prec + 40;; w += 64) {
        AppReal v = AppReal(2L, w) * cos(AppReal::pi(w) * AppReal(t, w));
        if (v.rad_below_pow2(-static_cast<long>(prec)))
            return v;
    }
}

enum class TrigKind { cos2pi, cosodd, sin };

// 2cos(2 pi k/n), 2cos((2k-1) pi/n) or 2sin(pi k/n) with err <= 2^-prec
inline AppReal cos_shift_approx(long n, long k, TrigKind kind, mpfr_prec_t prec)
{
    if (n < 1)
        throw std::domain_error("cos_shift_approx: n < 1");
    switch (kind) {
    case TrigKind::cos2pi:
        return two_cos_pi(make_rat(2 * k, n), prec);
    case TrigKind::cosodd:
        return two_cos_pi(make_rat(2 * k - 1, n), prec);
    case TrigKind::sin:
        return two_cos_pi(Rat(1, 2) - make_rat(k, n), prec);
    }
    throw std::logic_error("unreachable");
}

// Horner evaluation in ball arithmetic
inline AppReal eval(const UniPoly& p, const AppReal& x)
{
    AppReal acc(0L, x.prec());
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + AppReal(p.coeffs()[i], x.prec());
    return acc;
}

inline Rat eval(const UniPoly& p, const Rat& x) { return p.eval(x); }

} // namespace ifib
