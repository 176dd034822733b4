#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifib {

using Integer = mpz_class;
// mpq_class keeps num/den canonical after every arithmetic operation.
using Rat = mpq_class;

inline Rat make_rat(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1)
{
    return make_rat(Integer(num), Integer(den));
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rat& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& s)
{
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: " + s);
    q.canonicalize();
    return q;
}

// C(n,k), zero outside 0 <= k <= n.
inline Integer binom(long n, long k)
{
    if (n < 0)
        throw std::domain_error("binom: negative n");
    if (k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& b, long e)
{
    if (e < 0) {
        if (is_zero(b))
            throw std::domain_error("rpow: zero to negative power");
        return 1 / rpow(b, -e);
    }
    Rat r = 1;
    Rat base = b;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1)
            r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

inline Integer igcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer floor_rat(const Rat& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline long mod_floor(long a, long n)
{
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

struct PrimePower {
    long p;
    long alpha;
};

inline std::vector<PrimePower> factorize(long n)
{
    std::vector<PrimePower> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        long a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        out.push_back({p, a});
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

inline long totient(long n)
{
    long t = n;
    for (auto [p, a] : factorize(n))
        t = t / p * (p - 1);
    return t;
}

inline std::vector<long> divisors(long n)
{
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        lo.push_back(d);
        if (d != n / d)
            hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline long lpow(long b, long e)
{
    long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace ifib
