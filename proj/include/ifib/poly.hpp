#pragma once

#include "rat.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ifib {

// Dense polynomial, coefficient index = power, never stores a trailing zero.
template <class T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Poly(const T& c0) : c_{c0} { trim(); } // NOLINT: constants promote
    Poly(long c0) : c_{T(c0)} { trim(); }  // NOLINT

    static Poly x() { return monomial(T(1), 1); }
    static Poly monomial(const T& c, std::size_t k)
    {
        std::vector<T> v(k + 1, T(0));
        v[k] = c;
        return Poly(std::move(v));
    }

    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T& lead() const
    {
        if (c_.empty())
            throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto& c : a.c_)
            c = -c;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.zero() || b.zero())
            return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, Poly a)
    {
        for (auto& c : a.c_)
            c *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return s * std::move(a); }
    friend Poly operator/(Poly a, const T& s)
    {
        for (auto& c : a.c_)
            c /= s;
        return a;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly();
        std::vector<T> r(c_.size() - 1, T(0));
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    // this(q(x))
    Poly compose(const Poly& q) const
    {
        Poly acc;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * q + Poly(c_[i]);
        return acc;
    }

    T eval(const T& x) const { return this->template eval<T>(x); }

    template <class U>
        requires(std::is_same_v<U, T> || !std::is_convertible_v<U, T>)
    U eval(const U& x) const
    {
        U acc = U(T(0));
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + U(c_[i]);
        return acc;
    }

private:
    void trim()
    {
        while (!c_.empty() && is_zero(c_.back()))
            c_.pop_back();
    }

    std::vector<T> c_;
};

template <class T>
bool is_zero(const Poly<T>& p)
{
    return p.zero();
}

using UniPoly = Poly<Rat>;
using BiPoly = Poly<UniPoly>; // outer variable x, inner variable y

inline UniPoly X() { return UniPoly::x(); }

inline UniPoly poly_from(std::initializer_list<long> low_to_high)
{
    std::vector<Rat> v;
    for (long c : low_to_high)
        v.emplace_back(c);
    return UniPoly(std::move(v));
}

// p(x + a)
inline UniPoly shift(const UniPoly& p, const Rat& a) { return p.compose(X() + UniPoly(a)); }

// p(a*x)
inline UniPoly scale_arg(const UniPoly& p, const Rat& a)
{
    std::vector<Rat> v = p.coeffs();
    Rat f = 1;
    for (auto& c : v) {
        c *= f;
        f *= a;
    }
    return UniPoly(std::move(v));
}

struct DivRem {
    UniPoly quot;
    UniPoly rem;
};

inline DivRem divrem(const UniPoly& a, const UniPoly& b)
{
    if (b.zero())
        throw std::domain_error("division by zero polynomial");
    int db = b.degree();
    std::vector<Rat> r = a.coeffs();
    if (a.degree() < db)
        return {UniPoly(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    Rat lb = b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rat c = r[k + db] / lb;
        q[k] = c;
        if (is_zero(c))
            continue;
        for (int i = 0; i <= db; ++i)
            r[k + i] -= c * b.coeffs()[i];
    }
    r.resize(db);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

// exact quotient or throw
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b)
{
    auto [q, r] = divrem(a, b);
    if (!r.zero())
        throw std::domain_error("inexact polynomial division");
    return q;
}

inline UniPoly monic(const UniPoly& p)
{
    if (p.zero())
        return p;
    return p / p.lead();
}

inline UniPoly pgcd(UniPoly a, UniPoly b)
{
    while (!b.zero()) {
        UniPoly r = divrem(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline UniPoly squarefree_part(const UniPoly& p)
{
    if (p.degree() <= 0)
        return monic(p);
    return monic(exact_div(p, pgcd(p, p.derivative())));
}

inline bool has_integer_coeffs(const UniPoly& p)
{
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rat& c) { return is_integer(c); });
}

// Primitive integer polynomial with positive leading coefficient; returns the
// factor f with p = f * result.
inline std::pair<UniPoly, Rat> content_normalize(const UniPoly& p)
{
    if (p.zero())
        return {p, Rat(1)};
    Integer l = 1, g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        g = igcd(g, c.get_num());
    }
    Rat f = make_rat(g, l);
    if (sgn(p.lead()) < 0)
        f = -f;
    std::vector<Rat> v;
    for (const auto& c : p.coeffs())
        v.push_back(c / f);
    return {UniPoly(std::move(v)), f};
}

// Polynomial in y with only even powers, read as a polynomial in x = y^2.
// Throws if an odd power is present.
inline UniPoly even_to_sq(const UniPoly& p)
{
    std::vector<Rat> v;
    for (int k = 0; k <= p.degree(); ++k) {
        if (k % 2) {
            if (!is_zero(p.coeffs()[k]))
                throw std::domain_error("polynomial is not even");
        } else {
            v.push_back(p.coeffs()[k]);
        }
    }
    return UniPoly(std::move(v));
}

// Odd polynomial p(y), returns p(y)/y read in x = y^2.
inline UniPoly odd_to_sq(const UniPoly& p)
{
    std::vector<Rat> v;
    for (int k = 0; k <= p.degree(); ++k) {
        if (k % 2 == 0) {
            if (!is_zero(p.coeffs()[k]))
                throw std::domain_error("polynomial is not odd");
        } else {
            v.push_back(p.coeffs()[k]);
        }
    }
    return UniPoly(std::move(v));
}

// p(x^2)
inline UniPoly sq_arg(const UniPoly& p)
{
    std::vector<Rat> v(p.zero() ? 0 : 2 * p.coeffs().size() - 1, Rat(0));
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        v[2 * k] = p.coeffs()[k];
    return UniPoly(std::move(v));
}

// Rising factorial base (base+1) ... (base+k-1)
inline UniPoly rising_factorial(const UniPoly& base, unsigned k)
{
    UniPoly r(Rat(1));
    for (unsigned i = 0; i < k; ++i)
        r = r * (base + UniPoly(Rat(static_cast<long>(i))));
    return r;
}

inline std::string to_string(const UniPoly& p, const std::string& var = "x")
{
    if (p.zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Rat& c = p.coeffs()[k];
        if (is_zero(c))
            continue;
        Rat a = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        bool unit = (a == 1);
        if (k == 0 || !unit)
            os << to_string(a);
        if (k > 0) {
            if (!unit)
                os << "*";
            os << var;
            if (k > 1)
                os << "^" << k;
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << to_string(p); }

// Lifts of univariate data into BiPoly (outer x, inner y).
inline BiPoly lift_x(const UniPoly& p)
{
    std::vector<UniPoly> v;
    for (const auto& c : p.coeffs())
        v.emplace_back(c);
    return BiPoly(std::move(v));
}

inline BiPoly lift_y(const UniPoly& p) { return BiPoly(p); }

} // namespace ifib
