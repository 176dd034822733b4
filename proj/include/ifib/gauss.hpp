#pragma once

#include "rat.hpp"

#include <string>

namespace ifib {

struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(const Rat& r) : re(r), im(0) {} // NOLINT
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}

    static GaussRat i() { return {Rat(0), Rat(1)}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b)
    {
        Rat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat pow(unsigned long e) const
    {
        GaussRat r(Rat(1)), b = *this;
        while (e) {
            if (e & 1)
                r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
};

inline std::string to_string(const GaussRat& z)
{
    if (sgn(z.im) == 0)
        return to_string(z.re);
    std::string im = to_string(abs(z.im)) + "i";
    if (sgn(z.re) == 0)
        return (sgn(z.im) < 0 ? "-" : "") + im;
    return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + im;
}

} // namespace ifib
