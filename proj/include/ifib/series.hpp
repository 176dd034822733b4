#pragma once

#include "poly.hpp"

#include <stdexcept>
#include <vector>

namespace ifib {

namespace detail {

inline Rat exact_quotient(const Rat& a, const Rat& b) { return a / b; }

inline UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) { return exact_div(a, b); }

} // namespace detail

// First `order` coefficients of num/den as a power series; den(0) must be a
// unit (any nonzero rational, or a polynomial dividing every step exactly).
template <class T>
std::vector<T> series_div(const Poly<T>& num, const Poly<T>& den, std::size_t order)
{
    if (den.zero() || is_zero(den.coeff(0)))
        throw std::domain_error("series_div: denominator not invertible at 0");
    std::vector<T> c;
    c.reserve(order);
    for (std::size_t n = 0; n < order; ++n) {
        T acc = num.coeff(n);
        for (std::size_t k = 1; k <= n && k <= static_cast<std::size_t>(den.degree()); ++k)
            acc -= den.coeff(k) * c[n - k];
        c.push_back(detail::exact_quotient(acc, den.coeff(0)));
    }
    return c;
}

} // namespace ifib
