#pragma once

#include "poly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ifib {

// nullopt stands for -inf (as lo) or +inf (as hi)
using RatBound = std::optional<Rat>;

inline std::vector<UniPoly> sturm_chain(const UniPoly& p)
{
    std::vector<UniPoly> s{p, p.derivative()};
    while (!s.back().zero()) {
        UniPoly r = -divrem(s[s.size() - 2], s.back()).rem;
        if (r.zero())
            break;
        s.push_back(std::move(r));
    }
    return s;
}

namespace detail {

inline int sign_at_infinity(const UniPoly& p, bool positive)
{
    int s = sgn(p.lead());
    if (!positive && p.degree() % 2)
        s = -s;
    return s;
}

inline int variations(const std::vector<UniPoly>& chain, const RatBound& x, bool plus_inf)
{
    int v = 0, last = 0;
    for (const auto& q : chain) {
        int s = x ? sgn(q.eval(*x)) : sign_at_infinity(q, plus_inf);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

} // namespace detail

// Distinct real roots of a squarefree polynomial in (lo, hi].
inline int sturm_real_roots(const UniPoly& p, const RatBound& lo, const RatBound& hi)
{
    if (p.zero())
        throw std::domain_error("sturm: zero polynomial");
    if (p.degree() >= 1 && pgcd(p, p.derivative()).degree() > 0)
        throw std::domain_error("sturm: polynomial is not squarefree");
    if (p.degree() == 0)
        return 0;
    auto chain = sturm_chain(p);
    return detail::variations(chain, lo, false) - detail::variations(chain, hi, true);
}

} // namespace ifib
