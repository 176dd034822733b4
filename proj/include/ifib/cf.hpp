#pragma once

#include "appreal.hpp"
#include "rat.hpp"

#include <vector>

namespace ifib {

// Simple continued fraction; the last partial quotient is >= 2 unless the
// input is an integer.
inline std::vector<Integer> cf_expand(Rat x)
{
    std::vector<Integer> out;
    for (;;) {
        Integer a = floor_rat(x);
        out.push_back(a);
        Rat f = x - a;
        if (is_zero(f))
            break;
        x = 1 / f;
    }
    return out;
}

// Folds [a0; a1, ..., an] back to a rational.  Partial quotients may be signed.
inline Rat cf_fold(const std::vector<Integer>& a)
{
    Integer p0 = 1, q0 = 0, p1 = a.empty() ? Integer(0) : a[0], q1 = 1;
    for (std::size_t i = 1; i < a.size(); ++i) {
        Integer p = a[i] * p1 + p0, q = a[i] * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p;
        q1 = q;
    }
    return make_rat(p1, q1);
}

// All convergents p_k/q_k of [a0; a1, ...].
inline std::vector<Rat> cf_convergents(const std::vector<Integer>& a)
{
    std::vector<Rat> out;
    Integer p0 = 1, q0 = 0, p1, q1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer p = i ? a[i] * p1 + p0 : a[0];
        Integer q = i ? a[i] * q1 + q0 : Integer(1);
        if (i) {
            p0 = p1;
            q0 = q1;
        }
        p1 = p;
        q1 = q;
        out.push_back(q == 0 ? Rat(0) : make_rat(p, q));
    }
    return out;
}

// Leading partial quotients of a real known only as a ball.  Returns as many
// terms as can be certified, up to `terms`.
inline std::vector<Integer> cf_of_ball(AppReal x, std::size_t terms)
{
    std::vector<Integer> out;
    while (out.size() < terms) {
        Integer a;
        if (!x.floor_if_certain(a))
            break;
        out.push_back(a);
        AppReal f = x - AppReal(Rat(a), x.prec());
        if (!f.positive())
            break;
        x = AppReal(1L, x.prec()) / f;
    }
    return out;
}

} // namespace ifib
