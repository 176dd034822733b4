#pragma once

#include "appreal.hpp"
#include "cf.hpp"
#include "polyfam.hpp"
#include "report.hpp"
#include "sequences.hpp"
#include "series.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ifib {

struct ConvVector {
    long m;
    long r;
    std::vector<Rat> components;
};

struct LimitVector {
    long m;
    std::vector<AppReal> components;
};

struct BoundConstants {
    long m, j, k;
    AppReal sigma2;         // mu_1/mu_2
    AppReal sigma2_printed; // 1/(phi_1 + 1)
    AppReal a1_ratio;       // a_1^(j)/a_1^(k)
    AppReal B_jk;
    long r_k;
};

// numerator index j, denominator index k, sign of component u
struct PsiPair {
    long j, k, sign;
};

inline PsiPair psi_pair(long m, long u)
{
    if (u < 1 || u > m)
        throw std::invalid_argument("psi_pair: need 1 <= u <= m");
    if (u <= m / 2)
        return {m - 2 * u + 1, m - u + 1, 1};
    return {2 * u - m, m - u + 1, -1};
}

inline std::optional<ConvVector> try_psi_vector(long m, long r, bool from_numerators = false)
{
    if (m < 1)
        throw std::invalid_argument("psi_vector: m < 1");
    auto term = [&](long j) {
        return from_numerators ? Rat(numerator({SeqFam::F, m, j}, r)) : F(m, j, r);
    };
    ConvVector v{m, r, {}};
    for (long u = 1; u <= m; ++u) {
        auto [j, k, sg] = psi_pair(m, u);
        Rat d = term(k);
        if (is_zero(d))
            return std::nullopt;
        v.components.push_back(Rat(sg) * term(j) / d);
    }
    return v;
}

inline ConvVector psi_vector(long m, long r, bool from_numerators = false)
{
    auto v = try_psi_vector(m, r, from_numerators);
    if (!v)
        throw std::domain_error("psi_vector: zero denominator at m=" + std::to_string(m) + " r=" + std::to_string(r));
    return *v;
}

inline LimitVector phi_vector(long m, mpfr_prec_t prec = 128)
{
    if (m < 1)
        throw std::invalid_argument("phi_vector: m < 1");
    LimitVector L{m, {}};
    for (long k = 1; k <= m; ++k)
        L.components.push_back(phi_mk(m, k, prec));
    return L;
}

inline AppReal euclid_error(long m, long r, mpfr_prec_t prec = 128)
{
    ConvVector v = psi_vector(m, r);
    LimitVector L = phi_vector(m, prec + 32);
    AppReal s(0L, prec + 32);
    for (long u = 0; u < m; ++u) {
        AppReal d = AppReal(v.components[u], prec + 32) - L.components[u];
        s = s + d * d;
    }
    return sqrt(s);
}

// a_t^(m,j) = phi_{jt} - phi_{(j-1)t}
inline AppReal a_coeff(long m, long j, long t, mpfr_prec_t prec) { return phi_mk(m, j * t, prec) - phi_mk(m, (j - 1) * t, prec); }

inline BoundConstants bound_constants(long m, long j, long k, mpfr_prec_t prec = 128)
{
    if (m < 2 || j < 1 || j > m || k < 1 || k > m)
        throw std::invalid_argument("bound_constants: need m >= 2, 1 <= j,k <= m");
    AppReal one(1L, prec);
    AppReal phi1 = phi_mk(m, 1, prec);
    AppReal s2 = mu_mk(m, 1, prec) / mu_mk(m, 2, prec);
    AppReal s2p = one / (phi1 + one);
    AppReal aj = abs(a_coeff(m, j, 1, prec)), ak = abs(a_coeff(m, k, 1, prec));
    AppReal fm(4 * m, prec);
    AppReal B = (fm * (aj + ak) - AppReal(2L, prec) * aj * ak) / (ak * ak);
    AppReal rhs = ak / (AppReal(2L, prec) * (fm - ak));
    AppReal base = abs(one / (phi1 + AppReal(2L, prec)));
    long rk = 1;
    AppReal p = base;
    while (!(p - rhs).negative()) {
        p = p * base;
        if (++rk > 100000)
            throw std::runtime_error("bound_constants: r_k search did not terminate");
    }
    return {m, j, k, s2, s2p, a_coeff(m, j, 1, prec) / a_coeff(m, k, 1, prec), B, rk};
}

struct ConvergenceConstants {
    long r_prime;
    AppReal B_prime;
    AppReal sigma2;
    long r_star;
};

// r' and B' over all pairs (j, k); r* is the least r > r' with
// 2 B' sqrt(m) |sigma_2|^r < eps
inline ConvergenceConstants convergence_constants(long m, const Rat& eps, mpfr_prec_t prec = 128)
{
    long rp = 0;
    std::optional<AppReal> Bp;
    AppReal s2(prec);
    for (long j = 1; j <= m; ++j)
        for (long k = 1; k <= m; ++k) {
            BoundConstants c = bound_constants(m, j, k, prec);
            rp = std::max(rp, c.r_k);
            if (!Bp || (c.B_jk - *Bp).positive())
                Bp = c.B_jk;
            s2 = c.sigma2;
        }
    AppReal lead = AppReal(2L, prec) * *Bp * sqrt(AppReal(m, prec));
    AppReal sa = abs(s2);
    long rs = rp + 1;
    AppReal e(eps, prec);
    while (!(lead * pow(sa, rs) - e).negative())
        ++rs;
    return {rp, *Bp, s2, rs};
}

// |F^(j)_r / F^(k)_r - a_1^(j)/a_1^(k)| <= 2 B_jk |sigma_2|^(r-1) for r_k < r <= r_k + span
inline Report bound_sweep(long m, long j, long k, long span = 30, mpfr_prec_t prec = 256)
{
    Report rep("corollary_bound");
    BoundConstants c = bound_constants(m, j, k, prec);
    AppReal sa = abs(c.sigma2);
    long strict_fail = 0;
    for (long r = c.r_k + 1; r <= c.r_k + span; ++r) {
        Rat den = F(m, k, r);
        std::string where = "m=" + std::to_string(m) + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                            " r=" + std::to_string(r);
        if (is_zero(den)) {
            rep.note("zero_denominator", where);
            continue;
        }
        AppReal dev = abs(AppReal(F(m, j, r) / den, prec) - c.a1_ratio);
        AppReal bound = AppReal(2L, prec) * c.B_jk * pow(sa, r - 1);
        rep.expect((bound - dev).positive(), "ratio_bound", where + " dev=" + dev.mid_str(6));
        if (!(AppReal(2L, prec) * c.B_jk * pow(sa, r) - dev).positive())
            ++strict_fail;
    }
    if (strict_fail)
        rep.note("ratio_bound_exponent_r", std::to_string(strict_fail) + " indices exceed the exponent-r form");
    return rep;
}

// Distance to the limit, component limits and monotone decrease beyond r*.
inline Report convergence_suite(long m, long r_hi, const Rat& eps = Rat(1, 1000), mpfr_prec_t prec = 256)
{
    Report rep("vector_convergence");
    std::string mm = "m=" + std::to_string(m);
    LimitVector L = phi_vector(m, prec);
    if (m == 1) {
        for (long r = 1; r <= r_hi; ++r)
            rep.expect(euclid_error(1, r, prec).contains(0), "exact_limit_m1", "r=" + std::to_string(r));
        return rep;
    }
    for (long u = 1; u <= m; ++u) {
        auto [j, k, sg] = psi_pair(m, u);
        AppReal lim = AppReal(sg, prec) * a_coeff(m, j, 1, prec) / a_coeff(m, k, 1, prec);
        rep.expect(detail::same_ball(lim, L.components[u - 1]), "coefficient_ratio_is_phi",
                   mm + " u=" + std::to_string(u));
    }
    ConvergenceConstants cc = convergence_constants(m, eps, prec);
    AppReal sa = abs(cc.sigma2);
    AppReal two(2L, prec), rootm = sqrt(AppReal(m, prec));
    std::optional<AppReal> prev;
    for (long r = cc.r_star + 1; r <= r_hi; ++r) {
        std::string where = mm + " r=" + std::to_string(r);
        auto v = try_psi_vector(m, r);
        if (!v) {
            rep.note("zero_denominator", where);
            prev.reset();
            continue;
        }
        AppReal s(0L, prec);
        AppReal cb = two * cc.B_prime * pow(sa, r - 1);
        for (long u = 0; u < m; ++u) {
            AppReal d = AppReal(v->components[u], prec) - L.components[u];
            rep.expect((cb - abs(d)).positive(), "component_bound", where + " u=" + std::to_string(u + 1));
            s = s + d * d;
        }
        AppReal dist = sqrt(s);
        rep.expect((cb * rootm - dist).positive(), "distance_bound", where + " dist=" + dist.mid_str(6));
        rep.expect(dist.abs_below(eps), "within_eps", where);
        if (prev)
            rep.expect((*prev - dist).positive(), "distance_decreasing", where);
        prev = dist;
    }
    return rep;
}

struct ProductResidual {
    UniPoly residual;
    Rat max_abs;
};

// prod_u (x^2 - psi_u x + 1) - (1 + x + ... + x^(2m))
inline ProductResidual limit_product_poly(long m, long r)
{
    ConvVector v = psi_vector(m, r);
    UniPoly prod(Rat(1));
    for (const Rat& c : v.components)
        prod = prod * UniPoly(std::vector<Rat>{Rat(1), -c, Rat(1)});
    std::vector<Rat> ones(static_cast<std::size_t>(2 * m + 1), Rat(1));
    ProductResidual out{prod - UniPoly(ones), Rat(0)};
    for (int i = 0; i <= out.residual.degree(); ++i)
        out.max_abs = std::max(out.max_abs, Rat(abs(out.residual.coeff(i))));
    return out;
}

inline Report residual_suite(long m, long r_lo, long r_hi)
{
    Report rep("product_residual");
    std::optional<Rat> prev;
    for (long r = r_lo; r <= r_hi; ++r) {
        if (!try_psi_vector(m, r)) {
            prev.reset();
            continue;
        }
        Rat mx = limit_product_poly(m, r).max_abs;
        if (prev)
            rep.expect(mx < *prev, "residual_decreasing", "m=" + std::to_string(m) + " r=" + std::to_string(r));
        prev = mx;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// continued fraction views

// (sign) seq(num, r + shift) / seq(den, r)
struct RatioSpec {
    SeqId num;
    SeqId den;
    long shift = 0;
    bool negate = false;
};

struct CfView {
    Rat value;
    std::vector<Integer> cf;
    std::vector<Integer> limit_cf;
    std::size_t common_prefix;
    Report report;
};

// coefficient of mu_1^-r in the closed form of a sequence
inline AppReal dominant_coeff(const SeqId& id, mpfr_prec_t prec)
{
    validate(id);
    long m = id.m, j = id.j;
    switch (id.family) {
    case SeqFam::F:
        return a_coeff(m, j, 1, prec);
    case SeqFam::G:
    case SeqFam::G0:
        return phi_mk(m, j + 1, prec) - AppReal(2L, prec) * phi_mk(m, j, prec) + phi_mk(m, j - 1, prec);
    default:
        throw std::invalid_argument("dominant_coeff: family must be F, G or G0");
    }
}

inline AppReal ratio_limit(const RatioSpec& s, mpfr_prec_t prec)
{
    if (s.num.m != s.den.m)
        throw std::invalid_argument("ratio_limit: sequences of different m");
    AppReal v = dominant_coeff(s.num, prec) / dominant_coeff(s.den, prec) * pow(mu_mk(s.num.m, 1, prec), -s.shift);
    return s.negate ? -v : v;
}

inline Rat ratio_value(const RatioSpec& s, long r)
{
    Rat d = seq_term(s.den, r);
    if (is_zero(d))
        throw std::domain_error("ratio_value: zero denominator at r=" + std::to_string(r));
    Rat v = seq_term(s.num, r + s.shift) / d;
    return s.negate ? Rat(-v) : v;
}

// certified CF prefix of the limit with at least `terms` quotients; doubles
// the working precision when a floor decision is inconclusive
inline std::vector<Integer> limit_cf(const RatioSpec& s, std::size_t terms, mpfr_prec_t prec = 128)
{
    std::vector<Integer> best;
    for (int tries = 0; tries < 8; ++tries, prec *= 2) {
        best = cf_of_ball(ratio_limit(s, prec), terms);
        if (best.size() >= terms)
            break;
    }
    return best;
}

inline CfView cf_view(const RatioSpec& s, long r, mpfr_prec_t prec = 128)
{
    CfView out{ratio_value(s, r), {}, {}, 0, Report("cf_view")};
    out.cf = cf_expand(out.value);
    if (ratio_limit(s, 4 * prec).contains(out.value)) {
        // rational limit already reached (e.g. phi_{4,3} = -1)
        out.limit_cf = out.cf;
        out.common_prefix = out.cf.size();
        out.report.note("limit_reached", "r=" + std::to_string(r) + " value=" + to_string(out.value));
        return out;
    }
    out.limit_cf = limit_cf(s, out.cf.size() + 2, prec);
    while (out.common_prefix < out.cf.size() && out.common_prefix < out.limit_cf.size() &&
           out.cf[out.common_prefix] == out.limit_cf[out.common_prefix])
        ++out.common_prefix;
    out.report.expect(cf_fold(out.cf) == out.value, "cf_roundtrip", "r=" + std::to_string(r));
    out.report.expect(out.limit_cf.size() >= out.cf.size(), "limit_cf_certified",
                      std::to_string(out.limit_cf.size()) + " terms");
    return out;
}

// Prefix agreement with the limit grows along the sequence of ratios.
inline Report cf_stabilization_suite(const RatioSpec& s, long r_lo, long r_hi, mpfr_prec_t prec = 128)
{
    Report rep("cf_stabilization");
    std::size_t first = 0, best = 0, last = 0;
    bool any = false, reached = false;
    for (long r = r_lo; r <= r_hi; ++r) {
        if (is_zero(seq_term(s.den, r)))
            continue;
        CfView v = cf_view(s, r, prec);
        rep.merge(v.report);
        reached = reached || v.common_prefix == v.cf.size();
        if (!any)
            first = v.common_prefix;
        any = true;
        best = std::max(best, v.common_prefix);
        last = v.common_prefix;
    }
    rep.expect(any && (last > first || reached), "prefix_grows",
               "first=" + std::to_string(first) + " last=" + std::to_string(last));
    rep.expect(any && last + 2 >= best, "prefix_stable", "best=" + std::to_string(best) + " last=" + std::to_string(last));
    return rep;
}

// ---------------------------------------------------------------------------
// the m = 2 case

namespace detail {

inline std::vector<Integer> periodic_cf(const std::vector<long>& head, const std::vector<long>& period, std::size_t len)
{
    std::vector<Integer> a;
    for (std::size_t i = 0; i < len; ++i)
        a.push_back(i < head.size() ? head[i] : period[(i - head.size()) % period.size()]);
    return a;
}

} // namespace detail

inline Report m2_suite(long depth, mpfr_prec_t prec = 256)
{
    if (depth < 10)
        throw std::invalid_argument("m2_suite: depth >= 10");
    Report rep("m2");
    auto at = [](long r) { return " r=" + std::to_string(r); };

    // generating functions
    UniPoly den = poly_from({5, 5, 1});
    auto g1 = series_div(poly_from({10, 5}), den, static_cast<std::size_t>(depth));
    auto g2 = series_div(poly_from({5}), den, static_cast<std::size_t>(depth));
    auto g2x = series_div(poly_from({0, 5}), den, static_cast<std::size_t>(depth));
    bool printed_ok = true;
    for (long k = 0; k < depth; ++k) {
        rep.expect(g1[k] == F(2, 1, k + 1), "gf_first", at(k + 1));
        rep.expect(g2[k] == F(2, 2, k + 1), "gf_second", at(k + 1));
        printed_ok = printed_ok && g2x[k] == F(2, 2, k + 1);
    }
    if (!printed_ok)
        rep.note("gf_second_printed_numerator", "5x/(x^2+5x+5) starts at x; the listed series is 5/(x^2+5x+5)");
    for (long r = -depth; r <= depth; ++r)
        rep.expect(F(2, 1, r) == 2 * F(2, 2, r) + F(2, 2, r - 1), "first_from_second", at(r));

    // closed forms
    AppReal p1 = phi_mk(2, 1, prec), p2 = phi_mk(2, 2, prec), r5 = sqrt(AppReal(5L, prec));
    AppReal x1 = p2 / r5, x2 = -p1 / r5;
    for (long r = 1; r <= depth; ++r) {
        AppReal f1 = pow(x1, r - 1) + pow(x2, r - 1);
        AppReal f2 = -r5 * (pow(x1, r) - pow(x2, r));
        rep.expect(f1.contains(F(2, 1, r)), "closed_first", at(r));
        rep.expect(f2.contains(F(2, 2, r)), "closed_second", at(r));
    }

    // accuracy of consecutive ratios; the printed right-hand sides lack 1/sqrt(5)
    AppReal gold = (AppReal(1L, prec) + r5) / AppReal(2L, prec);
    AppReal target = gold / r5;
    bool printed_acc = true;
    for (long r = 1; r <= depth; ++r) {
        AppReal e1 = abs(AppReal(F(2, 1, r + 1) / F(2, 1, r), prec) + target);
        AppReal e2 = abs(AppReal(F(2, 2, r + 1) / F(2, 2, r), prec) + target);
        AppReal w1 = AppReal(1L, prec) / (pow(gold, 2 * r - 2) + AppReal(1L, prec));
        AppReal w2 = AppReal(1L, prec) / (pow(gold, 2 * r) - AppReal(1L, prec));
        rep.expect(detail::same_ball(e1, w1 / r5), "accuracy_first", at(r));
        rep.expect(detail::same_ball(e2, w2 / r5), "accuracy_second", at(r));
        printed_acc = printed_acc && detail::same_ball(e1, w1) && detail::same_ball(e2, w2);
    }
    if (!printed_acc)
        rep.note("accuracy_printed_scale", "printed 1/(phi^(2r-2)+1) and 1/(phi^(2r)-1) hold only after division by sqrt(5)");

    // numerators interlace Lucas and Fibonacci numbers
    auto fib = fibonacci_numbers(depth + 2);
    auto luc = lucas_numbers(depth + 2);
    auto N = [](long j, long r) { return numerator({SeqFam::F, 2, j}, r); };
    for (long r = 1; r <= depth; ++r) {
        rep.expect(Rat(N(1, r)) == rpow(Rat(5), floor_div(r - 1, 2)) * F(2, 1, r), "numerator_scale", at(r));
        if (r % 2) {
            rep.expect(N(1, r) == luc[r - 1], "first_odd_lucas", at(r));
            rep.expect(N(2, r) == luc[r], "second_odd_lucas", at(r));
        } else {
            rep.expect(N(1, r) == -fib[r - 1], "first_even_fibonacci", at(r));
            rep.expect(N(2, r) == -fib[r], "second_even_fibonacci", at(r));
        }
    }

    // divisibility
    for (long s = 1; s <= depth; ++s)
        for (long t = s; t <= depth; t += s)
            rep.expect(mpz_divisible_p(N(2, t).get_mpz_t(), N(2, s).get_mpz_t()) != 0, "divisibility",
                       "s=" + std::to_string(s) + " t=" + std::to_string(t));
    for (long r = 1; 2 * r <= depth; ++r)
        rep.expect(N(2, 2 * r) == N(1, r + 1) * N(2, r), "doubling", at(r));
    for (long s = 1; s < depth; ++s)
        for (long t = s; t < depth; ++t) {
            long d = std::gcd(s, t);
            if ((s / d) % 2 == 0 || (t / d) % 2 == 0)
                continue;
            Integer h = igcd(N(1, s + 1), N(1, t + 1));
            rep.expect(h == abs(N(1, d + 1)), "odd_quotient_hcf", "s=" + std::to_string(s) + " t=" + std::to_string(t));
        }

    // convergent lists and the signed periodic expansions
    RatioSpec c1{{SeqFam::F, 2, 1}, {SeqFam::F, 2, 1}, 1, true};
    RatioSpec c2{{SeqFam::F, 2, 2}, {SeqFam::F, 2, 2}, 1, true};
    std::vector<Rat> list1{make_rat(1, 2), make_rat(3, 5), make_rat(2, 3), make_rat(7, 10), make_rat(5, 7),
                           make_rat(18, 25), make_rat(13, 18), make_rat(47, 65), make_rat(34, 47), make_rat(123, 170),
                           make_rat(89, 123)};
    std::vector<Rat> list2{Rat(1), make_rat(4, 5), make_rat(3, 4), make_rat(11, 15), make_rat(8, 11), make_rat(29, 40),
                           make_rat(21, 29), make_rat(76, 105), make_rat(55, 76), make_rat(199, 275),
                           make_rat(144, 199)};
    for (std::size_t i = 0; i < list1.size(); ++i) {
        long r = static_cast<long>(i) + 1;
        rep.expect(ratio_value(c1, r) == list1[i], "convergent_list_first", at(r));
        rep.expect(ratio_value(c2, r) == list2[i], "convergent_list_second", at(r));
    }
    auto s1 = cf_convergents(detail::periodic_cf({0, 1, 2, 3}, {-1, 5}, static_cast<std::size_t>(depth)));
    auto s2 = cf_convergents(detail::periodic_cf({1}, {-5, 1}, static_cast<std::size_t>(depth)));
    for (long i = 0; i < depth; ++i) {
        if (i >= 2)
            rep.expect(s1[i] == ratio_value(c1, i + 1), "signed_cf_first", "i=" + std::to_string(i));
        rep.expect(s2[i] == ratio_value(c2, i + 1), "signed_cf_second", "i=" + std::to_string(i));
    }
    rep.note("signed_cf_first_offset", "[0;1,2,3,-1,5,...] convergents match the list from its third entry on");
    rep.merge(cf_stabilization_suite(c1, 1, depth, prec));
    return rep;
}

} // namespace ifib
