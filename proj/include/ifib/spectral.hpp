#pragma once

#include "appreal.hpp"
#include "polyfam.hpp"
#include "report.hpp"
#include "sturm.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ifib {

enum class OrthoFam { P, Q };

inline const char* ortho_fam_name(OrthoFam f) { return f == OrthoFam::P ? "P" : "Q"; }

inline const UniPoly& ortho_poly(OrthoFam f, long m) { return f == OrthoFam::P ? fam::P(m) : fam::Q(m); }

struct MellinPoly {
    OrthoFam family;
    long m;
    UniPoly poly;
    Rat normalization; // raw Beta-reduction sum = normalization * poly
};

// ---------------------------------------------------------------------------
// recurrences, ODEs, Christoffel-Darboux, ladder, quadratic identity

inline Report three_term_check(OrthoFam f, long m_max)
{
    if (m_max < 2)
        throw std::invalid_argument("three_term_check: m_max >= 2");
    Report rep(std::string("three_term_") + ortho_fam_name(f));
    UniPoly xp2 = poly_from({2, 1});
    if (f == OrthoFam::P) {
        rep.expect(fam::P(0) == UniPoly(1L) && fam::P(1) == poly_from({3, 1}), "seeds", "P_0 = 1, P_1 = x+3");
        UniPoly a = poly_from({1}), b = UniPoly(std::vector<Rat>{Rat(1), Rat(1, 3)});
        UniPoly c = xp2 * b - a;
        if (content_normalize(c).first != content_normalize(fam::P(2)).first)
            rep.note("printed_seeds", "P_1 = 1+x/3 with P_0 = 1 gives P_2 = " + to_string(c) + ", not a multiple of x^2+5x+5");
    } else {
        rep.expect(fam::Q(0) == UniPoly(2L) && fam::Q(1) == xp2, "seeds", "Q_0 = 2, Q_1 = x+2");
        UniPoly a = UniPoly(std::vector<Rat>{Rat(1), Rat(1, 2)});
        UniPoly b = UniPoly(std::vector<Rat>{Rat(1, 2), Rat(1), Rat(1, 4)});
        UniPoly c = xp2 * b - a;
        if (content_normalize(c).first != content_normalize(fam::Q(3)).first)
            rep.note("printed_seeds", "Q_1 = 1+x/2, Q_2 = x^2/4+x+1/2 give Q_3 = " + to_string(c) + ", not a multiple of Q_3");
    }
    for (long m = 1; m < m_max; ++m)
        rep.expect(ortho_poly(f, m + 1) == xp2 * ortho_poly(f, m) - ortho_poly(f, m - 1), "recurrence",
                   "m=" + std::to_string(m));
    return rep;
}

inline UniPoly ode_residual(OrthoFam f, long m, int q_sign = -1)
{
    const UniPoly& p = ortho_poly(f, m);
    UniPoly d1 = p.derivative(), d2 = d1.derivative();
    UniPoly w = poly_from({0, 4, 1});
    if (f == OrthoFam::P)
        return w * d2 + poly_from({6, 2}) * d1 - p * Rat(m * (m + 1));
    return w * d2 + poly_from({2, 1}) * d1 + p * Rat(q_sign * m * m);
}

// For Q the printed +m^2 is tried first; the -m^2 form is the one asserted.
inline Report ode_check(OrthoFam f, long m_max)
{
    if (m_max < 1)
        throw std::invalid_argument("ode_check: m_max >= 1");
    Report rep(std::string("ode_") + ortho_fam_name(f));
    long printed_fail = 0;
    for (long m = 0; m <= m_max; ++m) {
        std::string mm = "m=" + std::to_string(m);
        if (f == OrthoFam::P) {
            rep.expect(ode_residual(f, m).zero(), "ode", mm);
            continue;
        }
        bool plus = ode_residual(f, m, +1).zero(), minus = ode_residual(f, m, -1).zero();
        if (!plus)
            ++printed_fail;
        rep.expect(minus, "ode_minus_m2", mm);
    }
    if (printed_fail)
        rep.note("ode_printed_plus_m2",
                 "+m^2 Q_m leaves a nonzero residual for " + std::to_string(printed_fail) + " values of m");
    return rep;
}

inline Report cd_check(long n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("cd_check: n_max >= 1");
    Report rep("christoffel_darboux");
    BiPoly xmy = lift_x(X()) - lift_y(X());
    BiPoly sum;
    UniPoly conf;
    for (long n = 0; n <= n_max; ++n) {
        const UniPoly &pn = fam::P(n), &pn1 = fam::P(n + 1);
        sum = sum + lift_x(pn) * lift_y(pn);
        conf = conf + pn * pn;
        BiPoly rhs = lift_x(pn1) * lift_y(pn) - lift_y(pn1) * lift_x(pn);
        std::string nn = "n=" + std::to_string(n);
        rep.expect(sum * xmy == rhs, "cd_bivariate", nn);
        rep.expect(conf == pn1.derivative() * pn - pn1 * pn.derivative(), "cd_confluent", nn);
    }
    return rep;
}

// hypergeometric normalization 2F1(-m, m+1; 3/2; -x/4) = P_m/(2m+1)
inline UniPoly P_hyp(long m) { return fam::P(m) / Rat(2 * m + 1); }

inline UniPoly raise_op(long m, const UniPoly& p)
{
    return poly_from({0, 4, 1}) * p.derivative() + poly_from({3 + 2 * m, m + 1}) * p;
}

inline UniPoly lower_op(long m, const UniPoly& p)
{
    return -(poly_from({0, 4, 1}) * p.derivative()) + poly_from({2 * m - 1, m}) * p;
}

inline Report ladder_check(long m_max)
{
    if (m_max < 2)
        throw std::invalid_argument("ladder_check: m_max >= 2");
    Report rep("ladder");
    bool monic_ok = true;
    for (long m = 1; m <= m_max; ++m) {
        std::string mm = "m=" + std::to_string(m);
        UniPoly p = P_hyp(m), pm = P_hyp(m - 1), pp = P_hyp(m + 1);
        rep.expect(poly_from({0, 4, 1}) * p.derivative() == Rat(-(2 * m - 1)) * pm + poly_from({2 * m - 1, m}) * p,
                   "derivative_relation", mm);
        rep.expect(raise_op(m, p) == Rat(2 * m + 3) * pp, "raising", mm);
        rep.expect(lower_op(m, p) == Rat(2 * m - 1) * pm, "lowering", mm);
        // monic family: both operators carry the factor 2m+1
        rep.expect(raise_op(m, fam::P(m)) == Rat(2 * m + 1) * fam::P(m + 1), "raising_monic", mm);
        rep.expect(lower_op(m, fam::P(m)) == Rat(2 * m + 1) * fam::P(m - 1), "lowering_monic", mm);
        monic_ok = monic_ok && raise_op(m, fam::P(m)) == Rat(2 * m + 3) * fam::P(m + 1);
    }
    if (!monic_ok)
        rep.note("ladder_normalization", "operators hold for P_m/(2m+1) (value 1 at x=0), not for the monic P_m");
    return rep;
}

inline Report quad_identity_check(long m_max)
{
    if (m_max < 1)
        throw std::invalid_argument("quad_identity_check: m_max >= 1");
    Report rep("quadratic_identity");
    for (long m = 0; m <= m_max; ++m)
        rep.expect(fam::Q(m) * fam::Q(m) == fam::Q(2 * m) + UniPoly(2L), "square", "m=" + std::to_string(m));
    return rep;
}

// ---------------------------------------------------------------------------
// orthogonality through x = 2cos(2y) - 2

// p pi + q
struct TrigIntegral {
    Rat pi_coeff;
    Rat rational;
};

namespace detail {

// integral over [0, pi] of cos(n y)
inline TrigIntegral cos_integral(long n)
{
    if (n == 0)
        return {Rat(1), Rat(0)};
    return {Rat(0), Rat(0)}; // sin(n pi)/n
}

} // namespace detail

struct OrthoInner {
    TrigIntegral trig;  // frequency integral over [0, pi]
    Rat i_pi_coeff;     // full weighted integral = i pi * coeff (principal branch of x^(1/2))
    Report report;
};

inline OrthoInner ortho_inner(OrthoFam f, long l, long k)
{
    if (l < 0 || k < 0 || (f == OrthoFam::Q && (l < 1 || k < 1)))
        throw std::invalid_argument("ortho_inner: need l, k >= 0 (>= 1 for Q)");
    OrthoInner out{{}, Rat(0), Report(std::string("orthogonality_") + ortho_fam_name(f))};
    UniPoly shift4 = poly_from({4, 1});
    for (long i : {l, k}) {
        UniPoly via = f == OrthoFam::P ? even_to_sq(fam::S(2 * i)).compose(shift4)
                                       : even_to_sq(fam::C(2 * i)).compose(shift4);
        out.report.expect(via == ortho_poly(f, i), "trig_reduction", "index=" + std::to_string(i));
    }
    TrigIntegral a, b;
    if (f == OrthoFam::P) {
        // sin((2l+1)y) sin((2k+1)y) = (cos((2l-2k)y) - cos((2l+2k+2)y))/2
        a = detail::cos_integral(2 * l - 2 * k);
        b = detail::cos_integral(2 * l + 2 * k + 2);
        out.trig = {(a.pi_coeff - b.pi_coeff) / 2, (a.rational - b.rational) / 2};
        out.i_pi_coeff = 4 * out.trig.pi_coeff;
    } else {
        // Q_l Q_k / 4 = cos(2ly) cos(2ky) = (cos((2l-2k)y) + cos((2l+2k)y))/2
        a = detail::cos_integral(2 * l - 2 * k);
        b = detail::cos_integral(2 * l + 2 * k);
        out.trig = {(a.pi_coeff + b.pi_coeff) / 2, (a.rational + b.rational) / 2};
        out.i_pi_coeff = -4 * out.trig.pi_coeff;
    }
    out.report.expect(l == k || (is_zero(out.trig.pi_coeff) && is_zero(out.trig.rational)), "orthogonal",
                      "l=" + std::to_string(l) + " k=" + std::to_string(k));
    return out;
}

// ---------------------------------------------------------------------------
// Mellin transform polynomials

namespace detail {

struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t p) { mpfr_init2(v, p); }
    Mp(const Mp& o)
    {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Mp& operator=(const Mp& o)
    {
        mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    ~Mp() { mpfr_clear(v); }
};

inline void set_rat(Mp& d, const Rat& q) { mpfr_set_q(d.v, q.get_mpq_t(), MPFR_RNDN); }

// tanh-sinh quadrature of f over [0, b]; f receives the abscissa.  Level
// refinement stops when two successive levels agree to 2^-(prec-16).
inline std::pair<Mp, Mp> tanh_sinh(const std::function<void(Mp&, const Mp&)>& f, const Mp& b, mpfr_prec_t prec)
{
    Mp pi(prec), half_b(prec), t(prec), q(prec), e(prec), ch(prec), w(prec), x(prec), fx(prec), tmp(prec);
    mpfr_const_pi(pi.v, MPFR_RNDN);
    mpfr_div_2ui(half_b.v, b.v, 1, MPFR_RNDN);
    Mp prev(prec), cur(prec), err(prec), raw(prec);
    mpfr_set_inf(prev.v, 1);
    mpfr_set_inf(err.v, 1);
    mpfr_set_zero(raw.v, 1);
    for (int level = 2; level <= 12; ++level) {
        long steps = 5L << level; // t in [-5, 5]
        // nodes nest: past the first level only odd k are new
        long stride = level == 2 ? 1 : 2;
        for (long k = level == 2 ? -steps : -steps + 1; k <= steps; k += stride) {
            mpfr_set_si(t.v, k, MPFR_RNDN);
            mpfr_div_2ui(t.v, t.v, static_cast<unsigned long>(level), MPFR_RNDN);
            // q = (pi/2) sinh t ; x = b/(1 + e^{-2q}) ; w = (b/2)(pi/2) cosh t / cosh^2 q
            mpfr_sinh(q.v, t.v, MPFR_RNDN);
            mpfr_mul(q.v, q.v, pi.v, MPFR_RNDN);
            mpfr_div_2ui(q.v, q.v, 1, MPFR_RNDN);
            mpfr_mul_si(e.v, q.v, -2, MPFR_RNDN);
            mpfr_exp(e.v, e.v, MPFR_RNDN);
            mpfr_add_ui(tmp.v, e.v, 1, MPFR_RNDN);
            mpfr_div(x.v, b.v, tmp.v, MPFR_RNDN);
            if (mpfr_zero_p(x.v) || mpfr_cmp(x.v, b.v) >= 0)
                continue;
            mpfr_cosh(ch.v, q.v, MPFR_RNDN);
            mpfr_sqr(ch.v, ch.v, MPFR_RNDN);
            mpfr_cosh(w.v, t.v, MPFR_RNDN);
            mpfr_mul(w.v, w.v, pi.v, MPFR_RNDN);
            mpfr_div_2ui(w.v, w.v, 1, MPFR_RNDN);
            mpfr_mul(w.v, w.v, half_b.v, MPFR_RNDN);
            mpfr_div(w.v, w.v, ch.v, MPFR_RNDN);
            f(fx, x);
            mpfr_mul(fx.v, fx.v, w.v, MPFR_RNDN);
            mpfr_add(raw.v, raw.v, fx.v, MPFR_RNDN);
        }
        mpfr_div_2ui(cur.v, raw.v, static_cast<unsigned long>(level), MPFR_RNDN);
        mpfr_sub(err.v, cur.v, prev.v, MPFR_RNDN);
        mpfr_abs(err.v, err.v, MPFR_RNDN);
        prev = cur;
        mpfr_set_ui_2exp(tmp.v, 1, -(prec - 16), MPFR_RNDN);
        if (level >= 4 && mpfr_cmp(err.v, tmp.v) <= 0)
            break;
    }
    return {cur, err};
}

inline Rat mellin_shift(OrthoFam f) { return f == OrthoFam::P ? Rat(1, 4) : Rat(-1, 4); }

// Sum_k c_k (-4)^k (s+a)^(k rising) (s+a+1/4+k)^((m-k) rising)
inline UniPoly mellin_raw(OrthoFam f, long m)
{
    const UniPoly& p = ortho_poly(f, m);
    Rat a = mellin_shift(f);
    UniPoly out;
    for (long k = 0; k <= m; ++k) {
        Rat c = p.coeff(static_cast<std::size_t>(k)) * rpow(Rat(-4), k);
        if (is_zero(c))
            continue;
        UniPoly term = rising_factorial(poly_from({0, 1}) + UniPoly(a), static_cast<unsigned>(k)) *
                       rising_factorial(poly_from({0, 1}) + UniPoly(a + Rat(1, 4) + Rat(k)),
                                        static_cast<unsigned>(m - k));
        out = out + term * c;
    }
    return out;
}

} // namespace detail

namespace detail {

// int_0^1 F(-4t) t^beta (1-t)^(-3/4) dt, beta = s - 3/4 (P) or s - 5/4 (Q);
// value and level-difference error estimate
inline std::pair<Mp, Mp> mellin_quadrature(OrthoFam f, long m, const Rat& s, mpfr_prec_t prec)
{
    const UniPoly& p = ortho_poly(f, m);
    Rat gam = f == OrthoFam::P ? Rat(4 * s) : Rat(4 * s - 2); // exponent of u after t = u^4
    Rat beta = f == OrthoFam::P ? Rat(s - Rat(3, 4)) : Rat(s - Rat(5, 4));
    std::vector<Mp> coef;
    for (const Rat& c : p.coeffs()) {
        coef.emplace_back(prec);
        set_rat(coef.back(), c);
    }
    Mp g(prec), bt(prec), b(prec);
    set_rat(g, gam);
    set_rat(bt, beta);
    mpfr_set_ui(b.v, 2, MPFR_RNDN);
    mpfr_rootn_ui(b.v, b.v, 4, MPFR_RNDN);
    mpfr_ui_div(b.v, 1, b.v, MPFR_RNDN); // 2^(-1/4)
    auto polyval = [&](Mp& out, const Mp& x) {
        mpfr_set_zero(out.v, 1);
        for (std::size_t i = coef.size(); i-- > 0;) {
            mpfr_mul(out.v, out.v, x.v, MPFR_RNDN);
            mpfr_add(out.v, out.v, coef[i].v, MPFR_RNDN);
        }
    };
    // t = u^4 on [0, 1/2]: 4 u^gam F(-4u^4) (1-u^4)^(-3/4)
    auto fa = [&](Mp& out, const Mp& u) {
        Mp u4(prec), y(prec), z(prec);
        mpfr_pow_ui(u4.v, u.v, 4, MPFR_RNDN);
        mpfr_mul_si(y.v, u4.v, -4, MPFR_RNDN);
        polyval(out, y);
        mpfr_ui_sub(z.v, 1, u4.v, MPFR_RNDN);
        mpfr_rec_sqrt(z.v, z.v, MPFR_RNDN);
        mpfr_sqrt(y.v, z.v, MPFR_RNDN);
        mpfr_mul(z.v, z.v, y.v, MPFR_RNDN); // (1-u^4)^(-3/4)
        mpfr_mul(out.v, out.v, z.v, MPFR_RNDN);
        mpfr_pow(z.v, u.v, g.v, MPFR_RNDN);
        mpfr_mul(out.v, out.v, z.v, MPFR_RNDN);
        mpfr_mul_ui(out.v, out.v, 4, MPFR_RNDN);
    };
    // 1-t = v^4 on [1/2, 1]: 4 F(-4(1-v^4)) (1-v^4)^beta
    auto fb = [&](Mp& out, const Mp& v) {
        Mp t(prec), y(prec);
        mpfr_pow_ui(t.v, v.v, 4, MPFR_RNDN);
        mpfr_ui_sub(t.v, 1, t.v, MPFR_RNDN);
        mpfr_mul_si(y.v, t.v, -4, MPFR_RNDN);
        polyval(out, y);
        mpfr_pow(t.v, t.v, bt.v, MPFR_RNDN);
        mpfr_mul(out.v, out.v, t.v, MPFR_RNDN);
        mpfr_mul_ui(out.v, out.v, 4, MPFR_RNDN);
    };
    auto A = tanh_sinh(fa, b, prec);
    auto B = tanh_sinh(fb, b, prec);
    mpfr_add(A.first.v, A.first.v, B.first.v, MPFR_RNDN);
    mpfr_add(A.second.v, A.second.v, B.second.v, MPFR_RNDN);
    return A;
}

// Gamma(1/4) Gamma(s+a) / Gamma(s+a+1/4+m) * raw(s)
inline Mp mellin_closed(OrthoFam f, long m, const Rat& s, mpfr_prec_t prec)
{
    Rat a = mellin_shift(f);
    Mp g1(prec), g2(prec), g3(prec), r(prec);
    set_rat(g1, Rat(1, 4));
    mpfr_gamma(g1.v, g1.v, MPFR_RNDN);
    set_rat(g2, s + a);
    mpfr_gamma(g2.v, g2.v, MPFR_RNDN);
    set_rat(g3, s + a + Rat(1, 4) + Rat(m));
    mpfr_gamma(g3.v, g3.v, MPFR_RNDN);
    set_rat(r, mellin_raw(f, m).eval(s));
    mpfr_mul(r.v, r.v, g1.v, MPFR_RNDN);
    mpfr_mul(r.v, r.v, g2.v, MPFR_RNDN);
    mpfr_div(r.v, r.v, g3.v, MPFR_RNDN);
    return r;
}

} // namespace detail

// |quadrature - closed form| relative to max(1, |value|), as a double
inline double mellin_oracle_gap(OrthoFam f, long m, const Rat& s, mpfr_prec_t prec = 160)
{
    auto [q, err] = detail::mellin_quadrature(f, m, s, prec);
    detail::Mp c = detail::mellin_closed(f, m, s, prec);
    detail::Mp d(prec);
    mpfr_sub(d.v, q.v, c.v, MPFR_RNDN);
    mpfr_abs(d.v, d.v, MPFR_RNDN);
    double scale = std::max(1.0, std::fabs(mpfr_get_d(c.v, MPFR_RNDN)));
    return mpfr_get_d(d.v, MPFR_RNDU) / scale;
}

inline std::pair<double, double> mellin_quadrature_d(OrthoFam f, long m, const Rat& s, mpfr_prec_t prec)
{
    auto [q, err] = detail::mellin_quadrature(f, m, s, prec);
    return {mpfr_get_d(q.v, MPFR_RNDN), mpfr_get_d(err.v, MPFR_RNDU)};
}

inline MellinPoly mellin_poly(OrthoFam f, long m, bool validate = true)
{
    if (m < 0)
        throw std::invalid_argument("mellin_poly: m >= 0");
    UniPoly raw = detail::mellin_raw(f, m);
    auto [poly, c] = content_normalize(raw);
    if (sgn(poly.lead()) < 0) {
        poly = -poly;
        c = -c;
    }
    if (validate)
        for (long s : {1L, 2L, 3L}) {
            double gap = mellin_oracle_gap(f, m, Rat(s));
            if (!(gap < 1e-30))
                throw std::runtime_error(std::string("mellin_poly: quadrature disagrees for ") + ortho_fam_name(f) +
                                         " m=" + std::to_string(m) + " s=" + std::to_string(s));
        }
    return {f, m, poly, c};
}

// +1 or -1 with p(1-s) = sign p(s); 0 if neither
inline int functional_sign(const UniPoly& p)
{
    UniPoly r = p.compose(poly_from({1, -1}));
    if (r == p)
        return 1;
    if (r == -p)
        return -1;
    return 0;
}

inline Report critical_line_check(OrthoFam f, long m_max)
{
    if (m_max < 1)
        throw std::invalid_argument("critical_line_check: m_max >= 1");
    Report rep(std::string("critical_line_") + ortho_fam_name(f));
    for (long m = 1; m <= m_max; ++m) {
        std::string mm = "m=" + std::to_string(m);
        MellinPoly mp = mellin_poly(f, m, m <= 10);
        int sg = functional_sign(mp.poly);
        rep.expect(sg != 0, "functional_equation", mm);
        rep.expect(sg == ((m % 2) ? -1 : 1), "functional_sign_pattern", mm + " sign=" + std::to_string(sg));
        // s = 1/2 + t
        UniPoly pt = mp.poly.compose(UniPoly(std::vector<Rat>{Rat(1, 2), Rat(1)}));
        UniPoly g = sg > 0 ? even_to_sq(pt) : odd_to_sq(pt);
        if (g.degree() < 1) {
            rep.expect(true, "zeros_on_line", mm + " (root at s=1/2 only)");
            continue;
        }
        bool sqf = pgcd(g, g.derivative()).degree() == 0;
        rep.expect(sqf, "squarefree", mm);
        if (!sqf)
            continue;
        int neg = sturm_real_roots(g, std::nullopt, Rat(0));
        bool zero_root = is_zero(g.coeff(0));
        rep.expect(neg == g.degree() && !zero_root, "zeros_on_line",
                   mm + " negative roots " + std::to_string(neg) + "/" + std::to_string(g.degree()));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// closed radical forms and iterated recurrences

inline std::vector<Rat> default_radical_samples()
{
    return {Rat(3), make_rat(5, 2), Rat(7), make_rat(21, 4), Rat(-3), make_rat(-5, 2), Rat(-9)};
}

// exact limit values of the radical forms at the branch points x = 2, -2
inline Rat radical_limit(OrthoFam f, long m, int branch)
{
    if (f == OrthoFam::Q)
        return branch > 0 ? Rat(2) : Rat((m % 2) ? -2 : 2);
    return branch > 0 ? Rat(2 * m + 1) : Rat((m % 2) ? -1 : 1);
}

inline Report radical_form_check(long m, const std::vector<Rat>& samples = default_radical_samples(),
                                 mpfr_prec_t prec = 256)
{
    Report rep("radical_forms");
    std::string mm = "m=" + std::to_string(m);
    UniPoly Pm = fam::P(m).compose(poly_from({-2, 1})), Qm = fam::Q(m).compose(poly_from({-2, 1}));
    for (int br : {1, -1}) {
        Rat x(2 * br);
        rep.expect(Pm.eval(x) == radical_limit(OrthoFam::P, m, br), "P_branch_limit", mm + " x=" + to_string(x));
        rep.expect(Qm.eval(x) == radical_limit(OrthoFam::Q, m, br), "Q_branch_limit", mm + " x=" + to_string(x));
    }
    AppReal two(2L, prec), one(1L, prec);
    AppReal scaleP = pow(two, -m - 1), scaleQ = pow(two, -m);
    for (const Rat& xs : samples) {
        if (abs(xs) <= 2)
            throw std::invalid_argument("radical_form_check: samples need |x| > 2");
        std::string where = mm + " x=" + to_string(xs);
        AppReal x(xs, prec);
        // sqrt(x-2) sqrt(x+2) on principal branches, negative for x < -2
        AppReal d = sqrt(AppReal(xs * xs - 4, prec));
        if (xs < 0)
            d = -d;
        AppReal a = sqrt(AppReal((xs + 2) / (xs - 2), prec));
        AppReal lo = pow(x - d, m), hi = pow(x + d, m);
        AppReal pv = scaleP * ((one - a) * lo + (one + a) * hi);
        AppReal qv = scaleQ * (lo + hi);
        rep.expect(pv.contains(Pm.eval(xs)), "P_radical", where);
        rep.expect(qv.contains(Qm.eval(xs)), "Q_radical", where);
    }
    // iterated recurrence, alternating sign in j
    UniPoly xp2 = poly_from({2, 1});
    bool printed_ok = true;
    for (long r = 0; 2 * r <= m; ++r) {
        UniPoly sp, sq, pp, pq;
        for (long j = 0; j <= r; ++j) {
            UniPoly w(Rat(binom(r, j)));
            for (long e = 0; e < r - j; ++e)
                w = w * xp2;
            Rat sj = (j % 2) ? Rat(-1) : Rat(1), sr = (r % 2) ? Rat(-1) : Rat(1);
            sp = sp + w * fam::P(m - r - j) * sj;
            sq = sq + w * fam::Q(m - r - j) * sj;
            pp = pp + w * fam::P(m - r - j) * sr;
            pq = pq + w * fam::Q(m - r - j) * sr;
        }
        std::string where = mm + " r=" + std::to_string(r);
        rep.expect(sp == fam::P(m), "P_iterated", where);
        rep.expect(sq == fam::Q(m), "Q_iterated", where);
        printed_ok = printed_ok && pp == fam::P(m) && pq == fam::Q(m);
    }
    if (!printed_ok)
        rep.note("iterated_printed_sign", "(-1)^r in place of (-1)^j fails for r >= 1");
    return rep;
}

// generating function and derivative relation of Q_m
inline Report q_analytic_checks(long m, const std::vector<Rat>& samples, long terms, mpfr_prec_t prec = 256)
{
    Report rep("q_analytic");
    AppReal one(1L, prec), two(2L, prec);
    for (const Rat& xs : samples) {
        if (xs <= -4 || xs >= 0)
            throw std::invalid_argument("q_analytic_checks: samples in (-4, 0)");
        for (Rat r : {Rat(1, 8), Rat(-1, 8), Rat(1, 5), Rat(0)}) {
            std::string where = "x=" + to_string(xs) + " r=" + to_string(r) + " terms=" + std::to_string(terms);
            Rat part = 0, coef = 1, rp = 1;
            for (long k = 0; k < terms; ++k) {
                part += coef * fam::Q(k).eval(xs) * rp;
                coef *= make_rat(2 * k + 1, 2 * k + 2);
                rp *= r;
            }
            AppReal R = sqrt(AppReal(1 - 2 * r - xs * r + r * r, prec));
            AppReal rr(r, prec);
            AppReal closed = sqrt(one - rr + R) * sqrt(one + rr + R) / R;
            // |(1/2)_k/k! Q_k(x)| <= 2 on [-4, 0]
            Rat ar = abs(r);
            Rat tail = is_zero(ar) ? Rat(0) : 2 * rpow(ar, terms) / (1 - ar);
            AppReal diff = closed - AppReal(part, prec);
            rep.expect(diff.abs_below(tail + rpow(Rat(2), -static_cast<long>(prec) + 20)), "generating_function", where);
        }
        for (long k = 1; k <= m; ++k) {
            AppReal xv(xs, prec);
            AppReal th = acos(one + xv / two);
            AppReal rhs = AppReal(2 * k, prec) * sin(AppReal(k, prec) * th) / sqrt(-(xv * (AppReal(4L, prec) + xv)));
            rep.expect(rhs.contains(fam::Q(k).derivative().eval(xs)), "derivative_relation",
                       "x=" + to_string(xs) + " m=" + std::to_string(k));
        }
    }
    return rep;
}

} // namespace ifib
