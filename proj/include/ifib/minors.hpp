#pragma once

#include "appreal.hpp"
#include "matrix.hpp"
#include "polyfam.hpp"
#include "report.hpp"
#include "sequences.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifib {

struct MinorSeq {
    long m = 0;
    long i = 0;
    SeqFam family = SeqFam::F;
    long start = 0;
    std::vector<long> rows; // 1-based j indices
    std::vector<Rat> values;
};

inline Rat minor_at(long m, const std::vector<long>& rows, SeqFam family, long l)
{
    auto n = rows.size();
    RatMat W(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
            W(a, c) = seq_term({family, m, rows[a]}, l + static_cast<long>(c));
    return det(W);
}

inline MinorSeq minor_seq_rows(long m, const std::vector<long>& rows, SeqFam family, long l0, long count)
{
    if (rows.empty() || static_cast<long>(rows.size()) > m)
        throw std::invalid_argument("minor_seq: need 1 <= i <= m rows");
    for (long j : rows)
        if (j < 1 || j > m)
            throw std::invalid_argument("minor_seq: row out of range");
    if (count < 1)
        throw std::invalid_argument("minor_seq: count >= 1");
    if (family != SeqFam::F && family != SeqFam::G)
        throw std::invalid_argument("minor_seq: family F or G");
    MinorSeq s;
    s.m = m;
    s.i = static_cast<long>(rows.size());
    s.family = family;
    s.start = l0;
    s.rows = rows;
    for (long l = l0; l < l0 + count; ++l)
        s.values.push_back(minor_at(m, rows, family, l));
    return s;
}

inline MinorSeq minor_seq(long m, long i, SeqFam family, long l0, long count)
{
    if (i < 1 || i > m)
        throw std::invalid_argument("minor_seq: need 1 <= i <= m");
    std::vector<long> rows;
    for (long j = 1; j <= i; ++j)
        rows.push_back(j);
    return minor_seq_rows(m, rows, family, l0, count);
}

// shortest c with s[n] = sum_k c_k s[n-k]; returned as x^L - sum c_k x^(L-k)
inline UniPoly minimal_generator(const std::vector<Rat>& s)
{
    std::vector<Rat> C{Rat(1)}, B{Rat(1)};
    std::size_t L = 0, shift = 1;
    Rat b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rat d = s[n];
        for (std::size_t k = 1; k <= L; ++k)
            d += C[k] * s[n - k];
        if (is_zero(d)) {
            ++shift;
            continue;
        }
        std::vector<Rat> T = C;
        Rat coef = d / b;
        if (C.size() < B.size() + shift)
            C.resize(B.size() + shift, Rat(0));
        for (std::size_t k = 0; k < B.size(); ++k)
            C[k + shift] -= coef * B[k];
        if (2 * L <= n) {
            L = n + 1 - L;
            B = T;
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    C.resize(L + 1, Rat(0));
    // C(z) = 1 + C_1 z + ... ; characteristic polynomial is its reversal
    std::vector<Rat> ch(L + 1);
    for (std::size_t k = 0; k <= L; ++k)
        ch[L - k] = C[k];
    return UniPoly(ch);
}

inline bool annihilates(const UniPoly& ch, const std::vector<Rat>& s)
{
    long L = ch.degree();
    for (long n = L; n < static_cast<long>(s.size()); ++n) {
        Rat acc = 0;
        for (long k = 0; k <= L; ++k)
            acc += ch.coeff(static_cast<std::size_t>(k)) * s[static_cast<std::size_t>(n - L + k)];
        if (!is_zero(acc))
            return false;
    }
    return true;
}

// recurrence list c_1..c_L as printed: s[n] = sum c_k s[n-k]
inline std::vector<Rat> recurrence_list(const UniPoly& ch)
{
    std::vector<Rat> c;
    long L = ch.degree();
    for (long k = 1; k <= L; ++k)
        c.push_back(-ch.coeff(static_cast<std::size_t>(L - k)));
    return c;
}

inline std::optional<UniPoly> try_fit_recurrence(const std::vector<Rat>& seq, long max_order)
{
    if (max_order < 0 || static_cast<long>(seq.size()) < 2 * max_order + 4)
        throw std::invalid_argument("fit_recurrence: need length >= 2*max_order + 4");
    UniPoly ch = minimal_generator(seq);
    if (ch.degree() > max_order || !annihilates(ch, seq))
        return std::nullopt;
    return ch;
}

inline UniPoly fit_recurrence(const std::vector<Rat>& seq, long max_order)
{
    auto ch = try_fit_recurrence(seq, max_order);
    if (!ch)
        throw std::runtime_error("fit_recurrence: no recurrence of order <= " + std::to_string(max_order));
    return *ch;
}

namespace detail {

inline AppReal horner(const UniPoly& p, const AppReal& x, mpfr_prec_t prec)
{
    AppReal v(0L, prec);
    for (long k = p.degree(); k >= 0; --k)
        v = v * x + AppReal(p.coeff(static_cast<std::size_t>(k)), prec);
    return v;
}

inline bool disjoint(const AppReal& a, const AppReal& b) { return !(a - b).contains_zero(); }

// products of i-subsets of {1/mu_{m,t}}
inline std::vector<AppReal> subset_products(long m, long i, mpfr_prec_t prec)
{
    std::vector<AppReal> ev;
    for (long t = 1; t <= m; ++t)
        ev.push_back(AppReal(1L, prec) / mu_mk(m, t, prec));
    std::vector<AppReal> out;
    std::vector<long> idx(static_cast<std::size_t>(i));
    for (long a = 0; a < i; ++a)
        idx[static_cast<std::size_t>(a)] = a;
    while (true) {
        AppReal p(1L, prec);
        for (long a : idx)
            p = p * ev[static_cast<std::size_t>(a)];
        out.push_back(p);
        long a = i - 1;
        while (a >= 0 && idx[static_cast<std::size_t>(a)] == m - i + a)
            --a;
        if (a < 0)
            break;
        ++idx[static_cast<std::size_t>(a)];
        for (long b = a + 1; b < i; ++b)
            idx[static_cast<std::size_t>(b)] = idx[static_cast<std::size_t>(b - 1)] + 1;
    }
    return out;
}

} // namespace detail

struct MinorOrder {
    UniPoly charpoly;
    long order = 0;
    long bound = 0;
    Report report;
};

inline MinorOrder minor_order_check(long m, long i, SeqFam family = SeqFam::F, mpfr_prec_t prec = 256)
{
    if (i < 1 || i > m || m > 6)
        throw std::invalid_argument("minor_order_check: need 1 <= i <= m <= 6");
    MinorOrder out;
    out.report = Report("minor_order");
    Report& rep = out.report;
    std::string where = "m=" + std::to_string(m) + " i=" + std::to_string(i) + " " + seq_fam_name(family);
    out.bound = binom(m, i).get_si();
    long len = 2 * out.bound + 6;
    MinorSeq s = minor_seq(m, i, family, 1, len + 20);
    std::vector<Rat> fit(s.values.begin(), s.values.begin() + len), tail(s.values.begin() + len - out.bound - 1, s.values.end());
    auto ch = try_fit_recurrence(fit, out.bound);
    if (!rep.expect(ch.has_value(), "order_bound", where))
        return out;
    out.charpoly = *ch;
    out.order = ch->degree();
    rep.expect(annihilates(*ch, tail), "out_of_sample", where);

    // roots are certified i-subset products of the eigenvalues
    auto cand = detail::subset_products(m, i, prec);
    std::vector<AppReal> hit;
    for (const auto& c : cand) {
        if (!detail::horner(*ch, c, prec).contains_zero())
            continue;
        if (std::none_of(hit.begin(), hit.end(), [&](const AppReal& h) { return (h - c).contains_zero(); }))
            hit.push_back(c);
    }
    bool sep = true;
    for (std::size_t a = 0; a < hit.size(); ++a) {
        sep = sep && hit[a].rad_below_pow2(-64);
        for (std::size_t b = a + 1; b < hit.size(); ++b)
            sep = sep && detail::disjoint(hit[a], hit[b]);
    }
    rep.expect(sep && static_cast<long>(hit.size()) == out.order && pgcd(*ch, ch->derivative()).degree() == 0,
               "roots_subset_products", where);
    return out;
}

// (m-1)-minor polynomial as conjectured, made monic
inline UniPoly mminus1_conjectured(long m)
{
    Rat base = make_rat((m % 2) ? -1 : 1, 2 * m + 1);
    std::vector<Rat> c(static_cast<std::size_t>(m + 1));
    for (long k = 0; k <= m; ++k)
        c[static_cast<std::size_t>(m - k)] = rpow(base, k - 1) * Rat(binom(2 * m - k, k)) / Rat(2 * m + 1 - 2 * k);
    UniPoly p(c);
    return p * (Rat(1) / p.lead());
}

inline Report mminus1_conjecture_check(long m)
{
    if (m < 3 || m > 7)
        throw std::invalid_argument("mminus1_conjecture_check: 3 <= m <= 7");
    Report rep("mminus1_conjecture");
    std::string mm = "m=" + std::to_string(m);
    long bound = m; // C(m, m-1)
    MinorSeq s = minor_seq(m, m - 1, SeqFam::F, 1, 2 * bound + 26);
    auto ch = try_fit_recurrence(s.values, bound);
    if (!ch) {
        rep.note("conjectured_polynomial", mm + " no fit within order " + std::to_string(bound));
        return rep;
    }
    UniPoly conj = mminus1_conjectured(m);
    rep.note("conjectured_polynomial", mm + ((*ch == conj) ? " matches" : " differs: fitted " + to_string(*ch)));
    if (m % 2) {
        // prod (x - (2 - phi_k)/(2m+1)) checked at certified roots
        bool ok = true;
        mpfr_prec_t prec = 256;
        for (long k = 1; k <= m; ++k) {
            AppReal root = (AppReal(2L, prec) - phi_mk(m, k, prec)) / AppReal(2 * m + 1, prec);
            ok = ok && detail::horner(*ch, root, prec).contains_zero();
        }
        rep.note("eigenproduct_factorization", mm + (ok ? " matches" : " differs"));
    }
    return rep;
}

struct MinorInvariants {
    Report report;
    Rat max_c; // empirical sup of |difference| * (F_r^k)^2
};

// exact minor identities: multiplicativity for i = m, 2x2 minors vs convergent differences
inline MinorInvariants minor_invariants(long m, long r_lo, long r_hi)
{
    MinorInvariants out;
    out.report = Report("minor_invariants");
    Report& rep = out.report;
    std::string mm = "m=" + std::to_string(m);
    Rat dr = det(recurrence_matrix(m, Direction::forward));
    Rat want = make_rat((m % 2) ? -1 : 1, 2 * m + 1);
    rep.expect(dr == want, "det_recurrence", mm);
    MinorSeq full = minor_seq(m, m, SeqFam::F, r_lo, r_hi - r_lo + 2);
    bool mult = true;
    for (std::size_t a = 0; a + 1 < full.values.size(); ++a)
        mult = mult && !is_zero(full.values[a]) && full.values[a + 1] / full.values[a] == want;
    rep.expect(mult, "multiplicativity", mm);
    bool cd = true;
    for (long j = 1; j <= m; ++j)
        for (long k = 1; k <= m; ++k) {
            if (j == k)
                continue;
            for (long r = r_lo; r <= r_hi; ++r) {
                Rat fj = F(m, j, r), fj1 = F(m, j, r + 1), fk = F(m, k, r), fk1 = F(m, k, r + 1);
                Rat D = minor_at(m, {j, k}, SeqFam::F, r);
                Rat disp = fj1 * fk - fj * fk1;
                cd = cd && D == -disp;
                if (is_zero(fk) || is_zero(fk1))
                    continue;
                cd = cd && fj1 / fk1 - fj / fk == disp / (fk * fk1);
                Rat c = abs(disp / (fk * fk1)) * fk * fk;
                if (c > out.max_c)
                    out.max_c = c;
            }
        }
    rep.expect(cd, "two_by_two_convergent_difference", mm);
    rep.note("empirical_c", mm + " max " + std::to_string(Rat(out.max_c).get_d()));
    return out;
}

} // namespace ifib
