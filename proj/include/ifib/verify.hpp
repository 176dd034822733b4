#pragma once

#include "convergents.hpp"
#include "minors.hpp"
#include "polyfam.hpp"
#include "sequences.hpp"
#include "spectral.hpp"

#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifib {

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> v{"theorem1", "corollary1", "minpoly",     "classic", "sequences",
                                            "convergence", "spectral", "minors"};
    return v;
}

namespace detail {

inline std::vector<std::function<Report()>> suite_jobs(const std::string& name, long max, mpfr_prec_t prec)
{
    std::vector<std::function<Report()>> jobs;
    if (name == "theorem1") {
        for (long m = 1; m <= max; ++m)
            jobs.push_back([m, prec] { return theorem1_suite(m, prec); });
    } else if (name == "corollary1") {
        for (long m = 1; m <= max; ++m)
            jobs.push_back([m] { return corollary1_suite(m); });
    } else if (name == "minpoly") {
        for (long m = 1; m <= max; ++m)
            jobs.push_back([m] { return minpoly_suite(m); });
        jobs.push_back([max] { return special_values_suite(std::max(max, 2L)); });
    } else if (name == "classic") {
        jobs.push_back([max, prec] { return classic_identity_suite(std::max(10 * max, 10L), prec); });
    } else if (name == "sequences") {
        for (long m = 1; m <= max; ++m) {
            jobs.push_back([m] { return recurrence_suite(m, -10, 20); });
            jobs.push_back([m] { return recombination_suite(m, -10, 10); });
            jobs.push_back([m] { return fleck_suite(m, 10); });
            jobs.push_back([m, prec] { return ratio_lemma_check(m, prec); });
            jobs.push_back([m, prec] { return diag_orthogonality_suite(2 * m + 1, prec); });
            jobs.push_back([m] { return gf_check_seq(m, 20); });
            jobs.push_back([m] { return detproduct_check(m, 4); });
            jobs.push_back([m] {
                Report rep("sum_of_squares");
                for (long r = -5; r <= 5; ++r)
                    rep.merge(sum_of_squares(m, r).report);
                return rep;
            });
            if (m >= 2)
                jobs.push_back([m, prec] { return unlaced_suite(m, 30, prec); });
        }
    } else if (name == "convergence") {
        for (long m = 1; m <= max; ++m)
            jobs.push_back([m, prec] { return convergence_suite(m, 40, Rat(1, 1000), std::max<mpfr_prec_t>(prec, 128)); });
        for (long m = 2; m <= max; ++m)
            jobs.push_back([m] { return residual_suite(m, 10, 30); });
        if (max >= 2)
            jobs.push_back([prec] { return m2_suite(30, std::max<mpfr_prec_t>(prec, 256)); });
    } else if (name == "spectral") {
        for (OrthoFam f : {OrthoFam::P, OrthoFam::Q}) {
            jobs.push_back([f, max] { return three_term_check(f, max); });
            jobs.push_back([f, max] { return ode_check(f, max); });
            jobs.push_back([f, max] { return critical_line_check(f, std::max(max, 1L)); });
            jobs.push_back([f, max] {
                Report rep("orthogonality");
                for (long l = f == OrthoFam::Q ? 1 : 0; l <= max; ++l)
                    for (long k = f == OrthoFam::Q ? 1 : 0; k <= max; ++k)
                        rep.merge(ortho_inner(f, l, k).report);
                return rep;
            });
        }
        jobs.push_back([max] { return cd_check(max); });
        jobs.push_back([max] { return ladder_check(max); });
        jobs.push_back([max] { return quad_identity_check(max); });
        for (long m = 0; m <= max; ++m)
            jobs.push_back([m] { return radical_form_check(m); });
        jobs.push_back([max] { return q_analytic_checks(max, {Rat(-1), make_rat(-7, 2), make_rat(-1, 3)}, 20); });
    } else if (name == "minors") {
        for (long m = 1; m <= std::min(max, 6L); ++m) {
            for (long i = 1; i <= m; ++i)
                for (SeqFam f : {SeqFam::F, SeqFam::G})
                    jobs.push_back([m, i, f] { return minor_order_check(m, i, f).report; });
            jobs.push_back([m] { return minor_invariants(m, 1, 20).report; });
        }
        for (long m = 3; m <= std::min(max, 7L); ++m)
            jobs.push_back([m] { return mminus1_conjecture_check(m); });
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    return jobs;
}

} // namespace detail

// runs the jobs concurrently; reports come back in canonical order
inline std::vector<Report> run_suite(const std::string& name, long max, mpfr_prec_t prec = 128,
                                     const std::function<void(const Report&)>& on_report = {})
{
    if (max < 1)
        throw std::invalid_argument("run_suite: max >= 1");
    std::vector<std::string> names;
    if (name == "all")
        names = suite_names();
    else
        names = {name};
    std::vector<std::function<Report()>> jobs;
    std::vector<std::string> owner;
    for (const auto& n : names)
        for (auto& j : detail::suite_jobs(n, max, prec)) {
            jobs.push_back(std::move(j));
            owner.push_back(n);
        }
    std::vector<std::future<Report>> fut;
    for (auto& j : jobs)
        fut.push_back(std::async(std::launch::async, j));
    std::vector<Report> out;
    for (std::size_t a = 0; a < fut.size(); ++a) {
        Report r = fut[a].get();
        r.name = owner[a] + "/" + r.name;
        if (on_report)
            on_report(r);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace ifib
