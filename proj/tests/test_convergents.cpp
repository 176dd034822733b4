#include <ifib/convergents.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <thread>

using namespace ifib;

namespace {

void expect_pass(const Report& r)
{
    for (const auto& c : r.checks)
        EXPECT_NE(c.status, Status::fail) << r.name << ": " << c.tag << " " << c.detail;
}

bool has_note(const Report& r, const std::string& tag)
{
    for (const auto& c : r.checks)
        if (c.status == Status::finding && c.tag == tag)
            return true;
    return false;
}

Rat Q(const char* s) { return parse_rat(s); }

// 2cos(2 pi k/n) in long double, independent of the ball machinery
long double cos_ld(long k, long n) { return 2.0L * std::cos(2.0L * 3.14159265358979323846264338327950288L * k / n); }

} // namespace

// The printed m=5 vector is reproduced at index 25; at index 20 the
// components have 10-11 digit denominators.
TEST(PsiVector, PrintedExample)
{
    ConvVector v = psi_vector(5, 25);
    std::vector<Rat> want{Q("42951850444254470/25528481467235249"), Q("35685687021511133/42951850444254470"),
                          Q("-4434370056070408/15579436796165461"), Q("-46738310388496383/35685687021511133"),
                          Q("-25528481467235249/13303110168211224")};
    ASSERT_EQ(v.components.size(), 5u);
    for (std::size_t u = 0; u < 5; ++u)
        EXPECT_EQ(v.components[u], want[u]) << "u=" << u + 1;
    EXPECT_NE(psi_vector(5, 20).components[0], want[0]);
    EXPECT_EQ(psi_vector(5, 20).components[0], make_rat(Integer("12736884939"), Integer("7570182140")));
}

TEST(PsiVector, IndexMapM5)
{
    std::vector<PsiPair> want{{4, 5, 1}, {2, 4, 1}, {1, 3, -1}, {3, 2, -1}, {5, 1, -1}};
    for (long u = 1; u <= 5; ++u) {
        PsiPair p = psi_pair(5, u);
        EXPECT_EQ(p.j, want[u - 1].j);
        EXPECT_EQ(p.k, want[u - 1].k);
        EXPECT_EQ(p.sign, want[u - 1].sign);
    }
}

TEST(PsiVector, SmallCases)
{
    EXPECT_EQ(psi_vector(2, 3).components[1], make_rat(-4, 3));
    for (long r = -5; r <= 12; ++r) {
        auto v = psi_vector(1, r);
        ASSERT_EQ(v.components.size(), 1u);
        EXPECT_EQ(v.components[0], Rat(-1));
    }
}

TEST(PsiVector, RatioInvariance)
{
    for (long m = 1; m <= 8; ++m)
        for (long r = 1; r <= 30; ++r) {
            auto a = try_psi_vector(m, r), b = try_psi_vector(m, r, true);
            ASSERT_EQ(a.has_value(), b.has_value());
            if (a) {
                EXPECT_EQ(a->components, b->components) << "m=" << m << " r=" << r;
            }
        }
}

TEST(PsiVector, ZeroDenominatorSkipped)
{
    EXPECT_EQ(F(3, 2, 0), Rat(0));
    // F^(3,2) is a denominator (component 2 for m = 3)
    EXPECT_FALSE(try_psi_vector(3, 0).has_value());
    EXPECT_THROW(psi_vector(3, 0), std::domain_error);
}

TEST(PhiVector, Values)
{
    for (long m : {1L, 2L, 5L, 9L}) {
        LimitVector L = phi_vector(m, 128);
        for (long k = 1; k <= m; ++k) {
            long double x = cos_ld(k, 2 * m + 1);
            EXPECT_NEAR(L.components[k - 1].to_double(), static_cast<double>(x), 1e-15);
            EXPECT_TRUE(L.components[k - 1].rad_below_pow2(-120));
        }
    }
    EXPECT_TRUE(phi_vector(1).components[0].contains(-1));
    LimitVector L2 = phi_vector(2);
    EXPECT_NEAR(L2.components[0].to_double(), (std::sqrt(5.0) - 1) / 2, 1e-15);
    EXPECT_NEAR(L2.components[1].to_double(), -(std::sqrt(5.0) + 1) / 2, 1e-15);
}

TEST(EuclidError, Examples)
{
    EXPECT_TRUE(euclid_error(5, 25).abs_below(Rat(1, 10000000000000)));
    EXPECT_FALSE(euclid_error(5, 25).abs_below(Rat(9, 100000000000000)));
    EXPECT_TRUE(euclid_error(5, 20).abs_below(Rat(1, 10000000000)));
    EXPECT_FALSE(euclid_error(5, 20).abs_below(Rat(1, 10000000000000)));
    for (long r = 1; r <= 8; ++r)
        EXPECT_TRUE(euclid_error(1, r).contains(0));
    // same distance from long double arithmetic
    ConvVector v = psi_vector(5, 25);
    long double s = 0;
    for (long u = 1; u <= 5; ++u) {
        long double d = static_cast<long double>(v.components[u - 1].get_d()) - cos_ld(u, 11);
        s += d * d;
    }
    EXPECT_NEAR(euclid_error(5, 25).to_double(), static_cast<double>(std::sqrt(s)), 1e-15);
}

TEST(EuclidError, M2AgainstSigma)
{
    BoundConstants c = bound_constants(2, 1, 2);
    EXPECT_NEAR(c.sigma2.to_double(), 0.3819660112501051, 1e-15);
    AppReal e = euclid_error(2, 10);
    AppReal b = AppReal(2L, 128) * c.B_jk * sqrt(AppReal(2L, 128)) * pow(abs(c.sigma2), 9);
    EXPECT_TRUE((b - e).positive());
}

TEST(BoundConstants, SigmaForms)
{
    for (long m = 2; m <= 10; ++m) {
        BoundConstants c = bound_constants(m, 1, 2);
        AppReal want = AppReal(1L, 128) / (phi_mk(m, 1, 128) + AppReal(2L, 128));
        EXPECT_TRUE(detail::same_ball(c.sigma2, want)) << "m=" << m;
        EXPECT_FALSE(detail::same_ball(c.sigma2, c.sigma2_printed)) << "m=" << m;
        EXPECT_TRUE(abs(c.sigma2).abs_below(Rat(1)));
    }
}

TEST(BoundConstants, RkMinimal)
{
    for (long m = 2; m <= 7; ++m)
        for (long k = 1; k <= m; ++k) {
            BoundConstants c = bound_constants(m, 1, k);
            long double base = 1.0L / std::fabs(cos_ld(1, 2 * m + 1) + 2);
            long double ak = std::fabs(cos_ld(k, 2 * m + 1) - cos_ld(k - 1, 2 * m + 1));
            long double rhs = ak / (2 * (4 * m - ak));
            EXPECT_LE(std::pow(base, c.r_k), rhs) << "m=" << m << " k=" << k;
            if (c.r_k > 1) {
                EXPECT_GT(std::pow(base, c.r_k - 1), rhs) << "m=" << m << " k=" << k;
            }
        }
}

TEST(BoundConstants, Sweeps)
{
    expect_pass(bound_sweep(2, 1, 2));
    expect_pass(bound_sweep(2, 2, 1));
    expect_pass(bound_sweep(5, 4, 5));
    // deviation of F^(5,4)/F^(5,5) at the printed index stays inside the bound
    BoundConstants c = bound_constants(5, 4, 5, 256);
    AppReal dev = abs(AppReal(F(5, 4, 25) / F(5, 5, 25), 256) - c.a1_ratio);
    EXPECT_TRUE((AppReal(2L, 256) * c.B_jk * pow(abs(c.sigma2), 24) - dev).positive());
    EXPECT_LT(c.r_k, 25);
    for (long m = 3; m <= 6; ++m)
        for (long j = 1; j <= m; ++j)
            for (long k = 1; k <= m; ++k)
                expect_pass(bound_sweep(m, j, k, 20));
}

TEST(Convergence, Suite)
{
    for (long m = 1; m <= 6; ++m)
        expect_pass(convergence_suite(m, 60));
}

TEST(LimitProduct, Examples)
{
    ProductResidual p = limit_product_poly(5, 25);
    EXPECT_LT(p.max_abs, Rat(3, 10000000) / 1000000);
    EXPECT_GT(p.max_abs, Rat(2, 10000000) / 1000000);
    // residual x^1 and x^3 coefficients as printed (two digits)
    EXPECT_NEAR(p.residual.coeff(1).get_d(), -1.48e-13, 0.01e-13);
    EXPECT_NEAR(p.residual.coeff(3).get_d(), -2.96e-13, 0.01e-13);
    EXPECT_NEAR(p.residual.coeff(2).get_d(), 1.10e-20, 0.01e-20);
    EXPECT_EQ(p.residual.coeff(0), Rat(0));
    EXPECT_EQ(p.residual.degree(), 9);
    for (int i = 1; i <= 4; ++i)
        EXPECT_EQ(p.residual.coeff(i), p.residual.coeff(10 - i));
    EXPECT_GT(limit_product_poly(5, 20).max_abs, Rat(1, 10000000000));
    for (long r = 1; r <= 6; ++r)
        EXPECT_TRUE(limit_product_poly(1, r).residual.zero());
    EXPECT_LT(limit_product_poly(2, 30).max_abs, Rat(1, 100000000000));
}

TEST(LimitProduct, Decreasing)
{
    for (long m = 2; m <= 5; ++m)
        expect_pass(residual_suite(m, 10, 40));
}

TEST(CfView, Examples)
{
    EXPECT_EQ(cf_expand(make_rat(5, 3)), (std::vector<Integer>{1, 1, 2}));
    RatioSpec c1{{SeqFam::F, 2, 1}, {SeqFam::F, 2, 1}, 1, true};
    CfView v = cf_view(c1, 8);
    EXPECT_EQ(v.value, make_rat(47, 65));
    expect_pass(v.report);
    EXPECT_GE(v.common_prefix, 3u);
    AppReal lim = ratio_limit(c1, 128);
    AppReal gold = (AppReal(1L, 128) + sqrt(AppReal(5L, 128))) / AppReal(2L, 128);
    EXPECT_TRUE(detail::same_ball(lim, gold / sqrt(AppReal(5L, 128))));
}

TEST(CfView, Stabilization)
{
    RatioSpec c2{{SeqFam::F, 2, 2}, {SeqFam::F, 2, 2}, 1, true};
    expect_pass(cf_stabilization_suite(c2, 1, 30));
    for (long m = 3; m <= 5; ++m)
        for (long u = 1; u <= m; ++u) {
            auto [j, k, sg] = psi_pair(m, u);
            RatioSpec s{{SeqFam::F, m, j}, {SeqFam::F, m, k}, 0, sg < 0};
            Report rep = cf_stabilization_suite(s, 5, 40);
            expect_pass(rep);
            AppReal lim = ratio_limit(s, 128);
            EXPECT_TRUE(detail::same_ball(lim, phi_mk(m, u, 128))) << "m=" << m << " u=" << u;
        }
}

TEST(M2Suite, Passes)
{
    Report r = m2_suite(30);
    expect_pass(r);
    EXPECT_TRUE(has_note(r, "accuracy_printed_scale"));
    EXPECT_TRUE(has_note(r, "gf_second_printed_numerator"));
}

TEST(M2Suite, NumeratorExamples)
{
    EXPECT_EQ(numerator({SeqFam::F, 2, 1}, 5), Integer(7));
    EXPECT_EQ(numerator({SeqFam::F, 2, 2}, 4), Integer(-3));
    EXPECT_EQ(numerator({SeqFam::F, 2, 2}, 6), Integer(-8));
    EXPECT_EQ(numerator({SeqFam::F, 2, 1}, 4) * numerator({SeqFam::F, 2, 2}, 3), Integer(-8));
    EXPECT_THROW(m2_suite(5), std::invalid_argument);
}

TEST(Convergents, Concurrent)
{
    std::vector<std::thread> ts;
    std::vector<Rat> got(8);
    for (int i = 0; i < 8; ++i)
        ts.emplace_back([&got, i] { got[i] = psi_vector(7, 25 + i % 3).components[2]; });
    for (auto& t : ts)
        t.join();
    for (int i = 0; i < 8; ++i)
        EXPECT_EQ(got[i], psi_vector(7, 25 + i % 3).components[2]);
}
