#include <ifib/polyfam.hpp>

#include <gtest/gtest.h>

#include <thread>

using namespace ifib;
using namespace ifib::fam;

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

} // namespace

TEST(FamilyPoly, Examples)
{
    EXPECT_EQ(P(2), poly_from({5, 5, 1}));
    EXPECT_EQ(P(3), poly_from({7, 14, 7, 1}));
    EXPECT_EQ(Q(3), poly_from({2, 9, 6, 1}));
    EXPECT_EQ(Theta(7), poly_from({-1, -2, 1, 1}));
    EXPECT_EQ(P(5), poly_from({11, 55, 77, 44, 11, 1}));
    EXPECT_EQ(V(1), poly_from({-1, 1}));
    EXPECT_THROW(family_poly({Fam::FibPoly, 0}), std::out_of_range);
    EXPECT_THROW(family_poly({Fam::P, -1}), std::out_of_range);
}

TEST(FamilyPoly, SmallMinimalPolynomials)
{
    EXPECT_EQ(Psi(1), poly_from({-1, 1}));
    EXPECT_EQ(Psi(2), poly_from({1, 1}));
    EXPECT_EQ(Psi(4), X());
    EXPECT_EQ(Cmin(1), poly_from({2, 1}));
    EXPECT_EQ(Cmin(2), X());
    EXPECT_EQ(Cmin(3), poly_from({-1, 1}));
    EXPECT_EQ(Cmin(6), poly_from({-3, 0, 1}));
    EXPECT_EQ(Theta(5), poly_from({-1, 1, 1}));
    EXPECT_EQ(Q(3), tau(2) * tau(6));
}

TEST(FamilyPoly, DegreesAndLeadingCoefficients)
{
    for (long m = 0; m <= 64; ++m) {
        for (const UniPoly* p : {&P(m), &Q(m), &calP(m), &calQ(m), &V(m)})
            EXPECT_EQ(p->degree(), m);
        EXPECT_EQ(P(m).lead(), 1);
        EXPECT_EQ(calQ(m).lead(), 1);
        EXPECT_EQ(Q(m).lead(), m == 0 ? 2 : 1);
    }
}

TEST(FamilyPoly, ThreeTermRecurrences)
{
    UniPoly x2 = X() + UniPoly(Rat(2));
    EXPECT_EQ(P(0), UniPoly(Rat(1)));
    EXPECT_EQ(P(1), poly_from({3, 1}));
    EXPECT_EQ(Q(0), UniPoly(Rat(2)));
    EXPECT_EQ(Q(1), poly_from({2, 1}));
    for (long m = 1; m <= 64; ++m) {
        EXPECT_EQ(P(m + 1), x2 * P(m) - P(m - 1)) << m;
        EXPECT_EQ(Q(m + 1), x2 * Q(m) - Q(m - 1)) << m;
    }
}

TEST(FamilyPoly, PsiDegreeIsHalfTotient)
{
    for (long n = 1; n <= 120; ++n) {
        long want = n <= 2 ? 1 : totient(n) / 2;
        EXPECT_EQ(Psi(n).degree(), want) << n;
    }
}

TEST(FamilyPoly, PsiVanishesAtPrimitiveCosines)
{
    // oracle: Psi_n(cos(2 pi k/n)) = 0 exactly when gcd(k, n) = 1
    for (long n = 3; n <= 40; ++n)
        for (long k = 1; k <= n / 2; ++k) {
            AppReal c = cos_shift_approx(n, k, TrigKind::cos2pi, 160) / AppReal(2L, 160);
            bool z = eval(Psi(n), c).contains_zero();
            EXPECT_EQ(z, std::gcd(n, k) == 1) << n << " " << k;
        }
}

TEST(FamilyPoly, VReflection)
{
    for (long m = 0; m <= 64; ++m) {
        Rat sg = (m % 2) ? Rat(-1) : Rat(1);
        EXPECT_EQ(V(m), sg * P(m).compose(poly_from({-2, -1})));
    }
}

TEST(FamilyPoly, ConcurrentAccessIsConsistent)
{
    std::vector<UniPoly> got(8);
    std::vector<std::thread> ts;
    for (int i = 0; i < 8; ++i)
        ts.emplace_back([&got, i] { got[i] = family_poly({Fam::PsiMin, 90 + i % 3}); });
    for (auto& t : ts)
        t.join();
    for (int i = 0; i < 8; ++i)
        EXPECT_EQ(got[i], Psi(90 + i % 3));
}

TEST(LucasChebyshevForms, Examples)
{
    EXPECT_EQ(P(1), poly_from({3, 1}));
    EXPECT_EQ(Q(2), poly_from({2, 4, 1}));
    expect_pass(theorem1_suite(1));
    expect_pass(theorem1_suite(2));
    expect_pass(theorem1_suite(5));
}

TEST(LucasChebyshevForms, Sweep)
{
    for (long m = 0; m <= 32; ++m)
        expect_pass(theorem1_suite(m));
}

TEST(LucasChebyshevForms, PrintedFormsReported)
{
    auto r = theorem1_suite(1);
    EXPECT_TRUE(has_note(r, "V_shift_P"));
    EXPECT_TRUE(has_note(r, "Q_roots_odd_denominator"));
    EXPECT_TRUE(has_note(theorem1_suite(2), "Q_roots_odd_denominator"));
}

TEST(DerivedFamilyForms, Examples)
{
    EXPECT_EQ(P(2) - P(1), poly_from({2, 4, 1}));
    EXPECT_TRUE((Rat(7) * calP(3) - P(3) - Rat(2) * X() * P(3).derivative()).zero());
    expect_pass(corollary1_suite(2));
}

TEST(DerivedFamilyForms, Sweep)
{
    for (long m = 1; m <= 32; ++m)
        expect_pass(corollary1_suite(m));
}

TEST(DerivedFamilyForms, PrintedFormsReported)
{
    auto r = corollary1_suite(1);
    EXPECT_TRUE(has_note(r, "calQ_parity_cases"));
    EXPECT_TRUE(has_note(r, "calPQ_difference_swapped"));
}

TEST(MinPoly, Examples)
{
    auto d = divrem(shift(Q(3), Rat(-2)), Cmin(6));
    EXPECT_EQ(d.quot, X());
    EXPECT_TRUE(d.rem.zero());
    EXPECT_EQ(shift(Q(3), Rat(-2)), poly_from({0, -3, 0, 1}));
    EXPECT_EQ(shift(P(3), Rat(-2)), Theta(7));
    expect_pass(minpoly_suite(3));
}

TEST(MinPoly, CalQ223Factorization)
{
    UniPoly rhs = P(3) * calP(3) * Q(7) * Q(14) * Q(28) * Q(56) * Q(112);
    EXPECT_EQ(calQ(223), rhs);
    auto r = minpoly_suite(223);
    expect_pass(r);
    EXPECT_TRUE(has_note(r, "calQ_odd_chain_range"));
}

TEST(MinPoly, Sweep)
{
    for (long m = 1; m <= 32; ++m)
        expect_pass(minpoly_suite(m));
}

TEST(SpecialValues, Examples)
{
    EXPECT_EQ(Q(2).eval(Rat(1)), 7);
    EXPECT_EQ(P(2).eval(Rat(0)), 5);
    EXPECT_EQ(P(1).eval(Rat(-4)), -1);
    expect_pass(special_values_suite(40));
}

TEST(Classic, Examples)
{
    GaussRat v = S(6).eval(GaussRat::i()) / GaussRat::i().pow(6);
    EXPECT_EQ(v, GaussRat(Rat(13)));
    auto F = fibonacci_numbers(20);
    EXPECT_EQ(igcd(F[12], F[18]), 8);
    EXPECT_EQ(F[4] * F[2] - F[3] * F[3], -1);
    expect_pass(classic_identity_suite(60));
}

TEST(Classic, KroneckerSymbol)
{
    EXPECT_EQ(kronecker5(2), -1);
    EXPECT_EQ(kronecker5(3), -1);
    EXPECT_EQ(kronecker5(5), 0);
    EXPECT_EQ(kronecker5(11), 1);
    EXPECT_EQ(kronecker5(19), 1);
}

TEST(GeneratingFunctions, PAndQ)
{
    auto r = gf_check_PQ(30);
    expect_pass(r);
    BiPoly den(std::vector<UniPoly>{UniPoly(Rat(1)), -(X() + UniPoly(Rat(2))), UniPoly(Rat(1))});
    BiPoly num(std::vector<UniPoly>{UniPoly(Rat(1)), UniPoly(Rat(1))});
    EXPECT_EQ(series_div(num, den, 2)[1], poly_from({3, 1}));
}
