#include <ifib/minors.hpp>

#include <gtest/gtest.h>

#include <future>

using namespace ifib;

namespace {

std::vector<Rat> rats(std::initializer_list<Rat> l) { return std::vector<Rat>(l); }

void expect_pass(const Report& r)
{
    for (const auto& c : r.checks)
        EXPECT_NE(c.status, Status::fail) << r.name << ": " << c.tag << " " << c.detail;
}

std::string note_of(const Report& r, const std::string& tag)
{
    for (const auto& c : r.checks)
        if (c.status == Status::finding && c.tag == tag)
            return c.detail;
    return {};
}

// smallest L whose Hankel system is consistent on the whole window, solved by inversion
std::optional<std::vector<Rat>> hankel_fit(const std::vector<Rat>& s, long max_order)
{
    auto n = static_cast<long>(s.size());
    for (long L = 0; L <= max_order; ++L) {
        std::vector<Rat> c;
        if (L > 0) {
            RatMat H(static_cast<std::size_t>(L), static_cast<std::size_t>(L));
            for (long a = 0; a < L; ++a)
                for (long b = 0; b < L; ++b)
                    H(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = s[static_cast<std::size_t>(a + L - 1 - b)];
            if (is_zero(det(H)))
                continue;
            RatMat Hi = inverse(H);
            for (long a = 0; a < L; ++a) {
                Rat v = 0;
                for (long b = 0; b < L; ++b)
                    v += Hi(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) * s[static_cast<std::size_t>(b + L)];
                c.push_back(v);
            }
        }
        bool ok = true;
        for (long t = L; t < n && ok; ++t) {
            Rat v = 0;
            for (long k = 1; k <= L; ++k)
                v += c[static_cast<std::size_t>(k - 1)] * s[static_cast<std::size_t>(t - k)];
            ok = v == s[static_cast<std::size_t>(t)];
        }
        if (ok)
            return c;
    }
    return std::nullopt;
}

} // namespace

TEST(MinorSeq, Examples)
{
    EXPECT_EQ(minor_seq(2, 2, SeqFam::F, 1, 3).values, rats({Rat(-1), make_rat(-1, 5), make_rat(-1, 25)}));
    EXPECT_EQ(minor_seq(2, 1, SeqFam::F, 1, 3).values, rats({Rat(2), Rat(-1), make_rat(3, 5)}));
    auto v = minor_seq(3, 3, SeqFam::F, 1, 2).values;
    EXPECT_EQ(v[1] / v[0], make_rat(-1, 7));
    // hand 2x2 window
    for (long l = -3; l <= 6; ++l)
        EXPECT_EQ(minor_at(4, {2, 4}, SeqFam::G, l), G(4, 2, l) * G(4, 4, l + 1) - G(4, 2, l + 1) * G(4, 4, l));
    EXPECT_EQ(minor_seq_rows(5, {1, 3}, SeqFam::F, 2, 4).values.size(), 4u);
    EXPECT_THROW(minor_seq(3, 4, SeqFam::F, 1, 2), std::invalid_argument);
    EXPECT_THROW(minor_seq(3, 1, SeqFam::F, 1, 0), std::invalid_argument);
    EXPECT_THROW(minor_seq_rows(3, {1, 5}, SeqFam::F, 1, 2), std::invalid_argument);
}

TEST(FitRecurrence, Examples)
{
    std::vector<Rat> geo;
    Rat t = 1;
    for (int k = 0; k < 8; ++k, t /= 5)
        geo.push_back(t);
    EXPECT_EQ(fit_recurrence(geo, 2), poly_from({0, 1}) - UniPoly(make_rat(1, 5)));
    EXPECT_EQ(fit_recurrence(minor_seq(2, 2, SeqFam::F, 1, 8).values, 1), poly_from({0, 1}) - UniPoly(make_rat(1, 5)));
    std::vector<Rat> fib{0, 1};
    for (int k = 0; k < 12; ++k)
        fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    EXPECT_EQ(fit_recurrence(fib, 3), poly_from({-1, -1, 1}));
    EXPECT_THROW(fit_recurrence(fib, 6), std::invalid_argument);
    // 1, 2, 4, 8 then break: nothing short fits
    std::vector<Rat> odd{1, 2, 4, 8, 16, 32, 64, 128, 256, 1};
    EXPECT_FALSE(try_fit_recurrence(odd, 3).has_value());
    EXPECT_THROW(fit_recurrence(odd, 3), std::runtime_error);

    auto ch = minor_order_check(5, 2).charpoly;
    EXPECT_EQ(recurrence_list(ch),
              rats({Rat(7), Rat(-19), make_rat(292, 11), make_rat(-233, 11), make_rat(1223, 121), make_rat(-356, 121),
                    make_rat(63, 121), make_rat(-72, 1331), make_rat(4, 1331), make_rat(-1, 14641)}));
}

TEST(FitRecurrence, AgreesWithHankelSolve)
{
    for (long m = 1; m <= 5; ++m)
        for (long i = 1; i <= m; ++i)
            for (SeqFam f : {SeqFam::F, SeqFam::G}) {
                long b = binom(m, i).get_si();
                auto s = minor_seq(m, i, f, 0, 2 * b + 8).values;
                auto h = hankel_fit(s, b);
                ASSERT_TRUE(h.has_value()) << m << "," << i;
                EXPECT_EQ(recurrence_list(fit_recurrence(s, b)), *h) << m << "," << i;
            }
}

TEST(MinorOrder, PrintedLists)
{
    std::vector<std::vector<Rat>> lists{
        {Rat(-5), Rat(-7), Rat(-4), Rat(-1), make_rat(-1, 11)},
        {Rat(7), Rat(-19), make_rat(292, 11), make_rat(-233, 11), make_rat(1223, 121), make_rat(-356, 121),
         make_rat(63, 121), make_rat(-72, 1331), make_rat(4, 1331), make_rat(-1, 14641)},
        {Rat(-4), make_rat(-72, 11), make_rat(-63, 11), make_rat(-356, 121), make_rat(-1223, 1331),
         make_rat(-233, 1331), make_rat(-292, 14641), make_rat(-19, 14641), make_rat(-7, 161051),
         make_rat(-1, 1771561)},
        {Rat(1), make_rat(-4, 11), make_rat(7, 121), make_rat(-5, 1331), make_rat(1, 14641)},
        {make_rat(-1, 11)}};
    for (long i = 1; i <= 5; ++i) {
        MinorOrder r = minor_order_check(5, i);
        expect_pass(r.report);
        EXPECT_EQ(recurrence_list(r.charpoly), lists[static_cast<std::size_t>(i - 1)]) << "i=" << i;
    }
    // first list is -h_k
    for (long k = 1; k <= 5; ++k)
        EXPECT_EQ(lists[0][static_cast<std::size_t>(k - 1)], -h_coeff(5, k));
}

TEST(MinorOrder, Sweep)
{
    std::vector<std::future<MinorOrder>> jobs;
    std::vector<std::pair<long, long>> keys;
    for (long m = 1; m <= 6; ++m)
        for (long i = 1; i <= m; ++i)
            for (SeqFam f : {SeqFam::F, SeqFam::G}) {
                keys.push_back({m, i});
                jobs.push_back(std::async(std::launch::async, [m, i, f] { return minor_order_check(m, i, f); }));
            }
    for (std::size_t a = 0; a < jobs.size(); ++a) {
        MinorOrder r = jobs[a].get();
        expect_pass(r.report);
        EXPECT_LE(r.order, r.bound);
        EXPECT_EQ(r.order, r.bound) << keys[a].first << "," << keys[a].second;
    }
    MinorOrder r42 = minor_order_check(4, 2);
    EXPECT_LE(r42.order, 6);
    EXPECT_THROW(minor_order_check(7, 2), std::invalid_argument);
}

TEST(MinorInvariants, Exact)
{
    for (long m = 1; m <= 6; ++m)
        expect_pass(minor_invariants(m, 1, 20).report);
    EXPECT_EQ(minor_invariants(2, 1, 20).max_c, Rat(2));
}

TEST(MinorConjecture, Findings)
{
    // conjectured polynomial at m = 5 is the fourth printed list
    UniPoly c5 = mminus1_conjectured(5);
    EXPECT_EQ(recurrence_list(c5), rats({Rat(1), make_rat(-4, 11), make_rat(7, 121), make_rat(-5, 1331), make_rat(1, 14641)}));
    for (long m = 3; m <= 7; ++m) {
        Report r = mminus1_conjecture_check(m);
        EXPECT_TRUE(r.ok());
        EXPECT_EQ(r.count(Status::fail), 0u);
        EXPECT_FALSE(note_of(r, "conjectured_polynomial").empty());
        EXPECT_EQ(note_of(r, "eigenproduct_factorization").empty(), m % 2 == 0);
    }
    EXPECT_THROW(mminus1_conjecture_check(2), std::invalid_argument);
}
