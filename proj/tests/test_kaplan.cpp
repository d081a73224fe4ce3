#include <doctest.h>

#include "cyclo/kaplan.hpp"
#include "cyclo/oracle.hpp"

using namespace cyclo;

TEST_CASE("f_map examples") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    CHECK(ctx.r_inv == 13);
    CHECK(f_map(ctx, 7, 0) == 1);   // 13*7 mod 15
    CHECK(f_map(ctx, 7, 1) == 3);   // 13*6 mod 15
    CHECK(f_map(ctx, 7, 7) == 0);   // m = k
    CHECK_THROWS_AS(f_map(ctx, -1, 0), OutOfRange);
}

TEST_CASE("b_value examples") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    CHECK(b_value(ctx, 7, 0) == 1);    // constant term, 0 <= k
    CHECK(b_value(ctx, 7, 1) == -1);   // 7*1 <= 7 and a_15(1) = -1
    CHECK(b_value(ctx, 7, 3) == 0);    // 7*3 > 7
    CHECK_THROWS_AS(b_value(ctx, 7, 15), OutOfRange);
}

TEST_CASE("a_pqr examples") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    std::vector<Int> oracle = phi_coeffs(105);
    CHECK(a_pqr(ctx, 7) == -2);
    CHECK(a_pqr(ctx, 0) == 1);
    CHECK(a_pqr(ctx, 24) == oracle[24]);  // palindromic midpoint
    CHECK(a_pqr(ctx, 48) == oracle[48]);
    CHECK(a_pqr(ctx, 49) == 0);           // beyond the degree
    CHECK(a_pqr(ctx, 106) == 0);
}

TEST_CASE("a_pqr equals the dense oracle on sample triples, all k") {
    for (auto [p, q, r] : {std::tuple<Int, Int, Int>{3, 5, 7},
                           std::tuple<Int, Int, Int>{3, 5, 11},
                           std::tuple<Int, Int, Int>{3, 7, 11},
                           std::tuple<Int, Int, Int>{5, 7, 11}}) {
        KaplanContext ctx = make_kaplan_context(p, q, r);
        std::vector<Int> oracle = phi_coeffs(p * q * r);
        for (std::size_t k = 0; k < oracle.size(); ++k)
            if (a_pqr(ctx, static_cast<Wide>(k)) != oracle[k])
                FAIL("Kaplan/oracle mismatch for (", p, ",", q, ",", r, ") at k = ", k);
    }
}

TEST_CASE("coefficient_set on (3,5,7)") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    CoefficientSet set = coefficient_set(ctx);
    CHECK(set.values == std::vector<int>{-2, -1, 0, 1});
    CHECK(set.min == -2);
    CHECK(set.max == 1);
    CHECK(set.height == 2);
    CHECK(set.values.size() == 4);  // p + 1 distinct values
    CHECK(set.argmax == 0);         // a(0) = 1 is already maximal
    CHECK(a_pqr(ctx, set.argmin) == -2);
    CHECK(set.full_scan);
}

TEST_CASE("coefficient_set matches the oracle's distinct values on (3,5,11)") {
    KaplanContext ctx = make_kaplan_context(3, 5, 11);
    CoefficientSet set = coefficient_set(ctx);
    std::vector<Int> oracle = phi_coeffs(165);
    std::vector<int> distinct;
    for (Int c : oracle)
        if (std::find(distinct.begin(), distinct.end(), static_cast<int>(c)) == distinct.end())
            distinct.push_back(static_cast<int>(c));
    std::sort(distinct.begin(), distinct.end());
    CHECK(set.values == distinct);
}

TEST_CASE("coefficient_set is independent of the worker count") {
    KaplanContext ctx = make_kaplan_context(3, 5, 11);
    ScanOptions one, four;
    one.workers = 1;
    four.workers = 4;
    CoefficientSet a = coefficient_set(ctx, one);
    CoefficientSet b = coefficient_set(ctx, four);
    CHECK(a.values == b.values);
    CHECK(a.argmin == b.argmin);
    CHECK(a.argmax == b.argmax);
}

TEST_CASE("coefficient_set budget") {
    KaplanContext ctx = make_kaplan_context(3, 5, 11);
    ScanOptions options;
    options.budget = 10;
    CHECK_THROWS_AS(coefficient_set(ctx, options), ScanTooLarge);
}

TEST_CASE("early exit needs a span-p prediction and returns the exact set") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    ScanOptions options;
    options.early_exit = std::make_pair(-2, 1);  // span 3 = p: armed
    CHECK(coefficient_set(ctx, options).values == std::vector<int>{-2, -1, 0, 1});
    options.early_exit = std::make_pair(-3, 1);  // span 4 != p: ignored, full scan
    CoefficientSet full = coefficient_set(ctx, options);
    CHECK(full.full_scan);
    CHECK(full.values == std::vector<int>{-2, -1, 0, 1});
}

TEST_CASE("flip_partner on (3,5,17)") {
    KaplanContext ctx = make_kaplan_context(3, 5, 17);
    FlipPartner flip = flip_partner(ctx);
    CHECK(flip.s == 43);  // smallest prime > 15 congruent to -17 = 13 (mod 15)
    REQUIRE(flip.verified.has_value());
    CHECK(*flip.verified);
    REQUIRE(flip.set_r.has_value());
    REQUIRE(flip.set_s.has_value());
    CHECK(flip.set_s->min == -flip.set_r->max);
    CHECK(flip.set_s->max == -flip.set_r->min);
}

TEST_CASE("flip_partner flipped twice lands back on the original class") {
    KaplanContext ctx = make_kaplan_context(3, 5, 17);
    FlipPartner once = flip_partner(ctx);
    KaplanContext ctx_s = make_kaplan_context(3, 5, once.s);
    FlipPartner twice = flip_partner(ctx_s);
    CHECK(twice.s % 15 == 17 % 15);
    REQUIRE(twice.verified.has_value());
    CHECK(*twice.verified);
    CHECK(twice.set_s->values == once.set_r->values);
}

TEST_CASE("flip_partner requires r > pq") {
    KaplanContext ctx = make_kaplan_context(3, 5, 7);
    CHECK_THROWS_AS(flip_partner(ctx), PreconditionViolated);
}

TEST_CASE("flip_partner skips verification when the scan exceeds the budget") {
    KaplanContext ctx = make_kaplan_context(3, 5, 17);
    ScanOptions options;
    options.budget = 10;
    FlipPartner flip = flip_partner(ctx, options);
    CHECK(flip.s == 43);
    CHECK_FALSE(flip.verified.has_value());
}
