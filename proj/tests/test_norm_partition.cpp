#include "doctest.h"

#include <sstream>

#include "exhyp/norm_partition.hpp"
#include "test_support.hpp"

using namespace exhyp;
using exhyp::test::naive_cover_check;

namespace {

std::uint64_t fact(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t cover_bound(int s, std::uint64_t h) {
    std::uint64_t b = fact(s - 1);
    for (int i = 0; i < s - 1; ++i) b *= h;
    return b;
}

} // namespace

TEST_CASE("norm family shapes and union edge counts") {
    auto f1 = build_norm_partition(2, 2, 5);
    CHECK(f1.side_size() == 5);
    CHECK(f1.class_count() == 2);
    CHECK(f1.union_edge_count() == 20);

    auto f2 = build_norm_partition(2, 1, 3);
    CHECK(f2.class_count() == 2);
    CHECK(f2.union_edge_count() == 6);
    auto sizes = f2.class_sizes();
    CHECK(sizes[1] == 3);
    CHECK(sizes[2] == 3);

    auto f3 = build_norm_partition(3, 3, 7);
    CHECK(f3.side_size() == 49);
    CHECK(f3.class_count() == 2);
    CHECK(f3.union_edge_count() == 49 * 49 - 49);
}

TEST_CASE("s=2, h=1, p=3: the norm is the identity, colors follow x+y") {
    auto fam = build_norm_partition(2, 1, 3);
    const auto& cosets = fam.cosets();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            int sum = (a + b) % 3;
            if (sum == 0)
                CHECK(fam.color_at(a, b) == 0);
            else
                CHECK(cosets.cosets[fam.color_at(a, b) - 1] ==
                      std::vector<std::uint64_t>{static_cast<std::uint64_t>(sum)});
        }
}

TEST_CASE("non-edges are exactly the pairs with x + y = 0") {
    // the last entry runs at side 1021, just under the 2^10 sweep scale
    for (auto [s, h, p] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 2, 5},
                           {2, 1, 7},
                           {3, 2, 5},
                           {3, 3, 7},
                           {2, 3, 31},
                           {2, 4, 1021}}) {
        auto fam = build_norm_partition(s, h, p);
        const auto& field = fam.field();
        for (int a = 0; a < fam.side_size(); ++a) {
            std::uint64_t neg = field.index_of(field.neg(field.element(a)));
            for (int b = 0; b < fam.side_size(); ++b) {
                bool zero_sum = static_cast<std::uint64_t>(b) == neg;
                CHECK((fam.color_at(a, b) == 0) == zero_sum);
            }
        }
    }
}

TEST_CASE("all color classes have equal size") {
    for (auto [s, h, p] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 2, 5},
                           {2, 3, 7},
                           {3, 2, 5},
                           {3, 3, 7},
                           {2, 4, 13}}) {
        auto fam = build_norm_partition(s, h, p);
        auto sizes = fam.class_sizes();
        std::uint64_t expect = fam.union_edge_count() / fam.class_count();
        for (int c = 1; c <= fam.class_count(); ++c) CHECK(sizes[c] == expect);
    }
}

TEST_CASE("cover property passes at the h^(s-1)(s-1)! bound") {
    for (auto [s, h, p] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 1, 3},
                           {2, 2, 5},
                           {2, 3, 7},
                           {3, 1, 3},
                           {3, 2, 5},
                           {3, 3, 7}}) {
        auto fam = build_norm_partition(s, h, p);
        auto verdict = verify_cover_property(fam, s, static_cast<long long>(cover_bound(s, h)));
        CHECK(verdict.pass);
        CHECK(naive_cover_check(fam, s, static_cast<long long>(cover_bound(s, h))));
    }
}

TEST_CASE("cover property fails at bound 0 with a witness") {
    auto fam = build_norm_partition(2, 2, 5);
    auto verdict = verify_cover_property(fam, 2, 0);
    CHECK(!verdict.pass);
    REQUIRE(verdict.violation.has_value());
    CHECK(verdict.violation->count > 0);
    CHECK(verdict.violation->color >= 1);
    CHECK(!naive_cover_check(fam, 2, 0));

    // lexicographically smallest violating witness: side A, first pair
    CHECK(verdict.violation->side == 0);
}

TEST_CASE("cover verdicts agree with the naive oracle across bounds") {
    auto fam = build_norm_partition(2, 3, 7);
    for (long long bound = 0; bound <= 4; ++bound) {
        auto verdict = verify_cover_property(fam, 2, bound);
        CHECK(verdict.pass == naive_cover_check(fam, 2, bound));
    }
}

TEST_CASE("parallel cover verification is deterministic") {
    auto fam = build_norm_partition(3, 2, 5);
    auto one = verify_cover_property(fam, 3, 0, 1);
    auto four = verify_cover_property(fam, 3, 0, 4);
    REQUIRE(one.violation.has_value());
    REQUIRE(four.violation.has_value());
    CHECK(one.violation->side == four.violation->side);
    CHECK(one.violation->xs == four.violation->xs);
    CHECK(one.violation->count == four.violation->count);
    CHECK(one.worst.xs == four.worst.xs);
    CHECK(one.worst.count == four.worst.count);
}

TEST_CASE("krs: prime field systems have exactly one solution") {
    FieldSpec f = make_field(11, 1);
    for (std::uint64_t a = 0; a < 11; ++a)
        for (std::uint64_t b = 1; b < 11; ++b)
            CHECK(krs_solution_count(f, {f.element(a)}, {b}) == 1);
}

TEST_CASE("krs solution bound over GF(9), full sweep") {
    FieldSpec f = make_field(3, 2);
    std::uint64_t mx = 0;
    for (std::uint64_t a1 = 0; a1 < 9; ++a1)
        for (std::uint64_t a2 = 0; a2 < 9; ++a2) {
            if (a1 == a2) continue;
            for (std::uint64_t b1 = 1; b1 < 3; ++b1)
                for (std::uint64_t b2 = 1; b2 < 3; ++b2) {
                    std::uint64_t c =
                        krs_solution_count(f, {f.element(a1), f.element(a2)}, {b1, b2});
                    mx = std::max(mx, c);
                }
        }
    CHECK(mx <= 2);
    CHECK(krs_exhaustive_max(f) == mx);
}

TEST_CASE("krs rejects duplicate shifts") {
    FieldSpec f = make_field(3, 2);
    try {
        krs_solution_count(f, {f.element(4), f.element(4)}, {1, 2});
        FAIL("expected DuplicateShift");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateShift);
    }
}

TEST_CASE("ebf format round-trips bit-exactly") {
    auto fam = build_norm_partition(2, 2, 5);
    std::ostringstream out;
    write_ebf(out, fam);
    std::istringstream in(out.str());
    auto back = read_ebf(in, "mem");
    CHECK(back.side_size() == fam.side_size());
    CHECK(back.class_count() == fam.class_count());
    CHECK(back.s() == fam.s());
    CHECK(back.h() == fam.h());
    CHECK(back.p() == fam.p());
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) CHECK(back.color_at(a, b) == fam.color_at(a, b));
    std::ostringstream again;
    write_ebf(again, back);
    CHECK(again.str() == out.str());

    // header example from the construction: ebf 5 2 2 2 5
    CHECK(out.str().substr(0, out.str().find('\n')) == "ebf 5 2 2 2 5");
}

TEST_CASE("ebf parser rejects malformed input") {
    auto expect_fail = [](const std::string& text, const std::string& where) {
        std::istringstream in(text);
        try {
            read_ebf(in, "f.ebf");
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Io);
            CHECK(std::string(e.what()).find(where) != std::string::npos);
        }
    };
    expect_fail("abc 2 1 2 1 3\n", "f.ebf:1");
    expect_fail("ebf 2 1 2 1 3\n0 1\n", "f.ebf:3");      // missing row
    expect_fail("ebf 2 1 2 1 3\n0 1\n0 2\n", "f.ebf:3"); // color out of range
    expect_fail("ebf 2 1 2 1 3\n0 1 1\n0 1\n", "f.ebf:2");
}

TEST_CASE("build rejects inconsistent parameters") {
    try {
        build_norm_partition(2, 3, 5);
        FAIL("expected NotDivisor");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisor);
    }
    try {
        build_norm_partition(2, 2, 9);
        FAIL("expected NotPrime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrime);
    }
    CHECK_THROWS_AS(build_norm_partition(1, 1, 5), Error);
}
