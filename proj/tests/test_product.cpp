#include "doctest.h"

#include <sstream>

#include "exhyp/product.hpp"

using namespace exhyp;

namespace {

// Direct enumeration of e(G(rho)): all k-tuples of colored pairs filtered by
// the residue condition. Independent of the convolution counting path.
BigInt enumerate_class(const EdgeColoredBipartiteFamily& fam, int k, int rho) {
    const int n = fam.side_size();
    std::vector<int> colors;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (fam.color_at(a, b) > 0) colors.push_back(fam.color_at(a, b));

    BigInt count = 0;
    std::vector<std::size_t> pos(k, 0);
    while (true) {
        int sum = 0;
        for (int i = 0; i < k; ++i) sum += colors[pos[i]];
        if (sum % fam.class_count() == rho % fam.class_count()) ++count;
        int i = k - 1;
        while (i >= 0) {
            if (++pos[i] < colors.size()) break;
            pos[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return count;
}

} // namespace

TEST_CASE("integer_root") {
    CHECK(integer_root(0, 2) == 0);
    CHECK(integer_root(8, 3) == 2);
    CHECK(integer_root(26, 3) == 2);
    CHECK(integer_root(27, 3) == 3);
    CHECK(integer_root(1000000, 1) == 1000000);
    CHECK(integer_root((1ull << 62), 62) == 2);
}

TEST_CASE("k=1 products reproduce the color classes") {
    auto fam = build_norm_partition(2, 2, 5);
    auto sizes = fam.class_sizes();
    for (int rho = 1; rho <= fam.class_count(); ++rho) {
        auto g = build_product(fam, 1, rho);
        CHECK(g.r() == 2);
        CHECK(g.n() == 10);
        CHECK(g.edge_count() == sizes[rho]);
        CHECK(residue_class_count(fam, 1, rho) == BigInt(sizes[rho]));
        // every edge is a colored pair of class rho
        for (const auto& e : g.edges()) {
            int a = e[0], b = e[1] - 5;
            CHECK(fam.color_at(a, b) == rho);
        }
    }
}

TEST_CASE("residue classes partition e^k") {
    for (auto [s, h, p] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 2, 5}, {2, 1, 3}, {2, 3, 7}}) {
        auto fam = build_norm_partition(s, h, p);
        for (int k = 1; k <= 3; ++k) {
            BigInt total = 0;
            for (int rho = 1; rho <= fam.class_count(); ++rho)
                total += residue_class_count(fam, k, rho);
            CHECK(total == big_pow(BigInt(fam.union_edge_count()), static_cast<unsigned>(k)));
        }
    }
}

TEST_CASE("counting matches direct enumeration") {
    auto fam = build_norm_partition(2, 2, 5);
    for (int k = 1; k <= 2; ++k)
        for (int rho = 1; rho <= 2; ++rho)
            CHECK(residue_class_count(fam, k, rho) == enumerate_class(fam, k, rho));
}

TEST_CASE("m=1 family: the single class holds all e^k tuples") {
    // h = 2, p = 3 gives m = (3-1)/2 = 1
    auto fam = build_norm_partition(2, 2, 3);
    REQUIRE(fam.class_count() == 1);
    CHECK(fam.union_edge_count() == 6);
    auto best = best_residue(fam, 2);
    CHECK(best.rho == 1);
    CHECK(best.edges == 36);
    auto g = build_product(fam, 2, 1);
    CHECK(g.edge_count() == 36);
}

TEST_CASE("best_residue meets the pigeonhole bound") {
    auto fam5 = build_norm_partition(2, 2, 5);
    auto b1 = best_residue(fam5, 1);
    CHECK(b1.edges >= 10); // e/m = 20/2
    auto b2 = best_residue(fam5, 2);
    CHECK(b2.edges >= 200); // e^2/m = 400/2
    CHECK(b2.edges == enumerate_class(fam5, 2, b2.rho));

    auto fam3 = build_norm_partition(2, 1, 3);
    auto b3 = best_residue(fam3, 2);
    CHECK(b3.edges >= 18); // e^2/m = 36/2
}

TEST_CASE("product edges are 2k-partite with one vertex per part") {
    auto fam = build_norm_partition(2, 1, 3);
    auto g = build_product(fam, 2, 1);
    REQUIRE(g.part_sizes().has_value());
    CHECK(g.part_sizes()->size() == 4);
    const int side = fam.side_size();
    for (const auto& e : g.edges()) {
        REQUIRE(e.size() == 4);
        for (int l = 0; l < 4; ++l) {
            CHECK(e[l] >= l * side);
            CHECK(e[l] < (l + 1) * side);
        }
        // consecutive pairs colored and color sum in the residue class
        int c1 = fam.color_at(e[0], e[1] - side);
        int c2 = fam.color_at(e[2] - 2 * side, e[3] - 3 * side);
        CHECK(c1 > 0);
        CHECK(c2 > 0);
        CHECK((c1 + c2) % 2 == 1 % 2);
    }
}

TEST_CASE("build_product validates rho and budget") {
    auto fam = build_norm_partition(2, 2, 5);
    CHECK_THROWS_AS(build_product(fam, 2, 0), Error);
    CHECK_THROWS_AS(build_product(fam, 2, 3), Error);
    try {
        build_product(fam, 6, 1, 100);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}

TEST_CASE("construction_report parameter arithmetic") {
    // s=2, t=2: h = floor(((2-1)/1!)^1) = 1
    auto r1 = construction_report(2, 2, 2, 40);
    CHECK(r1.h == 1);
    CHECK(r1.n == 4ll * r1.p);

    // s=2, t=5: h = 4, prime p == 1 mod 4 in the window [25, 50] -> 29
    auto r2 = construction_report(2, 5, 1, 100);
    CHECK(r2.h == 4);
    CHECK(r2.p == 29);
    CHECK(r2.m == 7);
    CHECK(r2.n == 58);
    CHECK(r2.bound_ratio > 0);

    // h^(s-1) (s-1)! <= t-1 for a grid of (s, t)
    for (int s = 2; s <= 4; ++s) {
        std::uint64_t fact = 1;
        for (int i = 2; i <= s - 1; ++i) fact *= i;
        for (long long t = static_cast<long long>(fact) + 1; t <= 40; ++t) {
            std::uint64_t h = integer_root(static_cast<std::uint64_t>(t - 1) / fact,
                                           static_cast<unsigned>(s - 1));
            if (h == 0) h = 1;
            std::uint64_t pow = 1;
            for (int i = 0; i < s - 1; ++i) pow *= h;
            CHECK(pow * fact <= static_cast<std::uint64_t>(t - 1));
        }
    }

    try {
        construction_report(2, 1, 1, 100);
        FAIL("expected BadParameters");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParameters);
    }
    // degenerate window [2, 2] still yields the p = 2 family
    auto r3 = construction_report(2, 2, 1, 5);
    CHECK(r3.p == 2);
    CHECK(r3.m == 1);

    try {
        construction_report(2, 2, 1, 3); // window below 2: no room for a prime
        FAIL("expected NoPrimeInRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoPrimeInRange);
    }
}

TEST_CASE("reported density clears the 2^-k h p^(2(s-1)k-1) chain exactly") {
    // edges * 2^k >= h * p^(2(s-1)k - 1), as integers
    for (auto [s, t, k, n_target] : {std::tuple<int, long long, int, long long>{2, 5, 1, 100},
                                     {2, 2, 2, 40},
                                     {2, 7, 2, 60},
                                     {3, 3, 1, 120}}) {
        auto rep = construction_report(s, t, k, n_target);
        BigInt lhs = rep.edges * big_pow(BigInt(2), static_cast<unsigned>(rep.k));
        BigInt rhs = BigInt(rep.h) *
                     big_pow(BigInt(rep.p), static_cast<unsigned>(2 * (rep.s - 1) * rep.k - 1));
        CHECK(lhs >= rhs);
        CHECK(rep.bound_ratio > 0);
    }
}

TEST_CASE("pad_isolated grows the vertex set, not the edges") {
    auto fam = build_norm_partition(2, 1, 3);
    auto g = build_product(fam, 2, 1);
    auto padded = pad_isolated(g, 40);
    CHECK(padded.n() == 40);
    CHECK(padded.edge_count() == g.edge_count());
    REQUIRE(padded.part_sizes().has_value());
    CHECK(padded.part_sizes()->size() == 5);
    CHECK(padded.part_sizes()->back() == 40 - 12);
    CHECK(pad_isolated(g, g.n()) == g);
    CHECK_THROWS_AS(pad_isolated(g, 5), Error);
}

TEST_CASE("report CSV round-trips byte-identically") {
    std::vector<ConstructionReport> rows{construction_report(2, 5, 1, 100),
                                         construction_report(2, 2, 2, 40)};
    std::ostringstream out;
    write_report_csv(out, rows);
    std::istringstream in(out.str());
    auto back = read_report_csv(in, "mem");
    REQUIRE(back.size() == rows.size());
    std::ostringstream again;
    write_report_csv(again, back);
    CHECK(again.str() == out.str());
    CHECK(back == rows);
}
