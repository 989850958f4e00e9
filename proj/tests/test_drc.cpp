#include "doctest.h"

#include <random>
#include <sstream>

#include "exhyp/drc.hpp"
#include "exhyp/verifier.hpp"
#include "test_support.hpp"

using namespace exhyp;
using exhyp::test::all_r_subsets;
using exhyp::test::complete_hypergraph;

namespace {

DrcParams params_for(const UniformHypergraph& h, int s, long long t, Rational alpha, Rational c) {
    DrcParams p;
    p.s = s;
    p.t = t;
    p.r = h.r();
    p.n = h.n();
    p.alpha = alpha;
    p.C = c;
    return p;
}

} // namespace

TEST_CASE("default constant honors both feasibility conditions") {
    // s=2, r=3: C >= max(8, (1+9) * 2^2 * 3! * 2^2 / (2!)^2) = 240
    CHECK(DrcParams::default_constant(2, 3) == Rational(240));
    for (int s = 2; s <= 4; ++s)
        for (int r = 3; r <= 5; ++r) {
            Rational c = DrcParams::default_constant(s, r);
            CHECK(c >= Rational(4 * s));
            Rational lhs = rat_pow(c, static_cast<unsigned>(s - 1));
            BigInt rfact = 1, rm1fact = 1;
            for (int i = 2; i <= r; ++i) rfact *= i;
            for (int i = 2; i <= r - 1; ++i) rm1fact *= i;
            Rational cond = lhs * rat_pow(Rational(rm1fact), static_cast<unsigned>(s)) /
                                (rat_pow(Rational(2), static_cast<unsigned>(s)) * Rational(rfact) *
                                 rat_pow(Rational(s), static_cast<unsigned>(s))) -
                            Rational(r * r);
            CHECK(cond >= 1);
        }
}

TEST_CASE("prune threshold is the exact ceiling of D") {
    auto h = complete_hypergraph(6, 3);
    // s=2: D = (C/2) alpha t, rational
    auto p1 = params_for(h, 2, 3, Rational(2), Rational(1));
    CHECK(p1.prune_threshold() == 3); // D = 3 exactly
    auto p2 = params_for(h, 2, 3, Rational(2), Rational(1, 100));
    CHECK(p2.prune_threshold() == 1); // D = 3/100
    auto p3 = params_for(h, 2, 5, Rational(3, 2), Rational(1));
    CHECK(p3.prune_threshold() == 4); // D = 15/4

    // s=3: D^2 = (C/2)^2 alpha t n; ceil by exact power comparison
    auto h4 = complete_hypergraph(8, 4);
    auto p4 = params_for(h4, 3, 2, Rational(2), Rational(2));
    p4.r = 4;
    p4.n = 8;
    // D^2 = 1 * 2 * 2 * 8 = 32, D = sqrt(32) in (5, 6) -> ceil 6
    CHECK(p4.d_power() == Rational(32));
    CHECK(p4.prune_threshold() == 6);
    CHECK(p4.weight_constant() == Rational(6));
}

TEST_CASE("filter_set examples") {
    auto complete6 = complete_hypergraph(6, 3);
    CHECK(filter_set(complete6, {1, 2}) == std::vector<int>{0, 3, 4, 5});

    auto single = UniformHypergraph::build(3, 3, {{0, 1, 2}});
    CHECK(filter_set(single, {1, 2}) == std::vector<int>{0});

    // d(0,1) = 2 dominates, so the tuple (1,2) collects nothing
    auto two = UniformHypergraph::build(3, 4, {{0, 1, 2}, {0, 1, 3}});
    CHECK(filter_set(two, {1, 2}).empty());
    CHECK(filter_set(two, {0, 1}) == std::vector<int>{2, 3});

    CHECK_THROWS_AS(filter_set(two, {1, 1}), Error);
    CHECK_THROWS_AS(filter_set(two, {1}), Error);
}

TEST_CASE("sampling is bit-reproducible and matches the drawn law roughly") {
    auto h = complete_hypergraph(6, 3);
    auto params = params_for(h, 2, 1, Rational(2), Rational(1, 10));
    auto run = drc_prepare(h, params);
    CHECK(run.table.total == Rational(1, 48)); // 30 tuples * (1/10)/(36*4)

    auto a = drc_draw(run, 12345);
    auto b = drc_draw(run, 12345);
    CHECK(a.status == b.status);
    CHECK(a.tuple == b.tuple);
    CHECK(a.vertex_set == b.vertex_set);
    CHECK(a.weights_hash == b.weights_hash);

    // empirical nonempty frequency over 10^4 seeds within 3 standard errors
    int nonempty = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
        if (drc_draw(run, seed).status == DrcStatus::TupleChosen) ++nonempty;
    double p = 1.0 / 48.0;
    double sigma = std::sqrt(10000.0 * p * (1 - p));
    CHECK(std::abs(nonempty - 10000.0 * p) <= 3 * sigma);
}

TEST_CASE("empty outcomes are distinguished") {
    auto h = UniformHypergraph::build(3, 6, {{0, 1, 2}});
    // big D prunes the single edge away entirely
    auto params = params_for(h, 2, 2, Rational(2), Rational(100));
    auto out = drc_sample(h, params, 7);
    CHECK(out.status == DrcStatus::EmptyAfterPrune);
    CHECK(out.vertex_set.empty());

    // no pruning, but p < 1 leaves room for empty draws
    auto h2 = complete_hypergraph(6, 3);
    auto params2 = params_for(h2, 2, 1, Rational(2), Rational(1, 10));
    auto run2 = drc_prepare(h2, params2);
    bool saw_empty = false, saw_tuple = false;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto st = drc_draw(run2, seed).status;
        saw_empty |= st == DrcStatus::EmptyDraw;
        saw_tuple |= st == DrcStatus::TupleChosen;
    }
    CHECK(saw_empty);
    CHECK(saw_tuple);
}

TEST_CASE("alpha must exceed 1") {
    auto h = complete_hypergraph(6, 3);
    auto params = params_for(h, 2, 1, Rational(1), Rational(1));
    try {
        drc_prepare(h, params);
        FAIL("expected BadParameters");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParameters);
    }
}

TEST_CASE("single edge: claim sums with all co-degrees tied") {
    auto h = UniformHypergraph::build(3, 3, {{0, 1, 2}});
    auto params = params_for(h, 2, 1, Rational(2), Rational(1));
    auto stats = drc_exact_stats(h, params);

    // all six ordered pairs have a = 1; the claim-1 inequality is strict
    // because co-degree ties admit every ordering
    CHECK(stats.sum_a == Rational(6));
    CHECK(stats.claim1_rhs == Rational(2));
    CHECK(stats.p_total == Rational(6, 9));
    CHECK(stats.expected_pow_s == Rational(2, 3));
    CHECK(stats.holder_rhs == Rational(2, 3)); // Cauchy-Schwarz equality here
    CHECK(stats.claim5_rhs == Rational(0));    // t = 1
    CHECK(stats.claim5_max == Rational(0));
    CHECK(stats.expected_nonrich == Rational(0));
    CHECK(stats.all_ok());
}

TEST_CASE("claims CSV shape") {
    auto h = UniformHypergraph::build(3, 3, {{0, 1, 2}});
    auto stats = drc_exact_stats(h, params_for(h, 2, 1, Rational(2), Rational(1)));
    std::ostringstream out;
    write_claims_csv(out, stats);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "claim_id,lhs,rhs,verdict");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find(",OK") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("claim maxima agree with the per-request probabilities") {
    std::mt19937 rng(53);
    auto h = exhyp::test::random_hypergraph(6, 3, 0.5, rng);
    auto params = params_for(h, 2, 2, Rational(2), Rational(1));
    auto stats = drc_exact_stats(h, params);
    auto run = drc_prepare(h, params);

    Rational c3 = 0, c4 = 0, c5 = 0;
    for (auto& u : all_r_subsets(6, 2)) {
        for (int v = 0; v < 6; ++v) {
            if (v == u[0] || v == u[1]) continue;
            c3 = std::max(c3, drc_claim3_probability(run, u, {v}));
            c4 = std::max(c4, drc_claim4_probability(run, u, v));
        }
        if (!is_t_rich(run.pruned, u, 2).found())
            c5 = std::max(c5, drc_subset_probability(run, u));
    }
    CHECK(stats.claim3_max == c3);
    CHECK(stats.claim4_max == c4);
    CHECK(stats.claim5_max == c5);
}

TEST_CASE("outcome scan matches the expectation bookkeeping") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = exhyp::test::random_hypergraph(6, 3, 0.45, rng);
        auto params = params_for(h, 2, 2, Rational(2), Rational(1));
        auto run = drc_prepare(h, params);
        auto stats = drc_exact_stats(h, params);
        Rational eb = 0, echoose = 0;
        for (const auto& o : drc_outcome_scan(run)) {
            eb += o.weight_total * Rational(o.nonrich_subsets);
            echoose += o.weight_total * Rational(o.choose_s);
        }
        CHECK(eb == stats.expected_nonrich);
        CHECK(echoose == stats.expected_choose);
    }
}

TEST_CASE("claim suite: exhaustive sweep of 5-vertex hypergraphs up to 6 edges") {
    // all 3-uniform hypergraphs on 5 vertices with <= 6 edges
    auto triples = all_r_subsets(5, 3); // 10 of them
    REQUIRE(triples.size() == 10);
    long long checked = 0;
    long long extraction_checked = 0;

    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        if (std::popcount(mask) > 6) continue;
        std::vector<std::vector<int>> edges;
        for (int b = 0; b < 10; ++b)
            if (mask & (1u << b)) edges.push_back(triples[b]);
        auto h = UniformHypergraph::build(3, 5, std::move(edges));

        for (long long t : {1ll, 2ll}) {
            auto params = params_for(h, 2, t, Rational(2), Rational(1));
            auto stats = drc_exact_stats(h, params);
            REQUIRE(stats.all_ok());
            ++checked;

            // success extraction: a positive expectation is realized by some
            // outcome, and that outcome has rich proportion >= 1 - 1/alpha
            Rational expectation = stats.expected_choose - params.alpha * stats.expected_nonrich;
            if (expectation > 0) {
                auto run = drc_prepare(h, params);
                bool realized = false;
                for (const auto& o : drc_outcome_scan(run)) {
                    Rational score = Rational(o.choose_s) - params.alpha * Rational(o.nonrich_subsets);
                    if (score > 0) {
                        realized = true;
                        // alpha * b < C(|A|,s) means non-rich proportion < 1/alpha
                        CHECK(params.alpha * Rational(o.nonrich_subsets) < Rational(o.choose_s));
                        break;
                    }
                }
                CHECK(realized);
                ++extraction_checked;
            }
        }
    }
    CHECK(checked == 2 * 848); // sum_{i<=6} C(10,i) = 848 hypergraphs
    CHECK(extraction_checked > 0);
}
