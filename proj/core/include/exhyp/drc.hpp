#ifndef EXHYP_DRC_HPP
#define EXHYP_DRC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exhyp/hypergraph.hpp"
#include "exhyp/rational.hpp"

namespace exhyp {

// Parameters of the weighted dependent-random-choice extraction. All derived
// quantities are exact: the pruning threshold is the integer ceiling of
//   D = (C/2) alpha^(1/(s-1)) t^(1/(s-1)) n^(1-1/(s-1)),
// obtained by comparing (s-1)-th powers, never through floating point.
struct DrcParams {
    int s = 2;
    long long t = 1;
    int r = 3;
    Rational alpha = Rational(2);
    Rational C = Rational(1);
    long long n = 0;

    // Smallest integer C meeting the extraction's feasibility conditions
    // C >= 4s and C^(s-1) ((r-1)!)^s / (2^s r! s^s) - r^2 >= 1.
    static Rational default_constant(int s, int r);

    Rational d_power() const;            // D^(s-1), an exact rational
    long long prune_threshold() const;   // ceil(D)

    // The constant used in sampling weights and claim bounds: the exact
    // rational D when s = 2; for s >= 3, D is irrational in general, so the
    // integer threshold stands in (every claim inequality remains valid for
    // any weight constant <= the pruning threshold).
    Rational weight_constant() const;

    void validate(const UniformHypergraph& host) const;
};

// One ordered (r-1)-tuple of distinct vertices with positive co-degree and
// its sampling weight D / (n^(r-1) d(tuple)).
struct WeightedTuple {
    std::vector<int> tuple;
    Rational weight;
};

// Lexicographically ordered tuples; this order is fixed forever so that
// inverse-CDF sampling is reproducible bit for bit.
struct TupleWeightTable {
    std::vector<WeightedTuple> tuples;
    std::vector<Rational> cumulative;
    Rational total; // p <= 1 on pruned input
};

struct DrcRun {
    UniformHypergraph pruned;
    DrcParams params;
    TupleWeightTable table;
    std::uint64_t weights_hash = 0;
};

DrcRun drc_prepare(const UniformHypergraph& host, const DrcParams& params,
                   std::uint64_t tuple_budget = 100'000'000ull);

// Vertices v1 with tuple + {v1} an edge of the pruned graph such that the
// tuple's co-degree attains the maximum co-degree over all (r-1)-subsets of
// that edge. Ties do not exclude v1.
std::vector<int> filter_set(const UniformHypergraph& pruned, const std::vector<int>& tuple);

enum class DrcStatus { TupleChosen, EmptyDraw, EmptyAfterPrune };

struct DrcOutcome {
    DrcStatus status = DrcStatus::EmptyDraw;
    std::vector<int> tuple;      // chosen tuple when status == TupleChosen
    std::vector<int> vertex_set; // A
    std::uint64_t seed = 0;
    std::uint64_t weights_hash = 0;
    Rational total_weight;       // p
};

// One draw: empty with probability 1-p, otherwise inverse-CDF over the
// table order, driven by a splitmix64 stream widened to 128 bits and read
// as an exact rational in [0,1). Bit-reproducible given (host, params, seed).
DrcOutcome drc_draw(const DrcRun& run, std::uint64_t seed);
DrcOutcome drc_sample(const UniformHypergraph& host, const DrcParams& params, std::uint64_t seed);

// Literal single-event probabilities, summed over the ordered tuple table.
Rational drc_claim3_probability(const DrcRun& run, const std::vector<int>& u_set,
                                const std::vector<int>& v_prefix);
Rational drc_claim4_probability(const DrcRun& run, const std::vector<int>& u_set, int v2);
Rational drc_subset_probability(const DrcRun& run, const std::vector<int>& u_set);

struct DrcClaimRow {
    std::string claim_id;
    Rational lhs;
    Rational rhs;
    bool ok = false;
};

// Exact expectations and the claim-level inequalities behind the extraction
// argument, all in rational arithmetic: equalities and bounds are assertions
// here, not tolerances.
struct DrcExactStats {
    DrcParams params;
    long long pruned_edge_count = 0;
    Rational sum_a;           // sum of a(tuple) over ordered tuples
    Rational claim1_rhs;      // (r-1)! e(G')
    Rational p_total;
    Rational expected_pow_s;  // E[|A|^s]
    Rational holder_rhs;      // (D/n^((r-1)(s-1))) (sum a)^s / (sum d)
    Rational claim3_max, claim3_rhs;
    Rational claim4_max, claim4_rhs;
    Rational claim5_max, claim5_rhs;
    Rational expected_nonrich;     // E[b]
    Rational expected_nonrich_rhs; // C(n,s) * claim5 bound
    Rational expected_choose;      // E[C(|A|,s)]
    Rational expected_choose_rhs;  // C(n-r+1, s)

    std::vector<DrcClaimRow> rows() const;
    bool all_ok() const;
};

DrcExactStats drc_exact_stats(const UniformHypergraph& host, const DrcParams& params,
                              std::uint64_t budget = 100'000'000ull);

// Per-outcome view for scanning all possible draws: one entry per unordered
// tuple set, with total weight over its orderings.
struct DrcOutcomeStat {
    std::vector<int> tuple_set;
    Rational weight_total;
    std::vector<int> vertex_set;  // A
    BigInt nonrich_subsets;       // non-t-rich s-subsets of A (w.r.t. pruned)
    BigInt choose_s;              // C(|A|, s)
};

std::vector<DrcOutcomeStat> drc_outcome_scan(const DrcRun& run);

// CSV: claim_id,lhs,rhs,verdict with rationals as num/den.
void write_claims_csv(std::ostream& out, const DrcExactStats& stats);

} // namespace exhyp

#endif
