#ifndef EXHYP_EMBEDDER_HPP
#define EXHYP_EMBEDDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exhyp/bitset.hpp"
#include "exhyp/hypergraph.hpp"
#include "exhyp/rational.hpp"
#include "exhyp/verifier.hpp"

namespace exhyp {

// Graph on a vertex subset A of the host whose edges are the pairs that are
// q-rich in the host hypergraph.
struct RichPairGraph {
    std::vector<int> vertices; // host ids, ascending
    std::vector<Bitset> adj;   // over local indices
    long long q = 0;

    int size() const { return static_cast<int>(vertices.size()); }
    bool adjacent(int i, int j) const { return adj[i].test(j); }
    std::size_t edge_count() const;
};

RichPairGraph build_rich_pair_graph(const UniformHypergraph& host, const std::vector<int>& vertices,
                                    long long q, SearchBudget* budget = nullptr);

// Iteratively removes the smallest-index vertex whose rich-degree within the
// current set falls below fraction * |current set| (exact rational compare,
// nothing pre-rounded). Returns the surviving host vertex ids.
//
// Two facts from the peeling argument are asserted on every run:
//  - termination: every survivor has degree >= fraction * |A'|;
//  - with the default 3/4 fraction and |A| >= 32, deleting at least |A|/2
//    vertices forces more than C(|A|,2)/100 non-edges in the input graph.
// Every surviving pair also shares at least 2*ceil(fraction*|A'|) - |A'|
// common neighbours inside A' (degree counting; integer floors explicit).
std::vector<int> peel(const RichPairGraph& g, const Rational& fraction = Rational(3, 4));

struct EmbedResult {
    std::optional<PatternEmbedding> embedding;
    std::string fail_reason; // which hypothesis failed, when NotFound

    bool found() const { return embedding.has_value(); }
};

struct CycleSearchParams {
    Rational alpha = Rational(2);
    // The feasibility constant (240 already at s=2, r=3) prunes every
    // desk-scale instance to nothing, so the tool defaults tiny and
    // exposes the override.
    Rational C = Rational(1, 1000);
    long long q = 0;          // rich-pair threshold; 0 means the default r*t
    int exhaustive_below = 60; // full tuple scan when n < this, else seed sweep
    unsigned seed_sweep = 64;
    std::uint64_t tuple_budget = 100'000'000ull;
    SearchBudget* budget = nullptr;
};

// Constructive C_{2t}^{(r)} search: DRC extraction with s = 2 and rt in
// place of t, rich-pair graph, 3/4 peeling, greedy closed walk x_1..x_t,
// then greedy pairwise disjoint Y_i from common links. NotFound is a
// legitimate outcome at desk scale; the returned reason names the step
// that failed.
EmbedResult find_cycle(const UniformHypergraph& host, int t, CycleSearchParams params = {});

// Greedy blow-up embedding from a rich core: X goes to the first |X|
// vertices of A' (ascending), each Y_i takes the lexicographically smallest
// common-link member avoiding everything used. No backtracking here; the
// exhaustive search lives in find_pattern.
EmbedResult embed_from_rich_core(const UniformHypergraph& host, const BipartitePattern& pattern,
                                 const std::vector<int>& rich_core,
                                 bool validate_precondition = false,
                                 SearchBudget* budget = nullptr);

} // namespace exhyp

#endif
