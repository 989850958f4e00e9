#ifndef EXHYP_VERIFIER_HPP
#define EXHYP_VERIFIER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exhyp/hypergraph.hpp"

namespace exhyp {

// Node-count budget shared across a search. Free/NotFound verdicts are only
// ever reported after a complete search; running out of budget is a third,
// explicitly inconclusive outcome.
struct SearchBudget {
    std::uint64_t limit = UINT64_MAX;
    std::uint64_t used = 0;

    bool tick(std::uint64_t cost = 1) {
        used += cost;
        return used <= limit;
    }
};

enum class SearchStatus { Found, Exhausted, Budget };

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<T> value;

    bool found() const { return status == SearchStatus::Found; }
    bool exhausted() const { return status == SearchStatus::Exhausted; }
    bool budget() const { return status == SearchStatus::Budget; }
};

// Witness that S is t-rich: t pairwise disjoint (r-1)-sets, disjoint from S,
// each completing every vertex of S to an edge.
struct RichCertificate {
    std::vector<int> s_set;
    std::vector<std::vector<int>> witnesses;
};

// Bipartite pattern G with ordered bipartition (X, Y): |X| = x_size and one
// adjacency list per Y-vertex (ascending X indices, nonempty). The blow-up
// G_{X,Y}^{(r)} replaces each Y-vertex by an (r-1)-set.
struct BipartitePattern {
    int x_size = 0;
    std::vector<std::vector<int>> y_neighbors;

    static BipartitePattern complete(int s, int t); // K_{s,t}
    static BipartitePattern cycle(int t);           // C_{2t}

    int y_size() const { return static_cast<int>(y_neighbors.size()); }
    int blowup_vertex_count(int r) const { return x_size + y_size() * (r - 1); }
};

struct PatternEmbedding {
    std::vector<int> x_images;
    std::vector<std::vector<int>> y_images; // (r-1)-sets, by Y index
};

// All (r-1)-sets T disjoint from S with {u} + T an edge for every u in S,
// in lexicographic order.
std::vector<std::vector<int>> common_link(const UniformHypergraph& h, const std::vector<int>& s_set);

// Exact t-rich decision by backtracking over the common link of S.
SearchResult<RichCertificate> is_t_rich(const UniformHypergraph& h, std::vector<int> s_set,
                                        long long t, SearchBudget* budget = nullptr);

// First t-rich s-set in lexicographic order, with co-degree style pruning
// (s-sets whose common link has fewer than t members are skipped).
SearchResult<RichCertificate> find_kst(const UniformHypergraph& h, int s, long long t,
                                       SearchBudget* budget = nullptr);

// Exact backtracking embedding of the blow-up G_{X,Y}^{(r)}: X images first,
// then Y images in decreasing pattern-degree order, each an (r-1)-set from
// the common link of its X neighbours' images, all images pairwise disjoint.
SearchResult<PatternEmbedding> find_pattern(const UniformHypergraph& h, const BipartitePattern& p,
                                            SearchBudget* budget = nullptr);

// Certificate re-validation against raw edge lookups.
bool validate_certificate(const UniformHypergraph& h, const RichCertificate& cert);
bool validate_embedding(const UniformHypergraph& h, const BipartitePattern& p,
                        const PatternEmbedding& emb);

// Text output: `certificate s=<s> t=<t>`, then S on one line, each T_i on
// the following lines. Embeddings carry a `pattern` header line instead.
void write_certificate(std::ostream& out, const RichCertificate& cert);
void write_embedding(std::ostream& out, const BipartitePattern& p, int r,
                     const PatternEmbedding& emb);

// Pattern definition files: `pattern <xsize> <m>` then one adjacency line
// (ascending X indices) per Y-vertex.
BipartitePattern read_pattern(std::istream& in, const std::string& name);
BipartitePattern read_pattern_file(const std::string& path);

} // namespace exhyp

#endif
