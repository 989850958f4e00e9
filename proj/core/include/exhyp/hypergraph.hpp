#ifndef EXHYP_HYPERGRAPH_HPP
#define EXHYP_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "exhyp/bitset.hpp"
#include "exhyp/errors.hpp"

namespace exhyp {

struct VectorIntHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// r-uniform hypergraph: edges are strictly increasing r-tuples, stored in
// lexicographic order. Immutable after construction; queries are read-only
// and safe to run concurrently. Per-vertex incidence bitsets over edge ids
// make co-degree and common-link queries word-parallel intersections.
class UniformHypergraph {
public:
    UniformHypergraph() = default;

    // Validating builder (the file format and all callers go through this).
    // Duplicate edges are deduplicated; tuples must be strictly increasing.
    static UniformHypergraph build(int r, int n, std::vector<std::vector<int>> edges,
                                   std::optional<std::vector<int>> part_sizes = std::nullopt);

    int r() const { return r_; }
    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::optional<std::vector<int>>& part_sizes() const { return part_sizes_; }

    bool has_edge(const std::vector<int>& sorted_tuple) const;
    const Bitset& incidence(int v) const;

    // Exact co-degree of an (r-1)-set; sets that are not a subset of any
    // edge report 0 with no storage behind them.
    int codegree(std::vector<int> s) const;

    // Vertices v with s + {v} an edge, ascending. |s| == r-1.
    std::vector<int> completions(std::vector<int> s) const;

    // Co-degrees of every (r-1)-set that is a subset of at least one edge.
    std::unordered_map<std::vector<int>, int, VectorIntHash> codegree_index() const;

    // Fixpoint of iterated deletion: drop every edge containing an (r-1)-set
    // of co-degree below min_codegree, until none remains. The fixpoint is
    // unique, so processing order is irrelevant.
    UniformHypergraph codegree_prune(int min_codegree) const;

    // The (r-1)-uniform link hypergraph of v, on the same vertex set.
    UniformHypergraph link(int v) const;

    bool operator==(const UniformHypergraph& o) const {
        return r_ == o.r_ && n_ == o.n_ && edges_ == o.edges_;
    }

private:
    static UniformHypergraph make_unchecked(int r, int n, std::vector<std::vector<int>> edges,
                                            std::optional<std::vector<int>> part_sizes);
    void build_incidence();
    void check_vertex(int v) const;

    int r_ = 0;
    int n_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<Bitset> incidence_;
    std::optional<std::vector<int>> part_sizes_;
};

// ".hyp" text format:
//   hyp <r> <n> <e>
//   parts <k> <size_1> ... <size_k>     (optional; blocks are consecutive ranges)
//   then e lines of r space-separated ascending 0-based vertex indices.
UniformHypergraph read_hyp(std::istream& in, const std::string& name);
UniformHypergraph read_hyp_file(const std::string& path);
void write_hyp(std::ostream& out, const UniformHypergraph& h);
void write_hyp_file(const std::string& path, const UniformHypergraph& h);

} // namespace exhyp

#endif
