#ifndef EXHYP_NORM_PARTITION_HPP
#define EXHYP_NORM_PARTITION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exhyp/bitset.hpp"
#include "exhyp/field.hpp"

namespace exhyp {

// m pairwise edge-disjoint bipartite graphs G_1,...,G_m on parts A, B of
// size p^(s-1), encoded as a single color map A x B -> {0,...,m} with 0
// meaning non-edge. Edge-disjointness is structural: a pair has one color.
class EdgeColoredBipartiteFamily {
public:
    // Family construction is capped by the color matrix, not the field.
    static constexpr int kSideLimit = 4096;

    EdgeColoredBipartiteFamily(int side_size, int m, int s, std::uint64_t h, std::uint64_t p,
                               std::vector<std::uint16_t> color);

    int side_size() const { return side_size_; }
    int class_count() const { return m_; }
    int s() const { return s_; }
    std::uint64_t h() const { return h_; }
    std::uint64_t p() const { return p_; }

    int color_at(int a, int b) const { return color_[std::size_t(a) * side_size_ + b]; }

    std::uint64_t union_edge_count() const;
    std::vector<std::uint64_t> class_sizes() const;

    // Vertex <-> field element correspondence and coset structure used to
    // build the family; reconstructed deterministically for loaded files.
    const FieldSpec& field() const;
    const CosetPartition& cosets() const;

private:
    int side_size_;
    int m_;
    int s_;
    std::uint64_t h_;
    std::uint64_t p_;
    std::vector<std::uint16_t> color_;
    mutable std::optional<FieldSpec> field_;
    mutable std::optional<CosetPartition> cosets_;
};

// color(x, y) = i iff N(x + y) lies in the i-th coset of the order-h
// subgroup of GF(p)^x; 0 iff x + y = 0. Union edge count is p^(2s-2) - p^(s-1).
EdgeColoredBipartiteFamily build_norm_partition(int s, std::uint64_t h, std::uint64_t p);

struct CoverWitness {
    int side = 0;            // 0: s-set in A, witnesses y in B; 1: the reverse
    std::vector<int> xs;     // side-local indices, ascending
    int count = 0;           // matching opposite-side vertices
    int color = 0;           // color seen at the smallest matching y (0 if none)
};

struct CoverVerdict {
    bool pass = true;
    long long bound = 0;
    CoverWitness worst;                     // max count, lexicographically first
    std::optional<CoverWitness> violation;  // lexicographically first above bound
};

// Exhaustive check: every s-set of distinct same-side vertices has at most
// `bound` opposite-side vertices y such that a single color i satisfies
// color(x_j, y) = i for all j. Mixed-side s-sets are skipped: in a bipartite
// family a common neighbour forces all x_j onto one side, so they are vacuous.
CoverVerdict verify_cover_property(const EdgeColoredBipartiteFamily& fam, int s, long long bound,
                                   unsigned threads = 1);

// Number of z in GF(p^m) with norm(z + shifts[j]) == targets[j] for all j,
// by exhaustive enumeration. Deliberately independent of the cover verifier.
std::uint64_t krs_solution_count(const FieldSpec& field, const std::vector<FieldElement>& shifts,
                                 const std::vector<std::uint64_t>& targets);

// Max of krs_solution_count over all ordered tuples of m distinct shifts and
// all nonzero target vectors; the worst case never exceeds m!.
std::uint64_t krs_exhaustive_max(const FieldSpec& field);

// ".ebf" text format: header `ebf <sideSize> <m> <s> <h> <p>`, then sideSize
// rows of sideSize space-separated colors in {0..m} (row = A, column = B).
EdgeColoredBipartiteFamily read_ebf(std::istream& in, const std::string& name);
EdgeColoredBipartiteFamily read_ebf_file(const std::string& path);
void write_ebf(std::ostream& out, const EdgeColoredBipartiteFamily& fam);
void write_ebf_file(const std::string& path, const EdgeColoredBipartiteFamily& fam);

} // namespace exhyp

#endif
