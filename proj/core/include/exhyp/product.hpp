#ifndef EXHYP_PRODUCT_HPP
#define EXHYP_PRODUCT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exhyp/hypergraph.hpp"
#include "exhyp/norm_partition.hpp"
#include "exhyp/rational.hpp"

namespace exhyp {

// Residue-class product of an edge-colored bipartite family: the 2k-uniform,
// 2k-partite hypergraph whose edges are k colored pairs (one per consecutive
// part pair, odd parts copying A and even parts copying B) with color sum
// congruent to rho mod m. The class index is named rho because p is taken by
// the prime.
UniformHypergraph build_product(const EdgeColoredBipartiteFamily& fam, int k, int rho,
                                std::uint64_t work_budget = 1'000'000'000ull);

struct BestResidue {
    int rho = 0;
    BigInt edges;
};

// Exact e(G(rho)) for every residue class via a color-sum convolution, then
// the maximizer (ties to the smallest rho). Pigeonhole guarantees
// e(G(rho)) >= ceil(e^k / m); that bound is asserted on every call.
BestResidue best_residue(const EdgeColoredBipartiteFamily& fam, int k);

// Exact edge count of G(rho) without materializing it.
BigInt residue_class_count(const EdgeColoredBipartiteFamily& fam, int k, int rho);

struct ConstructionReport {
    int s = 0;
    long long t = 0;
    int k = 0;
    std::uint64_t h = 0;
    std::uint64_t p = 0;
    int m = 0;
    int rho = 0;
    long long n = 0;      // 2k * p^(s-1)
    BigInt edges;         // e(G(rho))
    double bound_ratio = 0.0;  // edges / (t^(1/(s-1)) * n^(2k - 1/(s-1)))

    bool operator==(const ConstructionReport&) const = default;
};

// End-to-end pipeline: h = max(1, floor(((t-1)/(s-1)!)^(1/(s-1)))) by exact
// integer root, prime search in [max(2, W/2), W] where W is the largest p
// with 2k p^(s-1) <= n_target, family build, best residue. Requires
// t > (s-1)!.
ConstructionReport construction_report(int s, long long t, int k, long long n_target);

// Largest x >= 0 with x^e <= v.
std::uint64_t integer_root(std::uint64_t v, unsigned e);

// Same hypergraph on a larger vertex set: the new vertices are isolated and
// form one extra block. Used to hit an exact target vertex count in files.
UniformHypergraph pad_isolated(const UniformHypergraph& h, int n_total);

// CSV with columns s,t,k,h,p,m,rho,n,edges,bound_ratio. Parsing and writing
// round-trip byte-identically.
void write_report_csv(std::ostream& out, const std::vector<ConstructionReport>& rows);
std::vector<ConstructionReport> read_report_csv(std::istream& in, const std::string& name);

} // namespace exhyp

#endif
