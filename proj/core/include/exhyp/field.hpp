#ifndef EXHYP_FIELD_HPP
#define EXHYP_FIELD_HPP

#include <cstdint>
#include <vector>

#include "exhyp/errors.hpp"

namespace exhyp {

// Element of GF(p^m): m residues mod p, low degree first, always canonical.
struct FieldElement {
    std::vector<std::uint32_t> coeffs;

    bool operator==(const FieldElement&) const = default;
};

// GF(p^m) presented as GF(p)[x] / (irreducible). All operations are pure;
// a FieldSpec is immutable after construction and safe to share across threads.
class FieldSpec {
public:
    // Largest supported field order for base-p index encodings.
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

    FieldSpec(std::uint64_t p, unsigned m, std::vector<std::uint32_t> irreducible);

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint64_t order() const { return order_; }

    // Monic degree-m modulus, m+1 coefficients low to high (last one is 1).
    const std::vector<std::uint32_t>& irreducible() const { return irreducible_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_residue(std::uint64_t a) const;

    // Base-p digit encoding of the coefficient vector; the canonical
    // vertex <-> element correspondence used by the bipartite families.
    FieldElement element(std::uint64_t index) const;
    std::uint64_t index_of(const FieldElement& a) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;

    bool is_zero(const FieldElement& a) const;

    // Norm down to GF(p): x^(1 + p + ... + p^(m-2) + p^(m-1))... computed as
    // x^((p^m-1)/(p-1)); 0 for x = 0. The result must land in the base field.
    std::uint64_t norm(const FieldElement& a) const;

private:
    void check_element(const FieldElement& a) const;

    std::uint64_t p_;
    unsigned m_;
    std::uint64_t order_;
    std::uint64_t norm_exponent_;
    std::vector<std::uint32_t> irreducible_;
};

// Lexicographically smallest monic irreducible of degree m over GF(p),
// coefficients compared low-degree-first. Deterministic.
FieldSpec make_field(std::uint64_t p, unsigned m);

// norm(element(i)) for every index i, in index order.
std::vector<std::uint32_t> norm_table(const FieldSpec& f);

// The order-h subgroup H of GF(p)^x and its cosets S_1,...,S_m, m = (p-1)/h,
// each coset sorted, cosets ordered by smallest element (so S_1 = H).
struct CosetPartition {
    std::uint64_t p = 0;
    std::uint64_t h = 0;
    std::vector<std::uint64_t> subgroup;
    std::vector<std::vector<std::uint64_t>> cosets;

    std::uint64_t class_count() const { return cosets.size(); }
};

CosetPartition subgroup_cosets(std::uint64_t p, std::uint64_t h);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Smallest prime p in [lo, hi] with p == 1 (mod h).
std::uint64_t find_prime(std::uint64_t h, std::uint64_t lo, std::uint64_t hi);

} // namespace exhyp

#endif
