#include "exhyp/field.hpp"

#include <algorithm>
#include <string>

namespace exhyp {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % mod);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1u) r = mulmod_u64(r, base, mod);
        base = mulmod_u64(base, base, mod);
        exp >>= 1u;
    }
    return r;
}

// Polynomials over GF(p) as coefficient vectors, low degree first,
// trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod g, g monic.
Poly poly_mod(Poly a, const Poly& g, std::uint64_t p) {
    const std::size_t dg = g.size() - 1;
    while (a.size() > dg) {
        std::uint64_t lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - 1 - dg;
            for (std::size_t j = 0; j < dg; ++j) {
                std::uint64_t sub = (lead * g[j]) % p;
                a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
            }
        }
        a.pop_back();
    }
    trim(a);
    return a;
}

bool poly_is_zero(const Poly& a) {
    for (auto c : a)
        if (c) return false;
    return true;
}

std::uint64_t poly_eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return acc;
}

bool has_root(const Poly& f, std::uint64_t p) {
    for (std::uint64_t x = 0; x < p; ++x)
        if (poly_eval(f, x, p) == 0) return true;
    return false;
}

// Irreducibility over GF(p) for monic f of degree m <= 20 at table scale:
// no root, and for m >= 4 no monic divisor of degree 2..m/2.
bool is_irreducible(const Poly& f, std::uint64_t p, unsigned m) {
    if (m == 1) return true;
    if (has_root(f, p)) return false;
    if (m < 4) return true;
    for (unsigned d = 2; d <= m / 2; ++d) {
        // All monic degree-d candidates, counted in base p.
        std::uint64_t total = 1;
        for (unsigned i = 0; i < d; ++i) total *= p;
        Poly g(d + 1, 0);
        g[d] = 1;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

} // namespace

FieldSpec::FieldSpec(std::uint64_t p, unsigned m, std::vector<std::uint32_t> irreducible)
    : p_(p), m_(m), irreducible_(std::move(irreducible)) {
    if (m_ == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be >= 1");
    if (!is_prime_u64(p_))
        throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p_) + " is not prime");
    order_ = 1;
    for (unsigned i = 0; i < m_; ++i) {
        if (order_ > kTableLimit / p_)
            throw Error(ErrorCode::FieldTooLarge,
                        "p^m exceeds table limit 2^20 for p = " + std::to_string(p_) +
                            ", m = " + std::to_string(m_));
        order_ *= p_;
    }
    if (irreducible_.size() != m_ + 1 || irreducible_.back() != 1)
        throw Error(ErrorCode::Internal, "modulus is not monic of degree m");
    norm_exponent_ = (order_ - 1) / (p_ - 1);
}

FieldElement FieldSpec::zero() const {
    return FieldElement{std::vector<std::uint32_t>(m_, 0)};
}

FieldElement FieldSpec::one() const {
    FieldElement e = zero();
    e.coeffs[0] = 1;
    return e;
}

FieldElement FieldSpec::from_residue(std::uint64_t a) const {
    FieldElement e = zero();
    e.coeffs[0] = static_cast<std::uint32_t>(a % p_);
    return e;
}

FieldElement FieldSpec::element(std::uint64_t index) const {
    if (index >= order_)
        throw Error(ErrorCode::BadParameters, "element index out of range");
    FieldElement e = zero();
    for (unsigned i = 0; i < m_; ++i) {
        e.coeffs[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return e;
}

std::uint64_t FieldSpec::index_of(const FieldElement& a) const {
    check_element(a);
    std::uint64_t idx = 0;
    for (unsigned i = m_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
    return idx;
}

void FieldSpec::check_element(const FieldElement& a) const {
    if (a.coeffs.size() != m_)
        throw Error(ErrorCode::BadParameters, "element has wrong coefficient count");
    for (auto c : a.coeffs)
        if (c >= p_) throw Error(ErrorCode::BadParameters, "element coefficient not reduced");
}

bool FieldSpec::is_zero(const FieldElement& a) const {
    check_element(a);
    for (auto c : a.coeffs)
        if (c) return false;
    return true;
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
    check_element(a);
    check_element(b);
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = static_cast<std::uint32_t>((std::uint64_t(a.coeffs[i]) + b.coeffs[i]) % p_);
    return r;
}

FieldElement FieldSpec::neg(const FieldElement& a) const {
    check_element(a);
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = static_cast<std::uint32_t>((p_ - a.coeffs[i]) % p_);
    return r;
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
    check_element(a);
    check_element(b);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + std::uint64_t(a.coeffs[i]) * b.coeffs[j]) % p_;
    }
    // Reduce top-down: x^m == -(f_0 + ... + f_{m-1} x^{m-1}).
    for (unsigned i = 2 * m_ - 1; i-- > m_;) {
        std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < m_; ++j) {
            std::uint64_t sub = (c * irreducible_[j]) % p_;
            prod[i - m_ + j] = (prod[i - m_ + j] + p_ - sub) % p_;
        }
    }
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
}

FieldElement FieldSpec::pow(const FieldElement& a, std::uint64_t e) const {
    check_element(a);
    FieldElement base = a;
    FieldElement acc = one();
    while (e > 0) {
        if (e & 1u) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return acc;
}

FieldElement FieldSpec::inv(const FieldElement& a) const {
    if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return pow(a, order_ - 2);
}

std::uint64_t FieldSpec::norm(const FieldElement& a) const {
    if (is_zero(a)) return 0;
    FieldElement n = pow(a, norm_exponent_);
    for (unsigned i = 1; i < m_; ++i)
        if (n.coeffs[i] != 0)
            throw Error(ErrorCode::Internal, "norm value left the base field");
    return n.coeffs[0];
}

FieldSpec make_field(std::uint64_t p, unsigned m) {
    if (m == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be >= 1");
    if (p < 2 || !is_prime_u64(p))
        throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not prime");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (order > FieldSpec::kTableLimit / p)
            throw Error(ErrorCode::FieldTooLarge,
                        "p^m exceeds table limit 2^20 for p = " + std::to_string(p) +
                            ", m = " + std::to_string(m));
        order *= p;
    }

    if (m == 1) {
        // Smallest monic linear polynomial is x itself.
        return FieldSpec(p, 1, {0, 1});
    }

    // Enumerate (c_0, ..., c_{m-1}) so that the first hit is the minimum
    // under low-degree-first comparison: c_0 is the outermost digit.
    std::vector<std::uint32_t> f(m + 1, 0);
    f[m] = 1;
    std::uint64_t total = order; // p^m candidate tails
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (unsigned i = m; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (is_irreducible(f, p, m)) return FieldSpec(p, m, f);
    }
    throw Error(ErrorCode::Internal, "no irreducible polynomial found"); // unreachable
}

std::vector<std::uint32_t> norm_table(const FieldSpec& f) {
    std::vector<std::uint32_t> table(f.order());
    for (std::uint64_t i = 0; i < f.order(); ++i)
        table[i] = static_cast<std::uint32_t>(f.norm(f.element(i)));
    return table;
}

CosetPartition subgroup_cosets(std::uint64_t p, std::uint64_t h) {
    if (!is_prime_u64(p))
        throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not prime");
    if (h == 0 || h > p - 1 || (p - 1) % h != 0)
        throw Error(ErrorCode::NotDivisor,
                    "h = " + std::to_string(h) + " does not divide p-1 = " + std::to_string(p - 1));

    CosetPartition cp;
    cp.p = p;
    cp.h = h;

    const std::uint64_t e = (p - 1) / h;
    std::vector<bool> in_h(p, false);
    for (std::uint64_t x = 1; x < p; ++x) in_h[powmod_u64(x, e, p)] = true;
    for (std::uint64_t x = 1; x < p; ++x)
        if (in_h[x]) cp.subgroup.push_back(x);

    std::vector<bool> seen(p, false);
    for (std::uint64_t g = 1; g < p; ++g) {
        if (seen[g]) continue;
        std::vector<std::uint64_t> coset;
        coset.reserve(cp.subgroup.size());
        for (auto s : cp.subgroup) {
            std::uint64_t y = mulmod_u64(g, s, p);
            seen[y] = true;
            coset.push_back(y);
        }
        std::sort(coset.begin(), coset.end());
        cp.cosets.push_back(std::move(coset));
    }
    return cp;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    // This witness set is exact for every 64-bit integer.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t find_prime(std::uint64_t h, std::uint64_t lo, std::uint64_t hi) {
    if (h == 0) throw Error(ErrorCode::BadParameters, "h must be positive");
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 2); p <= hi; ++p) {
        if (p % h == 1 % h && is_prime_u64(p)) return p;
        if (p == hi) break; // avoid wrap on hi == UINT64_MAX
    }
    throw Error(ErrorCode::NoPrimeInRange,
                "no prime p == 1 (mod " + std::to_string(h) + ") in [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
}

} // namespace exhyp
