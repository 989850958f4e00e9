#include "exhyp/product.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace exhyp {

namespace {

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace

std::uint64_t integer_root(std::uint64_t v, unsigned e) {
    if (e == 0) throw Error(ErrorCode::BadParameters, "zeroth root");
    if (e == 1 || v < 2) return v;
    std::uint64_t lo = 0, hi = v;
    // x^e <= v implies x <= 2^(64/e); tighten hi to avoid overflow checks.
    std::uint64_t cap = static_cast<std::uint64_t>(std::pow(static_cast<double>(v), 1.0 / e)) + 2;
    hi = std::min(hi, cap);
    auto pow_leq = [&](std::uint64_t x) {
        __uint128_t acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= x;
            if (acc > v) return false;
        }
        return true;
    };
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (pow_leq(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

UniformHypergraph build_product(const EdgeColoredBipartiteFamily& fam, int k, int rho,
                                std::uint64_t work_budget) {
    const int m = fam.class_count();
    const int side = fam.side_size();
    if (k < 1) throw Error(ErrorCode::BadParameters, "k must be >= 1");
    if (rho < 1 || rho > m)
        throw Error(ErrorCode::BadParameters, "rho must lie in [1, m]");

    // Colored pair lists: all_pairs in (a, b) lex order; per-color lists too.
    std::vector<std::pair<int, int>> all_pairs;
    std::vector<std::vector<std::pair<int, int>>> by_color(m + 1);
    for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b) {
            int c = fam.color_at(a, b);
            if (c > 0) {
                all_pairs.emplace_back(a, b);
                by_color[c].emplace_back(a, b);
            }
        }
    const std::uint64_t e_union = all_pairs.size();

    // Work estimate: the k-1 free positions run over every colored pair, the
    // last position only over the class completing the residue.
    double est = 1.0;
    for (int i = 0; i < k - 1; ++i) est *= static_cast<double>(e_union);
    double out_est = est * (k > 1 ? static_cast<double>(e_union) / std::max(1, m) : 1.0);
    if (est + out_est > static_cast<double>(work_budget))
        throw Error(ErrorCode::BudgetExceeded,
                    "product enumeration needs about " +
                        std::to_string(static_cast<std::uint64_t>(est + out_est)) +
                        " steps, budget is " + std::to_string(work_budget));

    const int n_total = 2 * k * side;
    std::vector<std::vector<int>> edges;
    std::vector<std::pair<int, int>> stack_pair(k);

    // Odometer over the first k-1 positions with residue bookkeeping; the
    // final position is restricted to the class that closes the sum.
    std::vector<std::size_t> pos(std::max(k - 1, 0), 0);
    bool done = false;
    while (!done) {
        int partial = 0;
        for (int i = 0; i < k - 1; ++i) {
            const auto& pr = all_pairs[pos[i]];
            stack_pair[i] = pr;
            partial += fam.color_at(pr.first, pr.second);
        }
        int need = ((rho - partial) % m + m) % m;
        if (need == 0) need = m;
        for (const auto& pr : by_color[need]) {
            stack_pair[k - 1] = pr;
            std::vector<int> edge(2 * k);
            for (int l = 0; l < k; ++l) {
                edge[2 * l] = (2 * l) * side + stack_pair[l].first;
                edge[2 * l + 1] = (2 * l + 1) * side + stack_pair[l].second;
            }
            edges.push_back(std::move(edge));
        }
        if (k == 1) break;
        int i = k - 2;
        while (i >= 0) {
            if (++pos[i] < all_pairs.size()) break;
            pos[i] = 0;
            --i;
        }
        if (i < 0) done = true;
    }

    std::sort(edges.begin(), edges.end());
    std::vector<int> parts(2 * k, side);
    return UniformHypergraph::build(2 * k, n_total, std::move(edges), parts);
}

namespace {

// dp[j] = number of k-tuples of colored pairs with color sum == j (mod m).
std::vector<BigInt> color_sum_distribution(const EdgeColoredBipartiteFamily& fam, int k) {
    const int m = fam.class_count();
    auto sizes = fam.class_sizes();
    std::vector<BigInt> dp(m, 0);
    dp[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<BigInt> next(m, 0);
        for (int j = 0; j < m; ++j) {
            if (dp[j] == 0) continue;
            for (int c = 1; c <= m; ++c) {
                if (sizes[c] == 0) continue;
                next[(j + c) % m] += dp[j] * BigInt(sizes[c]);
            }
        }
        dp = std::move(next);
    }
    return dp;
}

} // namespace

UniformHypergraph pad_isolated(const UniformHypergraph& h, int n_total) {
    if (n_total < h.n())
        throw Error(ErrorCode::BadParameters, "padding target below the current vertex count");
    if (n_total == h.n()) return h;
    std::optional<std::vector<int>> parts = h.part_sizes();
    if (parts) parts->push_back(n_total - h.n());
    return UniformHypergraph::build(h.r(), n_total, h.edges(), std::move(parts));
}

BigInt residue_class_count(const EdgeColoredBipartiteFamily& fam, int k, int rho) {
    if (k < 1) throw Error(ErrorCode::BadParameters, "k must be >= 1");
    if (rho < 1 || rho > fam.class_count())
        throw Error(ErrorCode::BadParameters, "rho must lie in [1, m]");
    return color_sum_distribution(fam, k)[rho % fam.class_count()];
}

BestResidue best_residue(const EdgeColoredBipartiteFamily& fam, int k) {
    const int m = fam.class_count();
    if (k < 1) throw Error(ErrorCode::BadParameters, "k must be >= 1");
    std::vector<BigInt> dp = color_sum_distribution(fam, k);

    BestResidue best;
    BigInt total = 0;
    for (int rho = 1; rho <= m; ++rho) {
        const BigInt& cnt = dp[rho % m];
        total += cnt;
        if (rho == 1 || cnt > best.edges) {
            best.rho = rho;
            best.edges = cnt;
        }
    }

    // Pigeonhole: the classes partition the e^k pair tuples.
    BigInt ek = big_pow(BigInt(fam.union_edge_count()), static_cast<unsigned>(k));
    if (total != ek) throw Error(ErrorCode::Internal, "residue classes do not partition e^k");
    BigInt need = (ek + m - 1) / m;
    if (best.edges < need)
        throw Error(ErrorCode::Internal, "pigeonhole bound e^k/m violated");
    return best;
}

ConstructionReport construction_report(int s, long long t, int k, long long n_target) {
    if (s < 2 || k < 1 || n_target < 1)
        throw Error(ErrorCode::BadParameters, "need s >= 2, k >= 1, n_target >= 1");
    const std::uint64_t fact = factorial_u64(s - 1);
    if (t <= static_cast<long long>(fact))
        throw Error(ErrorCode::BadParameters,
                    "t must exceed (s-1)! = " + std::to_string(fact));

    // Largest h with h^(s-1) (s-1)! <= t-1, exact integer arithmetic.
    std::uint64_t h = integer_root(static_cast<std::uint64_t>(t - 1) / fact,
                                   static_cast<unsigned>(s - 1));
    if (h == 0) h = 1;

    // Prime window [max(2, W/2), W] with 2k W^(s-1) <= n.
    std::uint64_t budget_side = static_cast<std::uint64_t>(n_target) / (2ull * k);
    std::uint64_t w = integer_root(budget_side, static_cast<unsigned>(s - 1));
    if (w < 2)
        throw Error(ErrorCode::NoPrimeInRange,
                    "n_target too small: no room for a prime with 2k p^(s-1) <= n");
    std::uint64_t lo = std::max<std::uint64_t>(2, w / 2);
    std::uint64_t p = find_prime(h, lo, w);

    EdgeColoredBipartiteFamily fam = build_norm_partition(s, h, p);
    BestResidue best = best_residue(fam, k);

    ConstructionReport rep;
    rep.s = s;
    rep.t = t;
    rep.k = k;
    rep.h = h;
    rep.p = p;
    rep.m = fam.class_count();
    rep.rho = best.rho;
    rep.n = 2ll * k * fam.side_size();
    rep.edges = best.edges;
    double scale = std::pow(static_cast<double>(t), 1.0 / (s - 1)) *
                   std::pow(static_cast<double>(rep.n), 2.0 * k - 1.0 / (s - 1));
    rep.bound_ratio = static_cast<double>(rep.edges) / scale;
    return rep;
}

void write_report_csv(std::ostream& out, const std::vector<ConstructionReport>& rows) {
    out << "s,t,k,h,p,m,rho,n,edges,bound_ratio\n";
    for (const auto& r : rows) {
        out << r.s << ',' << r.t << ',' << r.k << ',' << r.h << ',' << r.p << ',' << r.m << ','
            << r.rho << ',' << r.n << ',' << r.edges.str() << ','
            << format_double12(r.bound_ratio) << '\n';
    }
}

std::vector<ConstructionReport> read_report_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || line != "s,t,k,h,p,m,rho,n,edges,bound_ratio")
        throw Error(ErrorCode::Io, name + ":1: bad or missing CSV header");
    std::vector<ConstructionReport> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 10)
            throw Error(ErrorCode::Io, name + ":" + std::to_string(lineno) + ": expected 10 fields");
        try {
            ConstructionReport r;
            r.s = std::stoi(fields[0]);
            r.t = std::stoll(fields[1]);
            r.k = std::stoi(fields[2]);
            r.h = std::stoull(fields[3]);
            r.p = std::stoull(fields[4]);
            r.m = std::stoi(fields[5]);
            r.rho = std::stoi(fields[6]);
            r.n = std::stoll(fields[7]);
            r.edges = BigInt(fields[8]);
            r.bound_ratio = std::stod(fields[9]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw Error(ErrorCode::Io, name + ":" + std::to_string(lineno) + ": malformed row");
        }
    }
    return rows;
}

} // namespace exhyp
