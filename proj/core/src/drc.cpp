#include "exhyp/drc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "exhyp/verifier.hpp"

namespace exhyp {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Smallest integer q >= 1 with q^e >= value.
long long ceil_root(const Rational& value, unsigned e) {
    if (value <= 0) return 1;
    double approx = std::pow(static_cast<double>(value), 1.0 / e);
    long long q = std::max<long long>(1, static_cast<long long>(approx) - 2);
    while (rat_pow(Rational(q), e) < value) ++q;
    while (q > 1 && rat_pow(Rational(q - 1), e) >= value) --q;
    return q;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

Rational DrcParams::default_constant(int s, int r) {
    if (s < 2 || r < 3) throw Error(ErrorCode::BadParameters, "need s >= 2 and r >= 3");
    // C^(s-1) >= (1 + r^2) 2^s r! s^s / ((r-1)!)^s
    Rational rhs = Rational(1 + r * r) * rat_pow(Rational(2), s) * Rational(factorial_big(r)) *
                   rat_pow(Rational(s), s) / rat_pow(Rational(factorial_big(r - 1)), s);
    long long c = ceil_root(rhs, static_cast<unsigned>(s - 1));
    return Rational(std::max<long long>(c, 4ll * s));
}

Rational DrcParams::d_power() const {
    // D^(s-1) = (C/2)^(s-1) alpha t n^(s-2)
    return rat_pow(C / 2, static_cast<unsigned>(s - 1)) * alpha * Rational(t) *
           rat_pow(Rational(n), static_cast<unsigned>(s - 2));
}

long long DrcParams::prune_threshold() const {
    return ceil_root(d_power(), static_cast<unsigned>(s - 1));
}

Rational DrcParams::weight_constant() const {
    if (s == 2) return C * alpha * Rational(t) / 2;
    return Rational(prune_threshold());
}

void DrcParams::validate(const UniformHypergraph& host) const {
    if (s < 2) throw Error(ErrorCode::BadParameters, "s must be >= 2");
    if (t < 1) throw Error(ErrorCode::BadParameters, "t must be >= 1");
    if (r < 3) throw Error(ErrorCode::BadParameters, "r must be >= 3");
    if (!(alpha > 1)) throw Error(ErrorCode::BadParameters, "alpha must exceed 1");
    if (!(C > 0)) throw Error(ErrorCode::BadParameters, "C must be positive");
    if (r != host.r())
        throw Error(ErrorCode::BadParameters, "params r does not match the hypergraph");
    if (n != host.n())
        throw Error(ErrorCode::BadParameters, "params n does not match the hypergraph");
}

std::vector<int> filter_set(const UniformHypergraph& pruned, const std::vector<int>& tuple) {
    const int r = pruned.r();
    if (static_cast<int>(tuple.size()) != r - 1)
        throw Error(ErrorCode::BadArity, "tuple must have r-1 vertices");
    std::vector<int> set = tuple;
    std::sort(set.begin(), set.end());
    for (std::size_t i = 1; i < set.size(); ++i)
        if (set[i] == set[i - 1]) throw Error(ErrorCode::BadArity, "tuple has a repeated vertex");

    int d_tuple = pruned.codegree(set);
    std::vector<int> out;
    if (d_tuple == 0) return out;
    std::vector<int> sub(r - 1);
    for (int v1 : pruned.completions(set)) {
        std::vector<int> edge = set;
        edge.insert(std::lower_bound(edge.begin(), edge.end(), v1), v1);
        int mx = 0;
        for (int omit = 0; omit < r; ++omit) {
            int k = 0;
            for (int i = 0; i < r; ++i)
                if (i != omit) sub[k++] = edge[i];
            mx = std::max(mx, pruned.codegree(sub));
        }
        if (d_tuple == mx) out.push_back(v1);
    }
    return out;
}

DrcRun drc_prepare(const UniformHypergraph& host, const DrcParams& params,
                   std::uint64_t tuple_budget) {
    params.validate(host);

    DrcRun run;
    run.params = params;
    run.pruned = host.codegree_prune(static_cast<int>(params.prune_threshold()));

    const int r = host.r();
    const Rational dw = params.weight_constant();
    const Rational denom_scale = Rational(big_pow(BigInt(params.n), static_cast<unsigned>(r - 1)));

    auto index = run.pruned.codegree_index();
    BigInt perm = factorial_big(r - 1);
    BigInt tuple_count = BigInt(index.size()) * perm;
    if (tuple_count > BigInt(tuple_budget))
        throw Error(ErrorCode::BudgetExceeded,
                    "ordered tuple table would hold " + tuple_count.str() + " entries");

    run.table.total = 0;
    for (const auto& [set, d] : index) {
        if (d <= 0) continue;
        Rational w = dw / (denom_scale * d);
        std::vector<int> t = set;
        std::sort(t.begin(), t.end());
        do {
            run.table.tuples.push_back(WeightedTuple{t, w});
        } while (std::next_permutation(t.begin(), t.end()));
    }
    std::sort(run.table.tuples.begin(), run.table.tuples.end(),
              [](const WeightedTuple& a, const WeightedTuple& b) { return a.tuple < b.tuple; });

    Rational acc = 0;
    run.table.cumulative.reserve(run.table.tuples.size());
    for (const auto& wt : run.table.tuples) {
        acc += wt.weight;
        run.table.cumulative.push_back(acc);
    }
    run.table.total = acc;
    if (run.table.total > 1)
        throw Error(ErrorCode::Internal, "total sampling weight p exceeds 1 on pruned input");

    std::uint64_t h = 1469598103934665603ull;
    for (const auto& wt : run.table.tuples) {
        for (int v : wt.tuple) h = fnv1a(h, std::to_string(v) + ",");
        h = fnv1a(h, format_rational(wt.weight) + ";");
    }
    run.weights_hash = h;
    return run;
}

DrcOutcome drc_draw(const DrcRun& run, std::uint64_t seed) {
    DrcOutcome out;
    out.seed = seed;
    out.weights_hash = run.weights_hash;
    out.total_weight = run.table.total;

    if (run.table.tuples.empty()) {
        out.status = DrcStatus::EmptyAfterPrune;
        return out;
    }

    std::uint64_t state = seed;
    std::uint64_t hi = splitmix64_next(state);
    std::uint64_t lo = splitmix64_next(state);
    BigInt num = (BigInt(hi) << 64) | BigInt(lo);
    Rational u(num, BigInt(1) << 128);

    if (u >= run.table.total) {
        out.status = DrcStatus::EmptyDraw;
        return out;
    }
    auto it = std::upper_bound(run.table.cumulative.begin(), run.table.cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - run.table.cumulative.begin());
    out.status = DrcStatus::TupleChosen;
    out.tuple = run.table.tuples[idx].tuple;
    out.vertex_set = filter_set(run.pruned, out.tuple);
    return out;
}

DrcOutcome drc_sample(const UniformHypergraph& host, const DrcParams& params, std::uint64_t seed) {
    return drc_draw(drc_prepare(host, params), seed);
}

namespace {

void check_distinct_vertices(const UniformHypergraph& h, const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= h.n())
            throw Error(ErrorCode::VertexOutOfRange, "vertex out of range");
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) throw Error(ErrorCode::BadParameters, "vertices must be distinct");
    }
}

bool subset_of(const std::vector<int>& needles, const std::vector<int>& sorted_hay) {
    for (int x : needles)
        if (!std::binary_search(sorted_hay.begin(), sorted_hay.end(), x)) return false;
    return true;
}

} // namespace

Rational drc_claim3_probability(const DrcRun& run, const std::vector<int>& u_set,
                                const std::vector<int>& v_prefix) {
    const int r = run.pruned.r();
    if (static_cast<int>(v_prefix.size()) != r - 2)
        throw Error(ErrorCode::BadArity, "prefix must have r-2 vertices");
    std::vector<int> all = u_set;
    all.insert(all.end(), v_prefix.begin(), v_prefix.end());
    check_distinct_vertices(run.pruned, all);

    Rational p = 0;
    for (const auto& wt : run.table.tuples) {
        if (!std::equal(v_prefix.begin(), v_prefix.end(), wt.tuple.begin())) continue;
        std::vector<int> a = filter_set(run.pruned, wt.tuple);
        if (subset_of(u_set, a)) p += wt.weight;
    }
    return p;
}

Rational drc_claim4_probability(const DrcRun& run, const std::vector<int>& u_set, int v2) {
    std::vector<int> all = u_set;
    all.push_back(v2);
    check_distinct_vertices(run.pruned, all);

    Rational p = 0;
    for (const auto& wt : run.table.tuples) {
        if (wt.tuple[0] != v2) continue;
        std::vector<int> a = filter_set(run.pruned, wt.tuple);
        if (subset_of(u_set, a)) p += wt.weight;
    }
    return p;
}

Rational drc_subset_probability(const DrcRun& run, const std::vector<int>& u_set) {
    check_distinct_vertices(run.pruned, u_set);
    Rational p = 0;
    for (const auto& wt : run.table.tuples) {
        std::vector<int> a = filter_set(run.pruned, wt.tuple);
        if (subset_of(u_set, a)) p += wt.weight;
    }
    return p;
}

std::vector<DrcOutcomeStat> drc_outcome_scan(const DrcRun& run) {
    const int s = run.params.s;
    const long long t = run.params.t;

    std::map<std::vector<int>, Rational> weight_by_set;
    for (const auto& wt : run.table.tuples) {
        std::vector<int> set = wt.tuple;
        std::sort(set.begin(), set.end());
        weight_by_set[set] += wt.weight;
    }

    std::vector<DrcOutcomeStat> out;
    for (const auto& [set, w] : weight_by_set) {
        DrcOutcomeStat st;
        st.tuple_set = set;
        st.weight_total = w;
        st.vertex_set = filter_set(run.pruned, set);
        st.choose_s = binomial_big(static_cast<long long>(st.vertex_set.size()), s);

        // Count non-t-rich s-subsets of A.
        BigInt nonrich = 0;
        const int a = static_cast<int>(st.vertex_set.size());
        if (a >= s) {
            std::vector<int> pick(s);
            for (int i = 0; i < s; ++i) pick[i] = i;
            while (true) {
                std::vector<int> subset(s);
                for (int i = 0; i < s; ++i) subset[i] = st.vertex_set[pick[i]];
                if (!is_t_rich(run.pruned, subset, t).found()) ++nonrich;
                int i = s - 1;
                while (i >= 0 && pick[i] == a - s + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        st.nonrich_subsets = nonrich;
        out.push_back(std::move(st));
    }
    return out;
}

DrcExactStats drc_exact_stats(const UniformHypergraph& host, const DrcParams& params,
                              std::uint64_t budget) {
    params.validate(host);
    const int r = params.r;
    const int s = params.s;
    const long long n = params.n;

    double enum_work = 1.0;
    for (int i = 0; i < r - 1; ++i) enum_work *= static_cast<double>(n);
    if (enum_work > static_cast<double>(budget))
        throw Error(ErrorCode::BudgetExceeded, "n^(r-1) tuple enumeration exceeds the budget");

    DrcRun run = drc_prepare(host, params, budget);

    DrcExactStats st;
    st.params = params;
    st.pruned_edge_count = static_cast<long long>(run.pruned.edge_count());

    const Rational dw = params.weight_constant();
    BigInt perm = factorial_big(r - 1);

    // Per unordered set: d, weight, A.
    struct SetData {
        std::vector<int> set;
        int d = 0;
        Rational w;
        std::vector<int> a_sorted;
        long long a = 0;
    };
    std::vector<SetData> sets;
    {
        std::map<std::vector<int>, Rational> weight_by_set;
        for (const auto& wt : run.table.tuples) {
            std::vector<int> set = wt.tuple;
            std::sort(set.begin(), set.end());
            weight_by_set.try_emplace(set, wt.weight); // per-ordering weights are equal
        }
        for (const auto& [set, w] : weight_by_set) {
            SetData sd;
            sd.set = set;
            sd.d = run.pruned.codegree(set);
            sd.w = w;
            sd.a_sorted = filter_set(run.pruned, set);
            sd.a = static_cast<long long>(sd.a_sorted.size());
            sets.push_back(std::move(sd));
        }
    }

    // Claim 1 and the Hoelder chain, summed over ordered tuples.
    Rational sum_a = 0, sum_d = 0, e_pow = 0, p_total = 0, e_choose = 0;
    for (const auto& sd : sets) {
        sum_a += Rational(perm) * sd.a;
        sum_d += Rational(perm) * sd.d;
        e_pow += Rational(perm) * sd.w * rat_pow(Rational(sd.a), static_cast<unsigned>(s));
        p_total += Rational(perm) * sd.w;
        e_choose += Rational(perm) * sd.w * Rational(binomial_big(sd.a, s));
    }
    st.sum_a = sum_a;
    st.claim1_rhs = Rational(perm) * st.pruned_edge_count;
    st.p_total = p_total;
    st.expected_pow_s = e_pow;
    if (sum_d == 0) {
        st.holder_rhs = 0;
    } else {
        Rational npow = Rational(big_pow(BigInt(n), static_cast<unsigned>((r - 1) * (s - 1))));
        st.holder_rhs = dw / npow * rat_pow(sum_a, static_cast<unsigned>(s)) / sum_d;
    }

    const Rational n_rm1 = Rational(big_pow(BigInt(n), static_cast<unsigned>(r - 1)));
    st.claim3_rhs = dw / n_rm1;
    st.claim4_rhs = dw / Rational(BigInt(n) * n);
    st.claim5_rhs = Rational((r - 1) * (r - 1)) * Rational(params.t - 1) * dw / Rational(BigInt(n) * n);

    // Enumerate all s-subsets once; reused by claims 3, 4, 5.
    std::vector<std::vector<int>> s_subsets;
    if (n >= s) {
        std::vector<int> pick(s);
        for (int i = 0; i < s; ++i) pick[i] = i;
        while (true) {
            s_subsets.push_back(pick);
            int i = s - 1;
            while (i >= 0 && pick[i] == n - s + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    auto contains_any = [](const std::vector<int>& sorted_set, const std::vector<int>& vs) {
        for (int v : vs)
            if (std::binary_search(sorted_set.begin(), sorted_set.end(), v)) return true;
        return false;
    };

    // Claim 3: group sets by their (r-2)-subsets; an ordered prefix plus the
    // free last coordinate sums the weights of the supersets.
    st.claim3_max = 0;
    {
        std::map<std::vector<int>, std::vector<std::size_t>> by_prefix;
        std::vector<int> prefix(r - 2);
        for (std::size_t si = 0; si < sets.size(); ++si) {
            const auto& set = sets[si].set;
            for (int omit = 0; omit < r - 1; ++omit) {
                int k = 0;
                for (int i = 0; i < r - 1; ++i)
                    if (i != omit) prefix[k++] = set[i];
                by_prefix[prefix].push_back(si);
            }
        }
        for (const auto& [pref, members] : by_prefix) {
            for (const auto& u : s_subsets) {
                if (contains_any(pref, u)) continue;
                Rational p = 0;
                for (std::size_t si : members)
                    if (subset_of(u, sets[si].a_sorted)) p += sets[si].w;
                if (p > st.claim3_max) st.claim3_max = p;
            }
        }
    }

    // Claim 4: fix the first coordinate only; (r-2)! orderings per superset.
    st.claim4_max = 0;
    {
        BigInt tail_perm = factorial_big(r - 2);
        std::vector<std::vector<std::size_t>> by_vertex(n);
        for (std::size_t si = 0; si < sets.size(); ++si)
            for (int v : sets[si].set) by_vertex[v].push_back(si);
        for (int v = 0; v < n; ++v) {
            for (const auto& u : s_subsets) {
                if (std::binary_search(u.begin(), u.end(), v)) continue;
                Rational p = 0;
                for (std::size_t si : by_vertex[v])
                    if (subset_of(u, sets[si].a_sorted)) p += Rational(tail_perm) * sets[si].w;
                if (p > st.claim4_max) st.claim4_max = p;
            }
        }
    }

    // Claim 5: over non-t-rich s-sets of the pruned graph.
    st.claim5_max = 0;
    st.expected_nonrich = 0;
    for (const auto& u : s_subsets) {
        if (is_t_rich(run.pruned, u, params.t).found()) continue;
        Rational p = 0;
        for (const auto& sd : sets)
            if (subset_of(u, sd.a_sorted)) p += Rational(perm) * sd.w;
        st.expected_nonrich += p;
        if (p > st.claim5_max) st.claim5_max = p;
    }
    st.expected_nonrich_rhs = Rational(binomial_big(n, s)) * st.claim5_rhs;

    st.expected_choose = e_choose;
    st.expected_choose_rhs = Rational(binomial_big(n - (r - 1), s));
    return st;
}

std::vector<DrcClaimRow> DrcExactStats::rows() const {
    std::vector<DrcClaimRow> rows;
    rows.push_back({"claim1_sum", sum_a, claim1_rhs, sum_a >= claim1_rhs});
    rows.push_back({"p_le_1", p_total, Rational(1), p_total <= 1});
    rows.push_back({"claim2_holder", expected_pow_s, holder_rhs, expected_pow_s >= holder_rhs});
    rows.push_back({"claim3_prefix", claim3_max, claim3_rhs, claim3_max <= claim3_rhs});
    rows.push_back({"claim4_first", claim4_max, claim4_rhs, claim4_max <= claim4_rhs});
    rows.push_back({"claim5_nonrich", claim5_max, claim5_rhs, claim5_max <= claim5_rhs});
    rows.push_back(
        {"expected_b", expected_nonrich, expected_nonrich_rhs, expected_nonrich <= expected_nonrich_rhs});
    rows.push_back(
        {"expected_choose", expected_choose, expected_choose_rhs, expected_choose <= expected_choose_rhs});
    return rows;
}

bool DrcExactStats::all_ok() const {
    for (const auto& row : rows())
        if (!row.ok) return false;
    return true;
}

void write_claims_csv(std::ostream& out, const DrcExactStats& stats) {
    out << "claim_id,lhs,rhs,verdict\n";
    for (const auto& row : stats.rows())
        out << row.claim_id << ',' << format_rational(row.lhs) << ',' << format_rational(row.rhs)
            << ',' << (row.ok ? "OK" : "VIOLATED") << '\n';
}

} // namespace exhyp
