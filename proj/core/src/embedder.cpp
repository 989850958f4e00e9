#include "exhyp/embedder.hpp"

#include <algorithm>
#include <map>

#include "exhyp/drc.hpp"

namespace exhyp {

std::size_t RichPairGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adj) twice += row.count();
    return twice / 2;
}

RichPairGraph build_rich_pair_graph(const UniformHypergraph& host, const std::vector<int>& vertices,
                                    long long q, SearchBudget* budget) {
    RichPairGraph g;
    g.vertices = vertices;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    g.q = q;
    const int a = g.size();
    g.adj.assign(a, Bitset(a));
    for (int i = 0; i < a; ++i) {
        for (int j = i + 1; j < a; ++j) {
            auto res = is_t_rich(host, {g.vertices[i], g.vertices[j]}, q, budget);
            if (res.budget())
                throw Error(ErrorCode::BudgetExceeded, "rich-pair graph build ran out of budget");
            if (res.found()) {
                g.adj[i].set(j);
                g.adj[j].set(i);
            }
        }
    }
    return g;
}

std::vector<int> peel(const RichPairGraph& g, const Rational& fraction) {
    if (!(fraction > 0) || !(fraction < 1))
        throw Error(ErrorCode::BadParameters, "fraction must lie in (0,1)");
    const int a0 = g.size();
    std::vector<char> alive(a0, 1);
    std::vector<int> deg(a0, 0);
    int size = a0;
    for (int i = 0; i < a0; ++i) deg[i] = static_cast<int>(g.adj[i].count());

    while (size > 0) {
        int victim = -1;
        for (int i = 0; i < a0; ++i) {
            if (!alive[i]) continue;
            // deg < fraction * size, compared exactly
            if (Rational(deg[i]) < fraction * size) {
                victim = i;
                break;
            }
        }
        if (victim < 0) break;
        alive[victim] = 0;
        --size;
        g.adj[victim].for_each([&](std::size_t j) {
            if (alive[j]) --deg[j];
        });
    }

    std::vector<int> out;
    std::vector<int> local;
    for (int i = 0; i < a0; ++i)
        if (alive[i]) {
            out.push_back(g.vertices[i]);
            local.push_back(i);
        }

    // Termination gives the degree lower bound on every survivor.
    for (int i : local)
        if (Rational(deg[i]) < fraction * size)
            throw Error(ErrorCode::Internal, "peel terminated with a violating vertex");

    // Counting bound, specific to the 3/4 fraction: many deletions certify
    // many non-edges in the input graph.
    if (fraction == Rational(3, 4) && a0 >= 32 && 2 * (a0 - size) >= a0) {
        BigInt pairs = binomial_big(a0, 2);
        BigInt non_edges = pairs - BigInt(static_cast<long long>(g.edge_count()));
        if (!(100 * non_edges > pairs))
            throw Error(ErrorCode::Internal, "peel deleted half of A without enough non-edges");
    }

    // Common-neighbour floor: deg(u) + deg(v) - |A'| with both degrees at
    // least ceil(fraction * |A'|).
    if (size >= 2) {
        BigInt num = numerator(fraction), den = denominator(fraction);
        long long min_deg = static_cast<long long>((num * size + den - 1) / den); // ceil
        long long floor_bound = std::max<long long>(0, 2 * min_deg - size);
        for (std::size_t x = 0; x < local.size(); ++x)
            for (std::size_t y = x + 1; y < local.size(); ++y) {
                long long common = 0;
                g.adj[local[x]].for_each([&](std::size_t j) {
                    if (alive[j] && g.adj[local[y]].test(j)) ++common;
                });
                if (common < floor_bound)
                    throw Error(ErrorCode::Internal, "common rich-partner bound violated");
            }
    }
    return out;
}

namespace {

// Pair-richness cache keyed on host vertex ids.
struct RichCache {
    const UniformHypergraph& host;
    long long q;
    SearchBudget* budget;
    std::map<std::pair<int, int>, bool> cache;

    bool rich(int u, int v) {
        auto key = std::minmax(u, v);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto res = is_t_rich(host, {key.first, key.second}, q, budget);
        if (res.budget()) throw Error(ErrorCode::BudgetExceeded, "richness check ran out of budget");
        bool rich = res.found();
        cache.emplace(key, rich);
        return rich;
    }
};

} // namespace

EmbedResult find_cycle(const UniformHypergraph& host, int t, CycleSearchParams params) {
    if (t < 2) throw Error(ErrorCode::BadParameters, "cycle length parameter t must be >= 2");
    const int r = host.r();

    EmbedResult res;
    const long long q = params.q > 0 ? params.q : static_cast<long long>(r) * t;

    DrcParams dp;
    dp.s = 2;
    dp.t = q;
    dp.r = r;
    dp.alpha = params.alpha;
    dp.C = params.C;
    dp.n = host.n();

    DrcRun run = drc_prepare(host, dp, params.tuple_budget);
    if (run.table.tuples.empty()) {
        res.fail_reason = "co-degree pruning left no weighted tuples";
        return res;
    }

    RichCache cache{host, q, params.budget, {}};

    // Candidate A sets: every distinct tuple set (exhaustive, the default at
    // desk scale) or the sets seen across a seed sweep.
    std::vector<std::vector<int>> candidates;
    if (host.n() < params.exhaustive_below) {
        std::vector<std::vector<int>> seen;
        for (const auto& wt : run.table.tuples) {
            std::vector<int> set = wt.tuple;
            std::sort(set.begin(), set.end());
            if (std::find(seen.begin(), seen.end(), set) != seen.end()) continue;
            seen.push_back(set);
            candidates.push_back(filter_set(run.pruned, set));
        }
    } else {
        for (unsigned sd = 0; sd < params.seed_sweep; ++sd) {
            DrcOutcome out = drc_draw(run, sd);
            if (out.status == DrcStatus::TupleChosen) candidates.push_back(out.vertex_set);
        }
    }

    // Score by the extraction objective C(|A|,2) - alpha * b with b the
    // number of non-q-rich pairs inside A; first maximizer wins.
    const std::vector<int>* best = nullptr;
    Rational best_score;
    for (const auto& a_set : candidates) {
        long long nonrich = 0;
        for (std::size_t i = 0; i < a_set.size(); ++i)
            for (std::size_t j = i + 1; j < a_set.size(); ++j)
                if (!cache.rich(a_set[i], a_set[j])) ++nonrich;
        Rational score = Rational(binomial_big(static_cast<long long>(a_set.size()), 2)) -
                         params.alpha * nonrich;
        if (!best || score > best_score) {
            best = &a_set;
            best_score = score;
        }
    }
    if (!best || best->empty()) {
        res.fail_reason = "no extraction outcome beats the empty set "
                          "(every candidate A is empty or dominated by non-rich pairs)";
        return res;
    }

    // Rich-pair graph on the chosen A, straight from the cached verdicts.
    RichPairGraph rich;
    rich.vertices = *best;
    rich.q = q;
    rich.adj.assign(rich.size(), Bitset(rich.size()));
    for (int i = 0; i < rich.size(); ++i)
        for (int j = i + 1; j < rich.size(); ++j)
            if (cache.rich(rich.vertices[i], rich.vertices[j])) {
                rich.adj[i].set(j);
                rich.adj[j].set(i);
            }

    std::vector<int> core = peel(rich);
    if (core.size() < static_cast<std::size_t>(t)) {
        res.fail_reason = "peeled core smaller than t (|A'| = " + std::to_string(core.size()) + ")";
        return res;
    }

    // Greedy closed walk: x_1, then neighbours, closing at a common rich
    // partner of x_{t-1} and x_1.
    std::vector<int> xs;
    std::vector<char> used_core(core.size(), 0);
    auto rich_in_core = [&](int u, int v) { return cache.rich(u, v); };

    int x1 = -1, x2 = -1;
    for (std::size_t i = 0; i < core.size() && x1 < 0; ++i)
        for (std::size_t j = i + 1; j < core.size(); ++j)
            if (rich_in_core(core[i], core[j])) {
                x1 = static_cast<int>(i);
                x2 = static_cast<int>(j);
                break;
            }
    if (x1 < 0) {
        res.fail_reason = "no rich pair survived peeling";
        return res;
    }
    xs.push_back(core[x1]);
    used_core[x1] = 1;
    xs.push_back(core[x2]);
    used_core[x2] = 1;
    for (int step = 2; step < t; ++step) {
        bool closing = step == t - 1;
        int found = -1;
        for (std::size_t i = 0; i < core.size(); ++i) {
            if (used_core[i]) continue;
            if (!rich_in_core(core[i], xs.back())) continue;
            if (closing && !rich_in_core(core[i], xs.front())) continue;
            found = static_cast<int>(i);
            break;
        }
        if (found < 0) {
            res.fail_reason = closing ? "no unused common rich partner closes the cycle"
                                      : "greedy walk has no unused rich partner";
            return res;
        }
        xs.push_back(core[found]);
        used_core[found] = 1;
    }

    // Pairwise disjoint Y_i from the common links of consecutive pairs.
    std::vector<char> used(host.n(), 0);
    for (int x : xs) used[x] = 1;
    std::vector<std::vector<int>> ys(t);
    for (int i = 0; i < t; ++i) {
        int a = xs[i], b = xs[(i + 1) % t];
        bool placed = false;
        for (const auto& cand : common_link(host, {std::min(a, b), std::max(a, b)})) {
            bool free = true;
            for (int v : cand)
                if (used[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int v : cand) used[v] = 1;
            ys[i] = cand;
            placed = true;
            break;
        }
        if (!placed) {
            res.fail_reason = "greedy Y_" + std::to_string(i + 1) + " found no disjoint link member";
            return res;
        }
    }

    res.embedding = PatternEmbedding{std::move(xs), std::move(ys)};
    return res;
}

EmbedResult embed_from_rich_core(const UniformHypergraph& host, const BipartitePattern& pattern,
                                 const std::vector<int>& rich_core, bool validate_precondition,
                                 SearchBudget* budget) {
    EmbedResult res;
    const int r = host.r();
    const int needed = pattern.blowup_vertex_count(r);
    if (needed > host.n())
        throw Error(ErrorCode::PatternTooLarge,
                    "blow-up has " + std::to_string(needed) + " vertices, host has " +
                        std::to_string(host.n()));

    std::vector<int> core = rich_core;
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    if (static_cast<int>(core.size()) < pattern.x_size) {
        res.fail_reason = "rich core smaller than |X|";
        return res;
    }

    if (validate_precondition) {
        // Every s-subset of the core must be t-rich with s the largest
        // Y-degree and t the blow-up's vertex count.
        int s = 0;
        for (const auto& nb : pattern.y_neighbors) s = std::max(s, static_cast<int>(nb.size()));
        std::vector<int> pick(s);
        for (int i = 0; i < s; ++i) pick[i] = i;
        const int a = static_cast<int>(core.size());
        if (a >= s)
            while (true) {
                std::vector<int> subset(s);
                for (int i = 0; i < s; ++i) subset[i] = core[pick[i]];
                auto rr = is_t_rich(host, subset, needed, budget);
                if (rr.budget())
                    throw Error(ErrorCode::BudgetExceeded, "precondition check ran out of budget");
                if (!rr.found()) {
                    res.fail_reason = "precondition failed: an s-subset of the core is not t-rich";
                    return res;
                }
                int i = s - 1;
                while (i >= 0 && pick[i] == a - s + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
    }

    PatternEmbedding emb;
    emb.x_images.assign(core.begin(), core.begin() + pattern.x_size);
    emb.y_images.assign(pattern.y_neighbors.size(), {});

    std::vector<char> used(host.n(), 0);
    for (int v : emb.x_images) used[v] = 1;

    for (std::size_t yi = 0; yi < pattern.y_neighbors.size(); ++yi) {
        std::vector<int> anchors;
        for (int x : pattern.y_neighbors[yi]) anchors.push_back(emb.x_images[x]);
        std::sort(anchors.begin(), anchors.end());
        bool placed = false;
        for (const auto& cand : common_link(host, anchors)) {
            if (budget && !budget->tick())
                throw Error(ErrorCode::BudgetExceeded, "greedy embedding ran out of budget");
            bool free = true;
            for (int v : cand)
                if (used[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int v : cand) used[v] = 1;
            emb.y_images[yi] = cand;
            placed = true;
            break;
        }
        if (!placed) {
            res.fail_reason = "greedy choice for Y_" + std::to_string(yi + 1) + " blocked";
            return res;
        }
    }

    res.embedding = std::move(emb);
    return res;
}

} // namespace exhyp
