#include "exhyp/verifier.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace exhyp {

BipartitePattern BipartitePattern::complete(int s, int t) {
    if (s < 1 || t < 1) throw Error(ErrorCode::BadParameters, "K_{s,t} needs s, t >= 1");
    BipartitePattern p;
    p.x_size = s;
    std::vector<int> all(s);
    for (int i = 0; i < s; ++i) all[i] = i;
    p.y_neighbors.assign(t, all);
    return p;
}

BipartitePattern BipartitePattern::cycle(int t) {
    if (t < 2) throw Error(ErrorCode::BadParameters, "C_{2t} needs t >= 2");
    BipartitePattern p;
    p.x_size = t;
    for (int i = 0; i < t; ++i) {
        int a = i, b = (i + 1) % t;
        if (a > b) std::swap(a, b);
        p.y_neighbors.push_back({a, b});
    }
    return p;
}

std::vector<std::vector<int>> common_link(const UniformHypergraph& h,
                                          const std::vector<int>& s_set) {
    if (s_set.empty()) throw Error(ErrorCode::BadParameters, "common link of an empty set");
    std::vector<int> s_sorted = s_set;
    std::sort(s_sorted.begin(), s_sorted.end());
    for (std::size_t i = 0; i < s_sorted.size(); ++i) {
        if (s_sorted[i] < 0 || s_sorted[i] >= h.n())
            throw Error(ErrorCode::VertexOutOfRange, "common link vertex out of range");
        if (i > 0 && s_sorted[i] == s_sorted[i - 1])
            throw Error(ErrorCode::BadParameters, "common link set has a repeat");
    }

    const int u0 = s_sorted[0];
    std::vector<std::vector<int>> out;
    std::vector<int> probe;
    h.incidence(u0).for_each([&](std::size_t ei) {
        const auto& e = h.edges()[ei];
        // T = e - {u0} must avoid all of S.
        std::vector<int> t;
        t.reserve(e.size() - 1);
        for (int v : e) {
            if (v == u0) continue;
            if (std::binary_search(s_sorted.begin(), s_sorted.end(), v)) return;
            t.push_back(v);
        }
        for (std::size_t i = 1; i < s_sorted.size(); ++i) {
            probe = t;
            probe.insert(std::lower_bound(probe.begin(), probe.end(), s_sorted[i]), s_sorted[i]);
            if (!h.has_edge(probe)) return;
        }
        out.push_back(std::move(t));
    });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Exact disjoint-packing search in a list of (r-1)-sets. Candidates are
// reordered scarcest-vertex-first; a greedy pass at each node short-circuits
// success, and failure is only reported after exhausting the tree.
class MatchingSearch {
public:
    MatchingSearch(const std::vector<std::vector<int>>& candidates, int n, long long target,
                   SearchBudget* budget)
        : n_(n), target_(target), budget_(budget) {
        order_.resize(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) order_[i] = static_cast<int>(i);
        std::vector<int> freq(n, 0);
        for (const auto& c : candidates)
            for (int v : c) ++freq[v];
        std::vector<int> scarcity(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int mn = freq[candidates[i][0]];
            for (int v : candidates[i]) mn = std::min(mn, freq[v]);
            scarcity[i] = mn;
        }
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (scarcity[a] != scarcity[b]) return scarcity[a] < scarcity[b];
            return candidates[a] < candidates[b];
        });
        sorted_.reserve(candidates.size());
        for (int i : order_) sorted_.push_back(candidates[i]);
    }

    SearchStatus run(std::vector<std::vector<int>>& picked) {
        used_.assign(n_, false);
        picked.clear();
        if (target_ == 0) return SearchStatus::Found;
        return recurse(0, picked);
    }

private:
    SearchStatus recurse(std::size_t from, std::vector<std::vector<int>>& picked) {
        if (budget_ && !budget_->tick()) return SearchStatus::Budget;

        // Greedy lower bound: if a straight sweep already completes the
        // packing, take it verbatim.
        {
            std::vector<std::size_t> greedy;
            std::vector<bool> tmp = used_;
            for (std::size_t i = from; i < sorted_.size(); ++i) {
                if (static_cast<long long>(picked.size() + greedy.size()) >= target_) break;
                bool free = true;
                for (int v : sorted_[i])
                    if (tmp[v]) {
                        free = false;
                        break;
                    }
                if (free) {
                    greedy.push_back(i);
                    for (int v : sorted_[i]) tmp[v] = true;
                }
            }
            if (static_cast<long long>(picked.size() + greedy.size()) >= target_) {
                for (std::size_t i : greedy) picked.push_back(sorted_[i]);
                return SearchStatus::Found;
            }
        }

        // Optimistic upper bound: even taking every remaining disjoint
        // candidate cannot reach the target.
        std::size_t avail = 0;
        for (std::size_t i = from; i < sorted_.size(); ++i) {
            bool free = true;
            for (int v : sorted_[i])
                if (used_[v]) {
                    free = false;
                    break;
                }
            if (free) ++avail;
        }
        if (static_cast<long long>(picked.size() + avail) < target_) return SearchStatus::Exhausted;

        for (std::size_t i = from; i < sorted_.size(); ++i) {
            bool free = true;
            for (int v : sorted_[i])
                if (used_[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int v : sorted_[i]) used_[v] = true;
            picked.push_back(sorted_[i]);
            if (static_cast<long long>(picked.size()) >= target_) return SearchStatus::Found;
            SearchStatus st = recurse(i + 1, picked);
            if (st != SearchStatus::Exhausted) return st;
            picked.pop_back();
            for (int v : sorted_[i]) used_[v] = false;
        }
        return SearchStatus::Exhausted;
    }

    int n_;
    long long target_;
    SearchBudget* budget_;
    std::vector<int> order_;
    std::vector<std::vector<int>> sorted_;
    std::vector<bool> used_;
};

} // namespace

SearchResult<RichCertificate> is_t_rich(const UniformHypergraph& h, std::vector<int> s_set,
                                        long long t, SearchBudget* budget) {
    if (s_set.empty() || t < 1)
        throw Error(ErrorCode::BadParameters, "need |S| >= 1 and t >= 1");
    std::sort(s_set.begin(), s_set.end());
    auto link = common_link(h, s_set); // validates vertices

    SearchResult<RichCertificate> res;
    if (static_cast<long long>(link.size()) < t) {
        res.status = SearchStatus::Exhausted;
        return res;
    }
    MatchingSearch search(link, h.n(), t, budget);
    std::vector<std::vector<int>> picked;
    res.status = search.run(picked);
    if (res.status == SearchStatus::Found) {
        std::sort(picked.begin(), picked.end());
        res.value = RichCertificate{std::move(s_set), std::move(picked)};
    }
    return res;
}

SearchResult<RichCertificate> find_kst(const UniformHypergraph& h, int s, long long t,
                                       SearchBudget* budget) {
    if (s < 1 || t < 1) throw Error(ErrorCode::BadParameters, "need s >= 1 and t >= 1");
    SearchResult<RichCertificate> res;
    if (s > h.n()) {
        res.status = SearchStatus::Exhausted;
        return res;
    }

    std::vector<int> s_set(s);
    for (int i = 0; i < s; ++i) s_set[i] = i;
    while (true) {
        if (budget && !budget->tick()) {
            res.status = SearchStatus::Budget;
            return res;
        }
        auto link = common_link(h, s_set);
        if (static_cast<long long>(link.size()) >= t) {
            MatchingSearch search(link, h.n(), t, budget);
            std::vector<std::vector<int>> picked;
            SearchStatus st = search.run(picked);
            if (st == SearchStatus::Budget) {
                res.status = SearchStatus::Budget;
                return res;
            }
            if (st == SearchStatus::Found) {
                std::sort(picked.begin(), picked.end());
                res.status = SearchStatus::Found;
                res.value = RichCertificate{s_set, std::move(picked)};
                return res;
            }
        }
        // next s-subset in lexicographic order
        int i = s - 1;
        while (i >= 0 && s_set[i] == h.n() - s + i) --i;
        if (i < 0) break;
        ++s_set[i];
        for (int j = i + 1; j < s; ++j) s_set[j] = s_set[j - 1] + 1;
    }
    res.status = SearchStatus::Exhausted;
    return res;
}

namespace {

struct PatternSearch {
    const UniformHypergraph& h;
    const BipartitePattern& p;
    SearchBudget* budget;
    std::vector<int> y_order;       // decreasing degree, stable by index
    std::vector<bool> used;
    std::vector<int> x_images;
    std::vector<std::vector<int>> y_images;

    SearchStatus embed_y(std::size_t yi) {
        if (yi == y_order.size()) return SearchStatus::Found;
        if (budget && !budget->tick()) return SearchStatus::Budget;
        int y = y_order[yi];
        std::vector<int> anchors;
        anchors.reserve(p.y_neighbors[y].size());
        for (int x : p.y_neighbors[y]) anchors.push_back(x_images[x]);
        std::sort(anchors.begin(), anchors.end());
        for (const auto& t : common_link(h, anchors)) {
            bool free = true;
            for (int v : t)
                if (used[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int v : t) used[v] = true;
            y_images[y] = t;
            SearchStatus st = embed_y(yi + 1);
            if (st != SearchStatus::Exhausted) return st;
            for (int v : t) used[v] = false;
            y_images[y].clear();
        }
        return SearchStatus::Exhausted;
    }

    SearchStatus embed_x(int xi) {
        if (xi == p.x_size) return embed_y(0);
        if (budget && !budget->tick()) return SearchStatus::Budget;
        for (int v = 0; v < h.n(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            x_images[xi] = v;
            SearchStatus st = embed_x(xi + 1);
            if (st != SearchStatus::Exhausted) return st;
            used[v] = false;
        }
        return SearchStatus::Exhausted;
    }
};

void validate_pattern(const BipartitePattern& p) {
    if (p.x_size < 1) throw Error(ErrorCode::BadParameters, "pattern needs |X| >= 1");
    if (p.y_neighbors.empty()) throw Error(ErrorCode::BadParameters, "pattern needs |Y| >= 1");
    for (const auto& nb : p.y_neighbors) {
        if (nb.empty()) throw Error(ErrorCode::BadParameters, "every Y-vertex needs degree >= 1");
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] < 0 || nb[i] >= p.x_size)
                throw Error(ErrorCode::BadParameters, "pattern adjacency out of range");
            if (i > 0 && nb[i] <= nb[i - 1])
                throw Error(ErrorCode::BadParameters, "pattern adjacency not strictly ascending");
        }
    }
}

} // namespace

SearchResult<PatternEmbedding> find_pattern(const UniformHypergraph& h, const BipartitePattern& p,
                                            SearchBudget* budget) {
    validate_pattern(p);
    if (p.blowup_vertex_count(h.r()) > h.n())
        throw Error(ErrorCode::PatternTooLarge,
                    "blow-up has " + std::to_string(p.blowup_vertex_count(h.r())) +
                        " vertices, host has " + std::to_string(h.n()));

    PatternSearch ps{h, p, budget, {}, {}, {}, {}};
    ps.y_order.resize(p.y_neighbors.size());
    for (std::size_t i = 0; i < ps.y_order.size(); ++i) ps.y_order[i] = static_cast<int>(i);
    std::stable_sort(ps.y_order.begin(), ps.y_order.end(), [&](int a, int b) {
        return p.y_neighbors[a].size() > p.y_neighbors[b].size();
    });
    ps.used.assign(h.n(), false);
    ps.x_images.assign(p.x_size, -1);
    ps.y_images.assign(p.y_neighbors.size(), {});

    SearchResult<PatternEmbedding> res;
    res.status = ps.embed_x(0);
    if (res.status == SearchStatus::Found)
        res.value = PatternEmbedding{std::move(ps.x_images), std::move(ps.y_images)};
    return res;
}

bool validate_certificate(const UniformHypergraph& h, const RichCertificate& cert) {
    std::vector<int> seen;
    auto add_all = [&](const std::vector<int>& vs) {
        for (int v : vs) {
            if (v < 0 || v >= h.n()) return false;
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
            seen.push_back(v);
        }
        return true;
    };
    if (cert.s_set.empty() || !add_all(cert.s_set)) return false;
    for (const auto& t : cert.witnesses) {
        if (static_cast<int>(t.size()) != h.r() - 1) return false;
        if (!add_all(t)) return false;
    }
    std::vector<int> probe;
    for (const auto& t : cert.witnesses) {
        for (int u : cert.s_set) {
            probe = t;
            probe.push_back(u);
            std::sort(probe.begin(), probe.end());
            if (!h.has_edge(probe)) return false;
        }
    }
    return true;
}

bool validate_embedding(const UniformHypergraph& h, const BipartitePattern& p,
                        const PatternEmbedding& emb) {
    if (static_cast<int>(emb.x_images.size()) != p.x_size) return false;
    if (emb.y_images.size() != p.y_neighbors.size()) return false;
    std::vector<int> seen;
    auto add_all = [&](const std::vector<int>& vs) {
        for (int v : vs) {
            if (v < 0 || v >= h.n()) return false;
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
            seen.push_back(v);
        }
        return true;
    };
    if (!add_all(emb.x_images)) return false;
    for (const auto& t : emb.y_images) {
        if (static_cast<int>(t.size()) != h.r() - 1) return false;
        if (!add_all(t)) return false;
    }
    std::vector<int> probe;
    for (std::size_t yi = 0; yi < p.y_neighbors.size(); ++yi) {
        for (int x : p.y_neighbors[yi]) {
            probe = emb.y_images[yi];
            probe.push_back(emb.x_images[x]);
            std::sort(probe.begin(), probe.end());
            if (!h.has_edge(probe)) return false;
        }
    }
    return true;
}

void write_certificate(std::ostream& out, const RichCertificate& cert) {
    out << "certificate s=" << cert.s_set.size() << " t=" << cert.witnesses.size() << '\n';
    for (std::size_t i = 0; i < cert.s_set.size(); ++i) {
        if (i) out << ' ';
        out << cert.s_set[i];
    }
    out << '\n';
    for (const auto& t : cert.witnesses) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out << ' ';
            out << t[i];
        }
        out << '\n';
    }
}

void write_embedding(std::ostream& out, const BipartitePattern& p, int r,
                     const PatternEmbedding& emb) {
    out << "pattern x=" << p.x_size << " m=" << p.y_size() << " r=" << r << '\n';
    for (std::size_t i = 0; i < emb.x_images.size(); ++i) {
        if (i) out << ' ';
        out << emb.x_images[i];
    }
    out << '\n';
    for (const auto& t : emb.y_images) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out << ' ';
            out << t[i];
        }
        out << '\n';
    }
}

BipartitePattern read_pattern(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::Io, name + ":1: missing header");
    std::istringstream head(line);
    std::string magic;
    long long xsize = 0, m = 0;
    if (!(head >> magic >> xsize >> m) || magic != "pattern")
        throw Error(ErrorCode::Io, name + ":1: expected header 'pattern <xsize> <m>'");
    if (xsize < 1 || m < 1) throw Error(ErrorCode::Io, name + ":1: sizes must be positive");

    BipartitePattern p;
    p.x_size = static_cast<int>(xsize);
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw Error(ErrorCode::Io, name + ":" + std::to_string(2 + i) + ": unexpected end of file");
        std::istringstream ls(line);
        std::vector<int> nb;
        long long x;
        while (ls >> x) {
            if (x < 0 || x >= xsize)
                throw Error(ErrorCode::Io,
                            name + ":" + std::to_string(2 + i) + ": X index out of range");
            nb.push_back(static_cast<int>(x));
        }
        if (nb.empty())
            throw Error(ErrorCode::Io, name + ":" + std::to_string(2 + i) + ": empty adjacency");
        for (std::size_t j = 1; j < nb.size(); ++j)
            if (nb[j] <= nb[j - 1])
                throw Error(ErrorCode::Io,
                            name + ":" + std::to_string(2 + i) + ": indices not strictly ascending");
        p.y_neighbors.push_back(std::move(nb));
    }
    return p;
}

BipartitePattern read_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return read_pattern(in, path);
}

} // namespace exhyp
