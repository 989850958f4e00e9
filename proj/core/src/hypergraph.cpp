#include "exhyp/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace exhyp {

namespace {

std::string tuple_to_string(const std::vector<int>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(t[i]);
    }
    return s;
}

} // namespace

UniformHypergraph UniformHypergraph::build(int r, int n, std::vector<std::vector<int>> edges,
                                           std::optional<std::vector<int>> part_sizes) {
    if (r < 2) throw Error(ErrorCode::BadArity, "uniformity must be >= 2");
    if (n < 0) throw Error(ErrorCode::BadParameters, "negative vertex count");
    if (part_sizes) {
        long long total = 0;
        for (int s : *part_sizes) {
            if (s < 0) throw Error(ErrorCode::BadParameters, "negative part size");
            total += s;
        }
        if (total != n)
            throw Error(ErrorCode::PartiteViolation, "part sizes do not sum to n");
    }

    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != r)
            throw Error(ErrorCode::BadArity,
                        "edge {" + tuple_to_string(e) + "} does not have " + std::to_string(r) +
                            " distinct vertices");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n)
                throw Error(ErrorCode::VertexOutOfRange,
                            "vertex " + std::to_string(e[i]) + " out of range [0, " +
                                std::to_string(n) + ")");
            if (i > 0 && e[i] <= e[i - 1])
                throw Error(ErrorCode::BadArity,
                            "edge {" + tuple_to_string(e) + "} is not strictly increasing");
        }
    }

    if (part_sizes) {
        // r-partite validity: each edge meets each block at most once.
        std::vector<int> block_of(n, -1);
        int v = 0, b = 0;
        for (int s : *part_sizes) {
            for (int i = 0; i < s; ++i) block_of[v++] = b;
            ++b;
        }
        for (const auto& e : edges) {
            std::vector<int> seen;
            for (int u : e) {
                int blk = block_of[u];
                if (std::find(seen.begin(), seen.end(), blk) != seen.end())
                    throw Error(ErrorCode::PartiteViolation,
                                "edge {" + tuple_to_string(e) + "} meets a block twice");
                seen.push_back(blk);
            }
        }
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return make_unchecked(r, n, std::move(edges), std::move(part_sizes));
}

UniformHypergraph UniformHypergraph::make_unchecked(int r, int n,
                                                    std::vector<std::vector<int>> edges,
                                                    std::optional<std::vector<int>> part_sizes) {
    UniformHypergraph h;
    h.r_ = r;
    h.n_ = n;
    h.edges_ = std::move(edges);
    h.part_sizes_ = std::move(part_sizes);
    h.build_incidence();
    return h;
}

void UniformHypergraph::build_incidence() {
    incidence_.assign(n_, Bitset(edges_.size()));
    for (std::size_t ei = 0; ei < edges_.size(); ++ei)
        for (int v : edges_[ei]) incidence_[v].set(ei);
}

void UniformHypergraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw Error(ErrorCode::VertexOutOfRange,
                    "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n_) + ")");
}

bool UniformHypergraph::has_edge(const std::vector<int>& sorted_tuple) const {
    return std::binary_search(edges_.begin(), edges_.end(), sorted_tuple);
}

const Bitset& UniformHypergraph::incidence(int v) const {
    check_vertex(v);
    return incidence_[v];
}

int UniformHypergraph::codegree(std::vector<int> s) const {
    if (static_cast<int>(s.size()) != r_ - 1)
        throw Error(ErrorCode::BadArity, "co-degree set must have r-1 vertices");
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        check_vertex(s[i]);
        if (i > 0 && s[i] == s[i - 1])
            throw Error(ErrorCode::BadArity, "co-degree set has a repeated vertex");
    }
    if (s.empty() || edges_.empty()) return s.empty() ? static_cast<int>(edges_.size()) : 0;
    Bitset acc = incidence_[s[0]];
    for (std::size_t i = 1; i < s.size(); ++i) acc &= incidence_[s[i]];
    return static_cast<int>(acc.count());
}

std::vector<int> UniformHypergraph::completions(std::vector<int> s) const {
    if (static_cast<int>(s.size()) != r_ - 1)
        throw Error(ErrorCode::BadArity, "completion set must have r-1 vertices");
    std::sort(s.begin(), s.end());
    for (int v : s) check_vertex(v);
    if (edges_.empty()) return {};
    Bitset acc = incidence_[s[0]];
    for (std::size_t i = 1; i < s.size(); ++i) acc &= incidence_[s[i]];
    std::vector<int> out;
    acc.for_each([&](std::size_t ei) {
        for (int v : edges_[ei])
            if (!std::binary_search(s.begin(), s.end(), v)) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::unordered_map<std::vector<int>, int, VectorIntHash> UniformHypergraph::codegree_index() const {
    std::unordered_map<std::vector<int>, int, VectorIntHash> idx;
    std::vector<int> s(r_ - 1);
    for (const auto& e : edges_) {
        for (int omit = 0; omit < r_; ++omit) {
            int k = 0;
            for (int i = 0; i < r_; ++i)
                if (i != omit) s[k++] = e[i];
            idx[s] += 1;
        }
    }
    return idx;
}

UniformHypergraph UniformHypergraph::codegree_prune(int min_codegree) const {
    if (min_codegree < 1) throw Error(ErrorCode::BadParameters, "threshold must be >= 1");

    // Work-queue over (r-1)-sets whose co-degree dropped below the threshold.
    std::unordered_map<std::vector<int>, int, VectorIntHash> count;
    std::unordered_map<std::vector<int>, std::vector<int>, VectorIntHash> members;
    std::vector<int> s(r_ - 1);
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        const auto& e = edges_[ei];
        for (int omit = 0; omit < r_; ++omit) {
            int k = 0;
            for (int i = 0; i < r_; ++i)
                if (i != omit) s[k++] = e[i];
            count[s] += 1;
            members[s].push_back(static_cast<int>(ei));
        }
    }

    std::vector<char> alive(edges_.size(), 1);
    std::deque<std::vector<int>> queue;
    for (const auto& [set, c] : count)
        if (c < min_codegree) queue.push_back(set);

    while (!queue.empty()) {
        std::vector<int> set = std::move(queue.front());
        queue.pop_front();
        auto it = count.find(set);
        if (it == count.end() || it->second == 0 || it->second >= min_codegree) continue;
        for (int ei : members[set]) {
            if (!alive[ei]) continue;
            alive[ei] = 0;
            const auto& e = edges_[ei];
            for (int omit = 0; omit < r_; ++omit) {
                int k = 0;
                for (int i = 0; i < r_; ++i)
                    if (i != omit) s[k++] = e[i];
                int& c = count[s];
                --c;
                if (c > 0 && c < min_codegree) queue.push_back(s);
            }
        }
    }

    std::vector<std::vector<int>> kept;
    for (std::size_t ei = 0; ei < edges_.size(); ++ei)
        if (alive[ei]) kept.push_back(edges_[ei]);
    return make_unchecked(r_, n_, std::move(kept), part_sizes_);
}

UniformHypergraph UniformHypergraph::link(int v) const {
    check_vertex(v);
    std::vector<std::vector<int>> out;
    incidence_[v].for_each([&](std::size_t ei) {
        std::vector<int> t;
        t.reserve(r_ - 1);
        for (int u : edges_[ei])
            if (u != v) t.push_back(u);
        out.push_back(std::move(t));
    });
    std::sort(out.begin(), out.end());
    return make_unchecked(r_ - 1, n_, std::move(out), std::nullopt);
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
    throw Error(ErrorCode::Io, name + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

UniformHypergraph read_hyp(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) parse_fail(name, 1, "missing header");
    ++lineno;
    std::istringstream head(line);
    std::string magic;
    long long r = 0, n = 0, e = 0;
    if (!(head >> magic >> r >> n >> e) || magic != "hyp")
        parse_fail(name, lineno, "expected header 'hyp <r> <n> <e>'");
    if (r < 2) parse_fail(name, lineno, "uniformity must be >= 2");
    if (n < 0 || e < 0) parse_fail(name, lineno, "negative count in header");
    std::string extra;
    if (head >> extra) parse_fail(name, lineno, "trailing tokens in header");

    std::optional<std::vector<int>> parts;
    std::streampos after_header = in.tellg();
    if (std::getline(in, line)) {
        std::istringstream probe(line);
        std::string word;
        probe >> word;
        if (word == "parts") {
            ++lineno;
            long long k = 0;
            if (!(probe >> k) || k <= 0) parse_fail(name, lineno, "bad block count");
            std::vector<int> sizes;
            long long total = 0, sz = 0;
            for (long long i = 0; i < k; ++i) {
                if (!(probe >> sz) || sz < 0) parse_fail(name, lineno, "bad block size");
                sizes.push_back(static_cast<int>(sz));
                total += sz;
            }
            if (probe >> extra) parse_fail(name, lineno, "trailing tokens in parts line");
            if (total != n) parse_fail(name, lineno, "block sizes do not sum to n");
            parts = std::move(sizes);
        } else {
            in.seekg(after_header);
        }
    }

    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(e));
    for (long long i = 0; i < e; ++i) {
        if (!std::getline(in, line)) parse_fail(name, lineno + 1, "unexpected end of file");
        ++lineno;
        std::istringstream es(line);
        std::vector<int> t;
        long long v;
        while (es >> v) {
            if (v < 0 || v >= n) parse_fail(name, lineno, "vertex index out of range");
            t.push_back(static_cast<int>(v));
        }
        if (static_cast<long long>(t.size()) != r)
            parse_fail(name, lineno, "expected " + std::to_string(r) + " vertex indices");
        for (std::size_t j = 1; j < t.size(); ++j)
            if (t[j] <= t[j - 1]) parse_fail(name, lineno, "vertices not strictly ascending");
        edges.push_back(std::move(t));
    }

    try {
        return UniformHypergraph::build(static_cast<int>(r), static_cast<int>(n),
                                        std::move(edges), std::move(parts));
    } catch (const Error& err) {
        throw Error(ErrorCode::Io, name + ": " + err.what());
    }
}

UniformHypergraph read_hyp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return read_hyp(in, path);
}

void write_hyp(std::ostream& out, const UniformHypergraph& h) {
    out << "hyp " << h.r() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    if (h.part_sizes()) {
        out << "parts " << h.part_sizes()->size();
        for (int s : *h.part_sizes()) out << ' ' << s;
        out << '\n';
    }
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
}

void write_hyp_file(const std::string& path, const UniformHypergraph& h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    write_hyp(out, h);
}

} // namespace exhyp
