#include "exhyp/norm_partition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "exhyp/errors.hpp"

namespace exhyp {

EdgeColoredBipartiteFamily::EdgeColoredBipartiteFamily(int side_size, int m, int s,
                                                       std::uint64_t h, std::uint64_t p,
                                                       std::vector<std::uint16_t> color)
    : side_size_(side_size), m_(m), s_(s), h_(h), p_(p), color_(std::move(color)) {
    if (side_size_ <= 0 || side_size_ > kSideLimit)
        throw Error(ErrorCode::FieldTooLarge,
                    "family side " + std::to_string(side_size_) + " outside (0, " +
                        std::to_string(kSideLimit) + "]");
    if (s_ < 2) throw Error(ErrorCode::BadParameters, "s must be >= 2");
    if (h_ == 0 || p_ < 2 || (p_ - 1) % h_ != 0 || static_cast<std::uint64_t>(m_) != (p_ - 1) / h_)
        throw Error(ErrorCode::NotDivisor, "m, h, p are inconsistent");
    if (color_.size() != std::size_t(side_size_) * side_size_)
        throw Error(ErrorCode::BadParameters, "color matrix has wrong size");
    for (auto c : color_)
        if (c > m_) throw Error(ErrorCode::BadParameters, "color value exceeds m");
}

std::uint64_t EdgeColoredBipartiteFamily::union_edge_count() const {
    std::uint64_t e = 0;
    for (auto c : color_)
        if (c > 0) ++e;
    return e;
}

std::vector<std::uint64_t> EdgeColoredBipartiteFamily::class_sizes() const {
    std::vector<std::uint64_t> sizes(m_ + 1, 0);
    for (auto c : color_) ++sizes[c];
    sizes[0] = 0;
    return sizes;
}

const FieldSpec& EdgeColoredBipartiteFamily::field() const {
    if (!field_) field_.emplace(make_field(p_, static_cast<unsigned>(s_ - 1)));
    return *field_;
}

const CosetPartition& EdgeColoredBipartiteFamily::cosets() const {
    if (!cosets_) cosets_.emplace(subgroup_cosets(p_, h_));
    return *cosets_;
}

EdgeColoredBipartiteFamily build_norm_partition(int s, std::uint64_t h, std::uint64_t p) {
    if (s < 2) throw Error(ErrorCode::BadParameters, "s must be >= 2");
    CosetPartition cosets = subgroup_cosets(p, h); // validates p prime, h | p-1
    FieldSpec field = make_field(p, static_cast<unsigned>(s - 1));
    if (field.order() > EdgeColoredBipartiteFamily::kSideLimit)
        throw Error(ErrorCode::FieldTooLarge,
                    "side p^(s-1) = " + std::to_string(field.order()) +
                        " exceeds the color matrix limit");

    const int n = static_cast<int>(field.order());
    const int m = static_cast<int>(cosets.class_count());

    std::vector<int> coset_of(p, 0);
    for (int i = 0; i < m; ++i)
        for (auto v : cosets.cosets[i]) coset_of[v] = i + 1;

    std::vector<std::uint32_t> norms = norm_table(field);
    std::vector<FieldElement> elems;
    elems.reserve(n);
    for (int i = 0; i < n; ++i) elems.push_back(field.element(i));

    std::vector<std::uint16_t> color(std::size_t(n) * n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::uint64_t zi = field.index_of(field.add(elems[a], elems[b]));
            std::uint32_t nv = norms[zi];
            if (nv == 0) {
                if (zi != 0)
                    throw Error(ErrorCode::Internal, "norm vanished on a nonzero element");
                continue;
            }
            color[std::size_t(a) * n + b] = static_cast<std::uint16_t>(coset_of[nv]);
        }
    }

    EdgeColoredBipartiteFamily fam(n, m, s, h, p, std::move(color));
    std::uint64_t expect = std::uint64_t(n) * n - n;
    if (fam.union_edge_count() != expect)
        throw Error(ErrorCode::Internal, "union edge count != p^(2s-2) - p^(s-1)");
    return fam;
}

namespace {

struct SideScan {
    // Best-so-far within one worker; merged by (rank of xs) afterwards.
    bool have_violation = false;
    CoverWitness violation;
    bool have_worst = false;
    CoverWitness worst;
};

// Advance an ascending combination; returns false after the last one.
bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool lex_less(const CoverWitness& a, const CoverWitness& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.xs < b.xs;
}

void scan_side(const EdgeColoredBipartiteFamily& fam, int side, int s, long long bound,
               unsigned worker, unsigned stride, SideScan& out) {
    const int n = fam.side_size();
    if (s > n) return;

    // Colored-neighbour masks for this side's vertices.
    std::vector<Bitset> mask(n, Bitset(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int c = side == 0 ? fam.color_at(x, y) : fam.color_at(y, x);
            if (c > 0) mask[x].set(y);
        }

    // Workers split the enumeration by the smallest element of the s-set;
    // each worker still scans its share in lexicographic order.
    for (int first = static_cast<int>(worker); first <= n - s; first += static_cast<int>(stride)) {
        std::vector<int> xs(s);
        xs[0] = first;
        for (int i = 1; i < s; ++i) xs[i] = first + i;
        while (true) {
            Bitset acc = mask[xs[0]];
            for (int i = 1; i < s; ++i) acc &= mask[xs[i]];
            int count = 0;
            int witness_color = 0;
            acc.for_each([&](std::size_t y) {
                int c0 = side == 0 ? fam.color_at(xs[0], static_cast<int>(y))
                                   : fam.color_at(static_cast<int>(y), xs[0]);
                for (int i = 1; i < s; ++i) {
                    int ci = side == 0 ? fam.color_at(xs[i], static_cast<int>(y))
                                       : fam.color_at(static_cast<int>(y), xs[i]);
                    if (ci != c0) return;
                }
                if (count == 0) witness_color = c0;
                ++count;
            });

            CoverWitness w{side, xs, count, witness_color};
            if (!out.have_worst || count > out.worst.count ||
                (count == out.worst.count && lex_less(w, out.worst))) {
                out.worst = w;
                out.have_worst = true;
            }
            if (count > bound && (!out.have_violation || lex_less(w, out.violation))) {
                out.violation = w;
                out.have_violation = true;
            }

            // Keep the smallest element fixed so the worker stays in its share.
            std::vector<int> tail(xs.begin() + 1, xs.end());
            if (!next_combination(tail, n)) break;
            std::copy(tail.begin(), tail.end(), xs.begin() + 1);
        }
    }
}

} // namespace

CoverVerdict verify_cover_property(const EdgeColoredBipartiteFamily& fam, int s, long long bound,
                                   unsigned threads) {
    if (s < 2) throw Error(ErrorCode::BadParameters, "cover property needs s >= 2");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    CoverVerdict verdict;
    verdict.bound = bound;
    bool have_worst = false;

    for (int side = 0; side < 2; ++side) {
        std::vector<SideScan> scans(threads);
        if (threads == 1) {
            scan_side(fam, side, s, bound, 0, 1, scans[0]);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < threads; ++w)
                pool.emplace_back(scan_side, std::cref(fam), side, s, bound, w, threads,
                                  std::ref(scans[w]));
            for (auto& t : pool) t.join();
        }
        for (const auto& sc : scans) {
            if (sc.have_worst &&
                (!have_worst || sc.worst.count > verdict.worst.count ||
                 (sc.worst.count == verdict.worst.count && lex_less(sc.worst, verdict.worst)))) {
                verdict.worst = sc.worst;
                have_worst = true;
            }
            if (sc.have_violation &&
                (!verdict.violation || lex_less(sc.violation, *verdict.violation)))
                verdict.violation = sc.violation;
        }
    }

    verdict.pass = !verdict.violation.has_value();
    return verdict;
}

std::uint64_t krs_solution_count(const FieldSpec& field, const std::vector<FieldElement>& shifts,
                                 const std::vector<std::uint64_t>& targets) {
    if (shifts.size() != field.degree())
        throw Error(ErrorCode::BadParameters, "expected one shift per equation (m of them)");
    if (shifts.size() != targets.size())
        throw Error(ErrorCode::BadParameters, "shifts and targets differ in length");
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t j = i + 1; j < shifts.size(); ++j)
            if (shifts[i] == shifts[j])
                throw Error(ErrorCode::DuplicateShift, "shifts must be pairwise distinct");
    for (auto b : targets)
        if (b >= field.p()) throw Error(ErrorCode::BadParameters, "target residue out of range");

    std::uint64_t count = 0;
    for (std::uint64_t zi = 0; zi < field.order(); ++zi) {
        FieldElement z = field.element(zi);
        bool ok = true;
        for (std::size_t j = 0; j < shifts.size(); ++j) {
            if (field.norm(field.add(z, shifts[j])) != targets[j]) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

std::uint64_t krs_exhaustive_max(const FieldSpec& field) {
    const std::uint64_t order = field.order();
    const unsigned m = field.degree();
    if (order > 1024)
        throw Error(ErrorCode::BudgetExceeded, "exhaustive KRS sweep capped at order 1024");
    double work = static_cast<double>(order);
    for (unsigned i = 0; i < m; ++i) work *= static_cast<double>(order);
    if (work > 1e9)
        throw Error(ErrorCode::BudgetExceeded, "KRS sweep work order^(m+1) exceeds 1e9");

    std::vector<std::uint32_t> norms = norm_table(field);
    std::vector<FieldElement> elems;
    elems.reserve(order);
    for (std::uint64_t i = 0; i < order; ++i) elems.push_back(field.element(i));

    // sum_idx[a][z] = index of element(a) + element(z)
    std::vector<std::uint32_t> sum_idx(order * order);
    for (std::uint64_t a = 0; a < order; ++a)
        for (std::uint64_t z = 0; z < order; ++z)
            sum_idx[a * order + z] =
                static_cast<std::uint32_t>(field.index_of(field.add(elems[a], elems[z])));

    // For every ordered tuple of distinct shifts, histogram the norm vector
    // over z and take the largest all-nonzero fiber.
    std::uint64_t best = 0;
    std::vector<std::uint64_t> tuple(m, 0);
    std::unordered_map<std::uint64_t, std::uint64_t> hist;

    auto distinct = [&](unsigned upto) {
        for (unsigned i = 0; i < upto; ++i)
            for (unsigned j = i + 1; j < upto; ++j)
                if (tuple[i] == tuple[j]) return false;
        return true;
    };

    // Odometer over ordered shift tuples.
    while (true) {
        if (distinct(m)) {
            hist.clear();
            for (std::uint64_t z = 0; z < order; ++z) {
                bool nonzero = true;
                std::uint64_t packed = 0;
                for (unsigned j = 0; j < m; ++j) {
                    std::uint32_t nv = norms[sum_idx[tuple[j] * order + z]];
                    if (nv == 0) {
                        nonzero = false;
                        break;
                    }
                    packed = packed * field.p() + nv;
                }
                if (nonzero) {
                    std::uint64_t c = ++hist[packed];
                    if (c > best) best = c;
                }
            }
        }
        unsigned pos = 0;
        while (pos < m && ++tuple[pos] == order) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
    }
    return best;
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
    throw Error(ErrorCode::Io, name + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

EdgeColoredBipartiteFamily read_ebf(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) parse_fail(name, 1, "missing header");
    std::istringstream head(line);
    std::string magic;
    long long side = 0, m = 0, s = 0;
    unsigned long long h = 0, p = 0;
    if (!(head >> magic >> side >> m >> s >> h >> p) || magic != "ebf")
        parse_fail(name, 1, "expected header 'ebf <sideSize> <m> <s> <h> <p>'");
    std::string extra;
    if (head >> extra) parse_fail(name, 1, "trailing tokens in header");
    if (side <= 0 || m <= 0) parse_fail(name, 1, "side and m must be positive");

    std::vector<std::uint16_t> color;
    color.reserve(std::size_t(side) * side);
    for (long long row = 0; row < side; ++row) {
        if (!std::getline(in, line)) parse_fail(name, 2 + static_cast<int>(row), "unexpected end of file");
        std::istringstream rs(line);
        long long c;
        long long got = 0;
        while (rs >> c) {
            if (c < 0 || c > m)
                parse_fail(name, 2 + static_cast<int>(row), "color out of range [0, m]");
            color.push_back(static_cast<std::uint16_t>(c));
            ++got;
        }
        if (got != side)
            parse_fail(name, 2 + static_cast<int>(row),
                       "expected " + std::to_string(side) + " colors");
    }

    try {
        return EdgeColoredBipartiteFamily(static_cast<int>(side), static_cast<int>(m),
                                          static_cast<int>(s), h, p, std::move(color));
    } catch (const Error& err) {
        throw Error(ErrorCode::Io, name + ": " + err.what());
    }
}

EdgeColoredBipartiteFamily read_ebf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return read_ebf(in, path);
}

void write_ebf(std::ostream& out, const EdgeColoredBipartiteFamily& fam) {
    out << "ebf " << fam.side_size() << ' ' << fam.class_count() << ' ' << fam.s() << ' '
        << fam.h() << ' ' << fam.p() << '\n';
    for (int a = 0; a < fam.side_size(); ++a) {
        for (int b = 0; b < fam.side_size(); ++b) {
            if (b) out << ' ';
            out << fam.color_at(a, b);
        }
        out << '\n';
    }
}

void write_ebf_file(const std::string& path, const EdgeColoredBipartiteFamily& fam) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    write_ebf(out, fam);
}

} // namespace exhyp
