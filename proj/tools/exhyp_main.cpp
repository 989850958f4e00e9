// Command line front end: norm-family construction, residue products,
// verification runs, DRC experiments and bound tables.
//
// Exit codes: 0 success / verdict-pass, 1 verdict-fail (copy found or cover
// violated), 2 bad parameters, 3 I/O error, 4 budget exceeded.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "exhyp/drc.hpp"
#include "exhyp/embedder.hpp"
#include "exhyp/errors.hpp"
#include "exhyp/field.hpp"
#include "exhyp/hypergraph.hpp"
#include "exhyp/norm_partition.hpp"
#include "exhyp/product.hpp"
#include "exhyp/verifier.hpp"

namespace {

constexpr std::uint64_t kDefaultBudget = 1'000'000'000ull;

int exit_code_for(const exhyp::Error& e) {
    switch (e.code()) {
        case exhyp::ErrorCode::Io: return 3;
        case exhyp::ErrorCode::BudgetExceeded: return 4;
        default: return 2;
    }
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

int cmd_construct_norm(int s, std::uint64_t h, std::uint64_t p, const std::string& out_path) {
    auto fam = exhyp::build_norm_partition(s, h, p);
    if (out_path.empty()) {
        exhyp::write_ebf(std::cout, fam);
    } else {
        exhyp::write_ebf_file(out_path, fam);
        std::cout << "wrote " << out_path << " side=" << fam.side_size()
                  << " m=" << fam.class_count() << " edges=" << fam.union_edge_count() << '\n';
    }
    return 0;
}

int cmd_construct_product(const std::string& family_path, int k, int rho_flag, bool best,
                          const std::string& out_path, long long pad, std::uint64_t budget) {
    auto fam = exhyp::read_ebf_file(family_path);
    int rho;
    exhyp::BigInt edges;
    if (best) {
        auto b = exhyp::best_residue(fam, k);
        rho = b.rho;
        edges = b.edges;
    } else {
        rho = rho_flag;
        edges = exhyp::residue_class_count(fam, k, rho);
    }
    std::cout << "rho=" << rho << " edges=" << edges.str() << '\n';
    if (!out_path.empty()) {
        auto hg = exhyp::build_product(fam, k, rho, budget);
        if (pad > 0) hg = exhyp::pad_isolated(hg, static_cast<int>(pad));
        exhyp::write_hyp_file(out_path, hg);
    }
    return 0;
}

int cmd_verify(const std::string& input, const std::vector<long long>& kst,
               const std::string& pattern_path, long long cover_bound, bool cover_set, bool krs,
               std::uint64_t budget_limit, unsigned threads) {
    int modes = (!kst.empty()) + (!pattern_path.empty()) + cover_set + krs;
    if (modes != 1)
        throw exhyp::Error(exhyp::ErrorCode::BadParameters,
                           "choose exactly one of --kst, --pattern, --cover, --krs");

    if (!kst.empty()) {
        auto h = exhyp::read_hyp_file(input);
        exhyp::SearchBudget budget{budget_limit, 0};
        auto res = exhyp::find_kst(h, static_cast<int>(kst[0]), kst[1], &budget);
        if (res.budget())
            throw exhyp::Error(exhyp::ErrorCode::BudgetExceeded, "search budget exhausted");
        if (res.found()) {
            exhyp::write_certificate(std::cout, *res.value);
            return 1;
        }
        std::cout << "FREE\n";
        return 0;
    }
    if (!pattern_path.empty()) {
        auto h = exhyp::read_hyp_file(input);
        auto p = exhyp::read_pattern_file(pattern_path);
        exhyp::SearchBudget budget{budget_limit, 0};
        auto res = exhyp::find_pattern(h, p, &budget);
        if (res.budget())
            throw exhyp::Error(exhyp::ErrorCode::BudgetExceeded, "search budget exhausted");
        if (res.found()) {
            exhyp::write_embedding(std::cout, p, h.r(), *res.value);
            return 1;
        }
        std::cout << "FREE\n";
        return 0;
    }
    if (cover_set) {
        auto fam = exhyp::read_ebf_file(input);
        auto verdict = exhyp::verify_cover_property(fam, fam.s(), cover_bound, threads);
        if (verdict.pass) {
            std::cout << "PASS\n";
            return 0;
        }
        const auto& w = *verdict.violation;
        std::cout << "FAIL side=" << (w.side == 0 ? "A" : "B") << " set=" << join_ints(w.xs)
                  << " count=" << w.count << " color=" << w.color << '\n';
        return 1;
    }
    // krs
    auto fam = exhyp::read_ebf_file(input);
    std::uint64_t mx = exhyp::krs_exhaustive_max(fam.field());
    std::uint64_t bound = factorial_u64(fam.s() - 1);
    bool ok = mx <= bound;
    std::cout << "KRS max=" << mx << " bound=" << bound << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

int cmd_drc(const std::string& input, int s, long long t, const std::string& alpha_text,
            const std::string& c_text, std::uint64_t seed, bool exact_stats,
            std::uint64_t budget) {
    auto h = exhyp::read_hyp_file(input);

    exhyp::DrcParams params;
    params.s = s;
    params.t = t;
    params.r = h.r();
    params.n = h.n();
    params.alpha = exhyp::parse_rational(alpha_text);
    params.C = c_text.empty() ? exhyp::DrcParams::default_constant(s, h.r())
                              : exhyp::parse_rational(c_text);
    params.validate(h);

    auto run = exhyp::drc_prepare(h, params, budget);
    auto out = exhyp::drc_draw(run, seed);

    std::cout << "drc n=" << params.n << " r=" << params.r << " s=" << params.s
              << " t=" << params.t << " alpha=" << exhyp::format_rational(params.alpha)
              << " C=" << exhyp::format_rational(params.C)
              << " threshold=" << params.prune_threshold() << '\n';
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016" PRIx64, run.weights_hash);
    std::cout << "pruned_edges=" << run.pruned.edge_count() << " tuples=" << run.table.tuples.size()
              << " p=" << exhyp::format_rational(run.table.total) << " weights_hash=" << hashbuf
              << '\n';
    const char* status = out.status == exhyp::DrcStatus::TupleChosen     ? "tuple-chosen"
                         : out.status == exhyp::DrcStatus::EmptyDraw     ? "empty-draw"
                                                                         : "empty-after-prune";
    std::cout << "outcome=" << status << " seed=" << seed << '\n';
    if (out.status == exhyp::DrcStatus::TupleChosen) {
        std::cout << "tuple=" << join_ints(out.tuple) << '\n';
        std::cout << "A=" << join_ints(out.vertex_set) << '\n';
    }

    if (exact_stats) {
        auto stats = exhyp::drc_exact_stats(h, params, budget);
        exhyp::write_claims_csv(std::cout, stats);
        return stats.all_ok() ? 0 : 1;
    }
    return 0;
}

int cmd_bound_table(int s, long long t, int k, long long n_target, const std::string& csv_path) {
    auto rep = exhyp::construction_report(s, t, k, n_target);
    std::vector<exhyp::ConstructionReport> rows{rep};
    exhyp::write_report_csv(std::cout, rows);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw exhyp::Error(exhyp::ErrorCode::Io, "cannot open " + csv_path + " for writing");
        exhyp::write_report_csv(out, rows);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal K_{s,t}^{(2k)} constructions, verifiers and DRC experiments"};
    app.require_subcommand(1);
    // --h is a domain flag (subgroup order), so help must not claim -h
    app.set_help_flag("--help", "print help and exit");

    // construct-norm
    auto* norm = app.add_subcommand("construct-norm", "build the norm-map bipartite family (.ebf)");
    norm->set_help_flag("--help", "print help and exit");
    int cn_s = 2;
    std::uint64_t cn_h = 1, cn_p = 3;
    std::string cn_out;
    norm->add_option("--s", cn_s, "part size parameter s >= 2")->required();
    norm->add_option("--h", cn_h, "subgroup order h, h | p-1")->required();
    norm->add_option("--p", cn_p, "prime p == 1 (mod h)")->required();
    norm->add_option("--out", cn_out, "output .ebf path (default: stdout)");

    // construct-product
    auto* prod = app.add_subcommand("construct-product", "lift a family to the 2k-uniform product");
    prod->set_help_flag("--help", "print help and exit");
    std::string cp_family, cp_out;
    int cp_k = 1, cp_rho = 0;
    bool cp_best = false;
    std::uint64_t cp_budget = kDefaultBudget;
    prod->add_option("--family", cp_family, "input .ebf path")->required();
    prod->add_option("--k", cp_k, "half-uniformity k >= 1")->required();
    prod->add_option("--rho", cp_rho, "residue class in [1, m]");
    prod->add_flag("--best", cp_best, "pick the densest residue class");
    prod->add_option("--out", cp_out, "output .hyp path");
    long long cp_pad = 0;
    prod->add_option("--pad", cp_pad, "pad the written file with isolated vertices to this count");
    prod->add_option("--budget", cp_budget, "enumeration work budget");

    // verify
    auto* ver = app.add_subcommand("verify", "exact searches against a .hyp or .ebf artifact");
    ver->set_help_flag("--help", "print help and exit");
    std::string v_input, v_pattern;
    std::vector<long long> v_kst;
    long long v_cover = 0;
    bool v_krs = false;
    std::uint64_t v_budget = kDefaultBudget;
    unsigned v_threads = 0;
    ver->add_option("--input", v_input, "input artifact path")->required();
    ver->add_option("--kst", v_kst, "search for K_{s,t}^{(r)}: two values s t")->expected(2);
    ver->add_option("--pattern", v_pattern, "pattern file for a G_{X,Y}^{(r)} search");
    auto* cover_opt = ver->add_option("--cover", v_cover, "cover-property bound to check");
    ver->add_flag("--krs", v_krs, "exhaustive KRS solution-count sweep");
    ver->add_option("--budget", v_budget, "search node budget");
    ver->add_option("--threads", v_threads, "worker cap (0 = machine parallelism)");

    // drc
    auto* drc = app.add_subcommand("drc", "weighted dependent-random-choice extraction");
    drc->set_help_flag("--help", "print help and exit");
    std::string d_input, d_alpha = "2", d_c;
    int d_s = 2;
    long long d_t = 1;
    std::uint64_t d_seed = 0, d_budget = kDefaultBudget;
    bool d_stats = false;
    drc->add_option("--input", d_input, "input .hyp path")->required();
    drc->add_option("--s", d_s, "set size s >= 2")->required();
    drc->add_option("--t", d_t, "richness target t >= 1")->required();
    drc->add_option("--alpha", d_alpha, "alpha > 1, rational or decimal")->required();
    drc->add_option("--seed", d_seed, "64-bit decimal seed")->required();
    drc->add_option("--C", d_c, "feasibility constant override (rational)");
    drc->add_flag("--exact-stats", d_stats, "emit the claims CSV");
    drc->add_option("--budget", d_budget, "tuple enumeration budget");

    // bound-table
    auto* bt = app.add_subcommand("bound-table", "end-to-end construction report row");
    bt->set_help_flag("--help", "print help and exit");
    int b_s = 2, b_k = 1;
    long long b_t = 2, b_n = 100;
    std::string b_csv;
    bt->add_option("--s", b_s)->required();
    bt->add_option("--t", b_t)->required();
    bt->add_option("--k", b_k)->required();
    bt->add_option("--n-target", b_n)->required();
    bt->add_option("--csv", b_csv, "also write the CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (norm->parsed()) return cmd_construct_norm(cn_s, cn_h, cn_p, cn_out);
        if (prod->parsed()) {
            if (cp_best == (cp_rho != 0))
                throw exhyp::Error(exhyp::ErrorCode::BadParameters,
                                   "choose exactly one of --rho and --best");
            return cmd_construct_product(cp_family, cp_k, cp_rho, cp_best, cp_out, cp_pad,
                                         cp_budget);
        }
        if (ver->parsed())
            return cmd_verify(v_input, v_kst, v_pattern, v_cover, cover_opt->count() > 0, v_krs,
                              v_budget, v_threads);
        if (drc->parsed()) return cmd_drc(d_input, d_s, d_t, d_alpha, d_c, d_seed, d_stats, d_budget);
        if (bt->parsed()) return cmd_bound_table(b_s, b_t, b_k, b_n, b_csv);
    } catch (const exhyp::Error& e) {
        std::cerr << "error (" << exhyp::error_code_name(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
