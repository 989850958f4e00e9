#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("exhyp_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    fs::path out_file = work_dir() / "stdout.txt";
    std::string cmd = std::string(EXHYP_CLI_PATH) + " " + args + " > " + out_file.string() + " 2> " +
                      (work_dir() / "stderr.txt").string();
    int raw = std::system(cmd.c_str());
    RunResult res;
    res.code = WEXITSTATUS(raw);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    res.out = ss.str();
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("construct-norm writes the expected ebf header and cells") {
    auto res = run("construct-norm --s 2 --h 2 --p 5");
    CHECK(res.code == 0);
    CHECK(res.out.substr(0, res.out.find('\n')) == "ebf 5 2 2 2 5");
    int colored = 0;
    for (std::size_t i = res.out.find('\n') + 1; i < res.out.size(); ++i)
        if (res.out[i] == '1' || res.out[i] == '2') ++colored;
    CHECK(colored == 20);
}

TEST_CASE("construct-norm rejects bad parameters with exit 2") {
    CHECK(run("construct-norm --s 2 --h 2 --p 6").code == 2);
    CHECK(run("construct-norm --s 2 --h 3 --p 5").code == 2);
}

TEST_CASE("construct-product best mode and file output") {
    fs::path fam = work_dir() / "f225.ebf";
    CHECK(run("construct-norm --s 2 --h 2 --p 5 --out " + fam.string()).code == 0);

    auto best = run("construct-product --family " + fam.string() + " --k 2 --best");
    CHECK(best.code == 0);
    CHECK(best.out == "rho=1 edges=200\n");

    fs::path hyp = work_dir() / "g.hyp";
    auto built = run("construct-product --family " + fam.string() + " --k 2 --best --out " +
                     hyp.string());
    CHECK(built.code == 0);
    std::string text = slurp(hyp);
    CHECK(text.substr(0, text.find('\n')) == "hyp 4 20 200");
    CHECK(text.find("parts 4 5 5 5 5") != std::string::npos);
}

TEST_CASE("construct-product with k=1 reproduces a color class") {
    fs::path fam = work_dir() / "f213.ebf";
    CHECK(run("construct-norm --s 2 --h 1 --p 3 --out " + fam.string()).code == 0);
    auto res = run("construct-product --family " + fam.string() + " --k 1 --rho 2");
    CHECK(res.code == 0);
    CHECK(res.out == "rho=2 edges=3\n");
}

TEST_CASE("construct-product on a missing file exits 3 and names the path") {
    auto res = run("construct-product --family /nonexistent/x.ebf --k 1 --best");
    CHECK(res.code == 3);
    CHECK(slurp(work_dir() / "stderr.txt").find("/nonexistent/x.ebf") != std::string::npos);
}

TEST_CASE("verify --kst prints FREE on a free product and a certificate otherwise") {
    fs::path fam = work_dir() / "f213b.ebf";
    fs::path hyp = work_dir() / "g213.hyp";
    CHECK(run("construct-norm --s 2 --h 1 --p 3 --out " + fam.string()).code == 0);
    CHECK(run("construct-product --family " + fam.string() + " --k 2 --best --out " + hyp.string())
              .code == 0);

    auto free_run = run("verify --input " + hyp.string() + " --kst 2 2");
    CHECK(free_run.code == 0);
    CHECK(free_run.out == "FREE\n");

    // the flagship build: (2,2,5), k=2, free at t = h^(s-1)(s-1)! + 1 = 3
    fs::path fam225 = work_dir() / "f225kst.ebf";
    fs::path hyp225 = work_dir() / "g225.hyp";
    CHECK(run("construct-norm --s 2 --h 2 --p 5 --out " + fam225.string()).code == 0);
    CHECK(run("construct-product --family " + fam225.string() + " --k 2 --best --out " +
              hyp225.string())
              .code == 0);
    auto flagship = run("verify --input " + hyp225.string() + " --kst 2 3");
    CHECK(flagship.code == 0);
    CHECK(flagship.out == "FREE\n");

    // complete 3-uniform host on 8 vertices contains K_{2,3}^{(3)}
    fs::path complete = work_dir() / "complete8.hyp";
    {
        std::ofstream out(complete);
        std::ostringstream edges;
        int e = 0;
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b)
                for (int c = b + 1; c < 8; ++c) {
                    edges << a << ' ' << b << ' ' << c << '\n';
                    ++e;
                }
        out << "hyp 3 8 " << e << '\n' << edges.str();
    }
    auto found = run("verify --input " + complete.string() + " --kst 2 3");
    CHECK(found.code == 1);
    CHECK(found.out.substr(0, 20) == "certificate s=2 t=3\n");
}

TEST_CASE("verify --cover agrees with the construction bound") {
    fs::path fam = work_dir() / "f225b.ebf";
    CHECK(run("construct-norm --s 2 --h 2 --p 5 --out " + fam.string()).code == 0);
    auto pass = run("verify --input " + fam.string() + " --cover 2");
    CHECK(pass.code == 0);
    CHECK(pass.out == "PASS\n");
    auto fail = run("verify --input " + fam.string() + " --cover 0");
    CHECK(fail.code == 1);
    CHECK(fail.out.substr(0, 4) == "FAIL");
}

TEST_CASE("verify --krs sweeps the loaded family's field") {
    fs::path fam = work_dir() / "f313.ebf";
    CHECK(run("construct-norm --s 3 --h 1 --p 3 --out " + fam.string()).code == 0);
    auto res = run("verify --input " + fam.string() + " --krs");
    CHECK(res.code == 0);
    CHECK(res.out == "KRS max=2 bound=2 PASS\n");
}

TEST_CASE("verify requires exactly one mode") {
    fs::path fam = work_dir() / "f225c.ebf";
    CHECK(run("construct-norm --s 2 --h 2 --p 5 --out " + fam.string()).code == 0);
    CHECK(run("verify --input " + fam.string()).code == 2);
    CHECK(run("verify --input " + fam.string() + " --krs --cover 2").code == 2);
}

TEST_CASE("verify --pattern detects blow-ups") {
    fs::path complete = work_dir() / "complete8b.hyp";
    {
        std::ofstream out(complete);
        std::ostringstream edges;
        int e = 0;
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b)
                for (int c = b + 1; c < 8; ++c) {
                    edges << a << ' ' << b << ' ' << c << '\n';
                    ++e;
                }
        out << "hyp 3 8 " << e << '\n' << edges.str();
    }
    fs::path pat = work_dir() / "c4.pat";
    {
        std::ofstream out(pat);
        out << "pattern 2 2\n0 1\n0 1\n";
    }
    auto res = run("verify --input " + complete.string() + " --pattern " + pat.string());
    CHECK(res.code == 1);
    CHECK(res.out.substr(0, 19) == "pattern x=2 m=2 r=3");
}

TEST_CASE("drc runs are byte-identical for a fixed seed and reject alpha <= 1") {
    fs::path star = work_dir() / "star9.hyp";
    {
        std::ofstream out(star);
        std::ostringstream edges;
        int e = 0;
        for (int b = 1; b < 9; ++b)
            for (int c = b + 1; c < 9; ++c) {
                edges << 0 << ' ' << b << ' ' << c << '\n';
                ++e;
            }
        out << "hyp 3 9 " << e << '\n' << edges.str();
    }
    std::string cmd = "drc --input " + star.string() + " --s 2 --t 2 --alpha 2 --C 1/4 --seed 99";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("drc n=9 r=3 s=2 t=2 alpha=2 C=1/4 threshold=1") == 0);

    auto stats = run(cmd + " --exact-stats");
    CHECK(stats.code == 0);
    CHECK(stats.out.find("claim_id,lhs,rhs,verdict") != std::string::npos);
    CHECK(stats.out.find("VIOLATED") == std::string::npos);

    CHECK(run("drc --input " + star.string() + " --s 2 --t 2 --alpha 1 --seed 1").code == 2);
}

TEST_CASE("bound-table emits a parseable CSV row") {
    fs::path csv = work_dir() / "table.csv";
    auto res = run("bound-table --s 2 --t 5 --k 1 --n-target 100 --csv " + csv.string());
    CHECK(res.code == 0);
    CHECK(res.out.substr(0, 40) == "s,t,k,h,p,m,rho,n,edges,bound_ratio\n2,5,");
    CHECK(slurp(csv) == res.out);
    CHECK(res.out.find("2,5,1,4,29,7,") != std::string::npos);
}
