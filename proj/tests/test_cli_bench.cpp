#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"

#include "cherry/bench.hpp"
#include "cherry/error.hpp"
#include "cherry/io.hpp"

using namespace cherry;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with stderr discarded (or captured when asked).
Run cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(CHERRYPICK_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cherrypick_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& text) const {
        fs::path p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string name(const std::string& n) const { return (path / n).string(); }
};

std::vector<BenchRecord> synthetic(double a, double b, double c) {
    std::vector<BenchRecord> rows;
    for (std::size_t n = 10; n <= 50; n += 10)
        for (std::size_t r = 10; r <= 50; r += 20)
            for (std::size_t rp = 0; rp <= r; rp += 10)
                for (InstanceKind k : {InstanceKind::Yes, InstanceKind::No}) {
                    BenchRecord rec;
                    rec.n = n;
                    rec.r = r;
                    rec.r_prime = rp;
                    rec.kind = k;
                    rec.result = k == InstanceKind::Yes;
                    rec.seconds = a * n + b * r + c * rp;
                    rows.push_back(rec);
                }
    return rows;
}

} // namespace

TEST_CASE("fit recovers exact slopes") {
    auto rows = synthetic(2e-5, 3e-6, -1e-7);
    for (FitSplit s : {FitSplit::All, FitSplit::Yes, FitSplit::No}) {
        FitReport f = fit(rows, s);
        CHECK(f.slope_leaves == doctest::Approx(2e-5).epsilon(1e-9));
        CHECK(f.slope_r == doctest::Approx(3e-6).epsilon(1e-9));
        CHECK(f.slope_r_prime == doctest::Approx(-1e-7).epsilon(1e-6));
        CHECK(f.r_squared == doctest::Approx(1.0));
    }
    CHECK(fit(rows, FitSplit::Yes).samples == rows.size() / 2);
}

TEST_CASE("fit rejects degenerate input") {
    auto rows = synthetic(1, 1, 1);
    rows.resize(2);
    CHECK_THROWS_AS(fit(rows, FitSplit::All), DomainError);
    std::vector<BenchRecord> flat(10);
    for (auto& r : flat) {
        r.n = 5;
        r.r = 5;
        r.r_prime = 5;
        r.seconds = 1;
    }
    CHECK_THROWS_AS(fit(flat, FitSplit::All), DomainError);
}

TEST_CASE("fit skips failed rows") {
    auto rows = synthetic(1e-5, 1e-6, 1e-7);
    BenchRecord bad = rows.front();
    bad.error = "out of memory";
    bad.seconds = 1e9;
    rows.push_back(bad);
    CHECK(fit(rows, FitSplit::All).r_squared == doctest::Approx(1.0));
}

TEST_CASE("CSV round-trip") {
    auto rows = synthetic(1e-5, 2e-6, 3e-7);
    rows[0].seed = 18446744073709551615ULL;
    rows[1].error = "boom";
    std::string text = to_csv(rows);
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    auto back = parse_csv(text);
    REQUIRE(back.size() == rows.size());
    CHECK(back[0].seed == rows[0].seed);
    CHECK_FALSE(back[1].error.empty());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].n == rows[i].n);
        CHECK(back[i].kind == rows[i].kind);
        CHECK(back[i].result == rows[i].result);
        CHECK(back[i].seconds == doctest::Approx(rows[i].seconds));
    }
    CHECK_THROWS_AS(parse_csv("n,r\n1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n1,2,3,maybe,yes,0.1,7\n"), ParseError);
}

TEST_CASE("benchmark grid") {
    BenchGrid g;
    g.min = 25;
    g.max = 100;
    g.step = 25;
    g.replicates = 2;
    g.min_seconds = 0;
    auto rows = run_benchmark(g);
    // 4 values of n, 10 pairs r' <= r, two kinds, two replicates.
    CHECK(rows.size() == 4 * 10 * 2 * 2);
    for (const auto& r : rows) {
        CHECK(r.error.empty());
        CHECK(r.r_prime <= r.r);
        CHECK(r.seconds >= 0);
        if (r.kind == InstanceKind::Yes) CHECK(r.result);
    }
    g.threads = 3;
    auto again = run_benchmark(g);
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].seed == rows[i].seed);
        CHECK(again[i].result == rows[i].result);
        CHECK(again[i].n == rows[i].n);
    }
    g.step = 0;
    CHECK_THROWS_AS(run_benchmark(g), DomainError);
}

TEST_CASE("CLI decisions and exit codes") {
    TempDir tmp;
    std::string net = tmp.file("n.el", fixtures::kWorkedNetwork);
    std::string seq = tmp.file("s.cps", "2 1\n3 2\n3 4\n2 1\n1 4\n");

    Run r = cli("reduce " + net + " " + seq);
    CHECK(r.code == 0);
    CHECK(r.out == "4\n");
    CHECK(cli("reduce " + net + " " + tmp.file("short.cps", "2 1\n")).code == 1);

    CHECK(cli("check " + net).code == 0);
    CHECK(cli("check --tree-child " + net).code == 1);
    Run cyc = cli("check " + tmp.file("cyc.el", "r a\na b\nb a\na x\n"), true);
    CHECK(cyc.code == 2);
    CHECK(cyc.out.rfind("error: ", 0) == 0);
    CHECK(std::count(cyc.out.begin(), cyc.out.end(), '\n') == 1);
    CHECK(cli("check " + tmp.name("missing.el")).code == 2);
    CHECK(cli("check --no-such-flag " + net).code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("--help").code == 0);

    std::string big = tmp.name("big.el"), big_seq = tmp.name("big.cps"), small = tmp.name("small.el");
    REQUIRE(cli("generate --leaves 7 --retics 4 --seed 11 --network-out " + big + " --sequence-out " + big_seq).code ==
            0);
    REQUIRE(cli("subnet " + big_seq + " --retics 2 --seed 5 --network-out " + small).code == 0);
    CHECK(cli("contains " + big + " " + small).code == 0);
    CHECK(cli("oracle subnetwork " + big + " " + small).code == 0);
    CHECK(cli("oracle contains " + big + " " + small).code == 0);
    CHECK(cli("contains " + big + " " + net).code == 2);  // different leaf sets
    CHECK(cli("isomorphic " + big + " " + big).code == 0);
    CHECK(cli("isomorphic " + big + " " + small).code == 1);
    CHECK(cli("isomorphic --mode class --class 1a2b " + big + " " + big).code == 0);
    CHECK(cli("isomorphic --mode class --class 1a2c " + big + " " + big).code == 2);
}

TEST_CASE("CLI construction and sequences") {
    TempDir tmp;
    std::string seq = tmp.file("s.cps", "1 2\n3 2\n3 4\n4 5\n2 5\n");
    Run built = cli("build --class 1a2a " + seq);
    CHECK(built.code == 0);
    std::string net = tmp.file("n.el", built.out);
    Run sm = cli("smallest-cps " + net);
    CHECK(sm.code == 0);
    CHECK(sm.out == "1 2\n3 2\n3 4\n4 5\n2 5\n");
    CHECK(cli("smallest-cps --variant binary " + net).out == sm.out);
    std::string order = tmp.file("order.txt", "5 4 3 2 1\n");
    Run rev = cli("smallest-cps --order-file " + order + " " + net);
    CHECK(rev.code == 0);
    CHECK(rev.out != sm.out);
    CHECK(cli("smallest-cps --variant ternary " + net).code == 2);

    Run empty = cli("build --class 1a2a " + tmp.file("e.cps", ""));
    CHECK(empty.code == 2);
    Run seeded = cli("build --class 1a2a --seed-taxon a " + tmp.name("e.cps"));
    CHECK(seeded.code == 0);
    CHECK(seeded.out == "v0 a\n");
    CHECK(cli("build --class 9z " + seq).code == 2);
    CHECK(cli("build --class 1a2a --format enewick " + seq).out.find(';') != std::string::npos);

    Run all = cli("oracle enumerate " + net);
    CHECK(all.code == 0);
    CHECK(all.out.find("(1,2),(3,2),(3,4),(4,5),(2,5)\n") != std::string::npos);
    CHECK(cli("oracle enumerate --cap 1 " + net).code == 2);
}

TEST_CASE("CLI benchmark and fit") {
    TempDir tmp;
    std::string csv = tmp.name("b.csv");
    Run b = cli("bench --min 20 --max 60 --step 20 --replicates 1 --min-seconds 0 --quiet --out " + csv + " --json");
    CHECK(b.code == 0);
    CHECK(b.out.find("\"r_squared\"") != std::string::npos);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    Run f = cli("fit " + csv);
    CHECK(f.code == 0);
    CHECK(f.out.find("yes: samples=") != std::string::npos);
    CHECK(cli("fit " + tmp.file("bad.csv", "nonsense\n")).code == 2);
}
