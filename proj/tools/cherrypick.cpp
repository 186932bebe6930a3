// cherrypick: command-line front end for the cherry library.
//
// Decision commands exit 0 for yes and 1 for no. Any failure prints a single
// "error: <kind>: <message>" line on stderr and exits 2.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cherry/algorithms.hpp"
#include "cherry/bench.hpp"
#include "cherry/construction.hpp"
#include "cherry/error.hpp"
#include "cherry/generation.hpp"
#include "cherry/io.hpp"
#include "cherry/oracle.hpp"
#include "cherry/reduction.hpp"

using namespace cherry;

namespace {

constexpr int kYes = 0, kNo = 1, kFailure = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path);
    out << text;
}

// Prefixes parse errors with the file name so the one-line reason is
// self-contained.
Network load_network(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_any_network(text).net;
    } catch (const ParseError& e) {
        throw Error("parse", path + ":" + e.what());
    }
}

Sequence load_sequence(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_cps(text);
    } catch (const ParseError& e) {
        throw Error("parse", path + ":" + e.what());
    }
}

TaxonOrder load_order(const std::string& path) {
    if (path.empty()) return {};
    std::istringstream in(read_file(path));
    std::vector<Taxon> ranked;
    for (std::string tok; in >> tok;) ranked.push_back(tok);
    return TaxonOrder::from_list(ranked);
}

NetworkFormat parse_format(const std::string& name) {
    if (name == "edgelist") return NetworkFormat::EdgeList;
    if (name == "enewick") return NetworkFormat::ENewick;
    throw DomainError("unknown format '" + name + "' (expected edgelist or enewick)");
}

int decision(bool yes) {
    std::cout << (yes ? "yes" : "no") << "\n";
    return yes ? kYes : kNo;
}

nlohmann::json fit_json(const FitReport& f) {
    return {{"split", to_string(f.split)},         {"samples", f.samples},
            {"slope_leaves", f.slope_leaves},      {"slope_r", f.slope_r},
            {"slope_r_prime", f.slope_r_prime},    {"r_squared", f.r_squared}};
}

void print_fits(const std::vector<BenchRecord>& rows, bool json, std::ostream& out) {
    nlohmann::json all = nlohmann::json::array();
    for (FitSplit s : {FitSplit::All, FitSplit::Yes, FitSplit::No}) {
        FitReport f = fit(rows, s);
        if (json) {
            all.push_back(fit_json(f));
        } else {
            out << to_string(s) << ": samples=" << f.samples << " slope_leaves=" << f.slope_leaves
                << " slope_r=" << f.slope_r << " slope_r_prime=" << f.slope_r_prime << " r_squared=" << f.r_squared
                << "\n";
        }
    }
    if (json) out << all.dump(2) << "\n";
}

std::size_t thread_count_from_env() {
    const char* v = std::getenv("CHERRYPICK_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0) throw DomainError("CHERRYPICK_THREADS must be a positive integer");
    return n;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cherry-picking sequences on rooted phylogenetic networks"};
    app.require_subcommand(1);
    std::optional<int> code;

    // check
    std::string check_net, check_seq;
    bool check_tc = false;
    auto* check = app.add_subcommand("check", "Validate a network and print its class report");
    check->add_option("network", check_net, "Network file (edge list or eNewick)")->required();
    check->add_option("--sequence", check_seq, "Also report whether this CPS reduces the network");
    check->add_flag("--tree-child", check_tc, "Answer whether the network is tree-child");
    check->callback([&] {
        Network net = load_network(check_net);
        ClassReport rep = classify(net);
        std::cout << to_string(rep) << "\n";
        bool yes = !check_tc || rep.is_tree_child;
        if (!check_seq.empty()) {
            Sequence s = load_sequence(check_seq);
            bool cps = check_cps(s), tcs = check_tcs(s), minimal = is_minimal_for(net, s);
            std::cout << "cps=" << cps << " tcs=" << tcs << " minimal=" << minimal << "\n";
            yes = yes && cps && cps_reduces_network(net, s);
        }
        code = yes ? kYes : kNo;
    });

    // reduce
    std::string red_net, red_seq, red_format = "edgelist";
    auto* reduce = app.add_subcommand("reduce", "Apply a sequence; print the surviving taxon or the remainder");
    reduce->add_option("network", red_net)->required();
    reduce->add_option("sequence", red_seq)->required();
    reduce->add_option("--format", red_format, "Output format for a partial reduction");
    reduce->callback([&] {
        Network net = apply(load_network(red_net), load_sequence(red_seq));
        if (is_fully_reduced(net)) {
            std::cout << net.taxa().front() << "\n";
            code = kYes;
        } else {
            std::cout << write_network(net, parse_format(red_format));
            code = kNo;
        }
    });

    // build
    std::string build_seq, build_class, build_seed, build_format = "edgelist";
    auto* build = app.add_subcommand("build", "Build the network of a CPS in a class");
    build->add_option("sequence", build_seq)->required();
    build->add_option("--class", build_class, "1a2a ... 1b2d")->required();
    build->add_option("--seed-taxon", build_seed, "Leaf to start from; required for an empty sequence");
    build->add_option("--format", build_format);
    build->callback([&] {
        std::optional<Taxon> seed;
        if (!build_seed.empty()) seed = build_seed;
        Network net = build_from_cps(load_sequence(build_seq), parse_class(build_class), seed);
        std::cout << write_network(net, parse_format(build_format));
        code = kYes;
    });

    // contains
    std::string cont_big, cont_small;
    auto* contains = app.add_subcommand("contains", "Is the second tree-child network a subnetwork of the first?");
    contains->add_option("big", cont_big)->required();
    contains->add_option("small", cont_small)->required();
    contains->callback([&] { code = decision(tcn_contains(load_network(cont_big), load_network(cont_small))); });

    // isomorphic
    std::string iso_a, iso_b, iso_mode = "treechild", iso_class, iso_order;
    auto* iso = app.add_subcommand("isomorphic", "Decide isomorphism of two networks");
    iso->add_option("a", iso_a)->required();
    iso->add_option("b", iso_b)->required();
    iso->add_option("--mode", iso_mode, "treechild or class")->check(CLI::IsMember({"treechild", "class"}));
    iso->add_option("--class", iso_class, "Reconstructible class for --mode class");
    iso->add_option("--order-file", iso_order, "Whitespace-separated taxa, smallest first");
    iso->callback([&] {
        Network a = load_network(iso_a), b = load_network(iso_b);
        if (iso_mode == "treechild") {
            code = decision(isomorphic_tree_child(a, b));
        } else {
            if (iso_class.empty()) throw DomainError("--mode class needs --class");
            code = decision(isomorphic_in_class(a, b, parse_class(iso_class), load_order(iso_order)));
        }
    });

    // smallest-cps
    std::string sm_net, sm_order, sm_variant;
    auto* smallest = app.add_subcommand("smallest-cps", "Print the lexicographically smallest minimal CPS");
    smallest->add_option("network", sm_net)->required();
    smallest->add_option("--order-file", sm_order, "Whitespace-separated taxa, smallest first");
    smallest->add_option("--variant", sm_variant, "semibinary-stackfree, binary or nonbinary (default: by shape)");
    smallest->callback([&] {
        Network net = load_network(sm_net);
        CpsVariant v;
        if (!sm_variant.empty()) {
            v = parse_variant(sm_variant);
        } else {
            ClassReport rep = classify(net);
            v = rep.is_binary ? CpsVariant::Binary
                : rep.is_semi_binary && rep.is_stack_free ? CpsVariant::SemiBinaryStackFree
                                                          : CpsVariant::NonBinary;
        }
        std::cout << write_cps(smallest_cps(net, load_order(sm_order), v));
        code = kYes;
    });

    // generate
    std::size_t gen_n = 0, gen_r = 0;
    std::uint64_t gen_seed = 0;
    bool gen_binary = false;
    std::string gen_net_out, gen_seq_out, gen_format = "edgelist";
    auto* generate = app.add_subcommand("generate", "Random tree-child sequence and its network");
    generate->add_option("--leaves", gen_n)->required();
    generate->add_option("--retics", gen_r)->required();
    generate->add_option("--seed", gen_seed)->required();
    generate->add_flag("--binary", gen_binary, "Binary network, built under 1a2a");
    generate->add_option("--network-out", gen_net_out, "Write the network here instead of stdout");
    generate->add_option("--sequence-out", gen_seq_out, "Write the sequence here");
    generate->add_option("--format", gen_format);
    generate->callback([&] {
        Rng rng(gen_seed);
        Sequence s = random_tcs(gen_n, gen_r, rng, gen_binary);
        Network net = build_from_cps(s, parse_class(gen_binary ? "1a2a" : "1a2b"));
        std::string text = write_network(net, parse_format(gen_format));
        if (!gen_seq_out.empty()) write_file(gen_seq_out, write_cps(s));
        if (gen_net_out.empty())
            std::cout << text;
        else
            write_file(gen_net_out, text);
        code = kYes;
    });

    // subnet
    std::string sub_seq, sub_net_out, sub_seq_out, sub_format = "edgelist";
    std::size_t sub_r = 0;
    std::uint64_t sub_seed = 0;
    auto* subnet = app.add_subcommand("subnet", "Random sub-sequence of a tree-child sequence and its network");
    subnet->add_option("sequence", sub_seq)->required();
    subnet->add_option("--retics", sub_r, "Extra pairs kept beyond one per taxon")->required();
    subnet->add_option("--seed", sub_seed)->required();
    subnet->add_option("--network-out", sub_net_out);
    subnet->add_option("--sequence-out", sub_seq_out);
    subnet->add_option("--format", sub_format);
    subnet->callback([&] {
        Rng rng(sub_seed);
        Sequence s = random_sub_tcs(load_sequence(sub_seq), sub_r, rng);
        std::string text = write_network(build_from_cps(s, parse_class("1a2b")), parse_format(sub_format));
        if (!sub_seq_out.empty()) write_file(sub_seq_out, write_cps(s));
        if (sub_net_out.empty())
            std::cout << text;
        else
            write_file(sub_net_out, text);
        code = kYes;
    });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive reference checks for small networks");
    oracle->require_subcommand(1);
    std::string or_big, or_small, or_net;
    std::size_t or_cap = 200000;
    bool or_witness = false;
    auto* or_contains = oracle->add_subcommand("contains", "Containment by deletion, cleanup and contraction");
    or_contains->add_option("big", or_big)->required();
    or_contains->add_option("small", or_small)->required();
    or_contains->callback(
        [&] { code = decision(containment_bruteforce(load_network(or_big), load_network(or_small))); });
    auto* or_sub = oracle->add_subcommand("subnetwork", "Subnetwork by deletion and cleanup");
    or_sub->add_option("big", or_big)->required();
    or_sub->add_option("small", or_small)->required();
    or_sub->add_flag("--witness", or_witness, "Print the node map and edge paths");
    or_sub->callback([&] {
        Network big = load_network(or_big), small = load_network(or_small);
        EmbeddingWitness w;
        bool yes = subnetwork_bruteforce(big, small, &w);
        code = decision(yes);
        if (yes && or_witness) {
            for (const auto& [edge, path] : w.edge_paths) {
                std::cout << small.describe(edge.first) << "->" << small.describe(edge.second) << ":";
                for (NodeId v : path) std::cout << " " << big.describe(v);
                std::cout << "\n";
            }
        }
    });
    auto* or_enum = oracle->add_subcommand("enumerate", "List every minimal CPS, one per line");
    or_enum->add_option("network", or_net)->required();
    or_enum->add_option("--cap", or_cap, "Refuse beyond this many sequences");
    or_enum->callback([&] {
        for (const Sequence& s : enumerate_all_minimal_cps(load_network(or_net), or_cap))
            std::cout << to_string(s) << "\n";
        code = kYes;
    });

    // bench
    BenchGrid grid;
    std::string bench_out;
    bool bench_fit = false, bench_json = false, bench_full = false, bench_quiet = false;
    auto* bench = app.add_subcommand("bench", "Time containment over the instance grid and write CSV");
    bench->add_option("--min", grid.min);
    bench->add_option("--max", grid.max);
    bench->add_option("--step", grid.step);
    bench->add_option("--replicates", grid.replicates);
    bench->add_option("--seed", grid.base_seed);
    bench->add_option("--min-seconds", grid.min_seconds, "Timing budget per instance, split over five passes");
    bench->add_flag("--full", bench_full, "Grid 25..1000 step 25");
    bench->add_option("--out", bench_out, "CSV file (default stdout)");
    bench->add_flag("--fit", bench_fit, "Print the regression fits on stderr");
    bench->add_flag("--json", bench_json, "Print fits as JSON");
    bench->add_flag("--quiet", bench_quiet, "No progress output");
    bench->callback([&] {
        if (bench_full) {
            grid.min = 25;
            grid.max = 1000;
            grid.step = 25;
        }
        grid.threads = thread_count_from_env();
        std::size_t done = 0, wrong = 0;
        auto rows = run_benchmark(grid, [&](const BenchRecord& r) {
            ++done;
            if (r.error.empty() && r.kind == InstanceKind::No && r.result) ++wrong;
            if (!r.error.empty()) std::cerr << "row failed: n=" << r.n << " r=" << r.r << ": " << r.error << "\n";
            if (!bench_quiet && done % 100 == 0) std::cerr << done << " rows\n";
        });
        for (const BenchRecord& r : rows)
            if (r.error.empty() && r.kind == InstanceKind::Yes && !r.result)
                throw std::logic_error("yes-instance answered no (seed " + std::to_string(r.seed) + ")");
        if (wrong) std::cerr << "warning: " << wrong << " no-instances were contained after all\n";
        if (bench_out.empty())
            std::cout << to_csv(rows);
        else
            write_file(bench_out, to_csv(rows));
        if (bench_fit || bench_json) print_fits(rows, bench_json, bench_out.empty() ? std::cerr : std::cout);
        code = kYes;
    });

    // fit
    std::string fit_csv;
    bool fit_as_json = false;
    auto* fitcmd = app.add_subcommand("fit", "Regression fits for a benchmark CSV");
    fitcmd->add_option("csv", fit_csv)->required();
    fitcmd->add_flag("--json", fit_as_json);
    fitcmd->callback([&] {
        print_fits(parse_csv(read_file(fit_csv)), fit_as_json, std::cout);
        code = kYes;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return kFailure;
    }
    return code.value_or(kFailure);
}
