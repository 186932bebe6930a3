#include "cherry/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "cherry/algorithms.hpp"
#include "cherry/error.hpp"

namespace cherry {

namespace {

struct Cell {
    std::size_t n, r, r_prime;
    InstanceKind kind;
    std::size_t replicate;
};

std::vector<Cell> grid_cells(const BenchGrid& g) {
    if (g.step == 0 || g.min == 0 || g.min > g.max) throw DomainError("benchmark grid needs 0 < min <= max and step > 0");
    std::vector<Cell> cells;
    for (std::size_t n = g.min; n <= g.max; n += g.step)
        for (std::size_t r = g.min; r <= g.max; r += g.step)
            for (std::size_t rp = g.min; rp <= r; rp += g.step)
                for (InstanceKind k : {InstanceKind::Yes, InstanceKind::No})
                    for (std::size_t rep = 0; rep < g.replicates; ++rep) cells.push_back({n, r, rp, k, rep});
    return cells;
}

// Each cell is timed once per pass, and passes visit the cells in
// different shuffled orders. The fastest pass is kept, so a slow spell of
// the host has to overlap every pass of a cell to distort it.
constexpr int kPasses = 5;

BenchRecord run_cell(const Cell& c, const BenchGrid& g, double budget) {
    using Clock = std::chrono::steady_clock;
    BenchRecord rec;
    rec.n = c.n;
    rec.r = c.r;
    rec.r_prime = c.r_prime;
    rec.kind = c.kind;
    try {
        Instance inst = make_instance(c.n, c.r, c.r_prime, c.kind, g.base_seed, c.replicate);
        rec.seed = inst.seed;
        // One untimed call first so cold caches do not land in the figure.
        bool result = tcn_contains(inst.big, inst.small);
        std::size_t calls = 0;
        auto start = Clock::now();
        std::chrono::duration<double> elapsed{};
        do {
            result = tcn_contains(inst.big, inst.small);
            ++calls;
            elapsed = Clock::now() - start;
        } while (elapsed.count() < budget);
        rec.result = result;
        rec.seconds = elapsed.count() / static_cast<double>(calls);
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::vector<BenchRecord> run_benchmark(const BenchGrid& grid, const std::function<void(const BenchRecord&)>& progress) {
    std::vector<Cell> cells = grid_cells(grid);
    std::vector<BenchRecord> rows(cells.size());
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(grid.base_seed);
    std::mutex report_mutex;
    for (int pass = 0; pass < kPasses; ++pass) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng.below(i)]);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next++; k < cells.size(); k = next++) {
                std::size_t i = order[k];
                BenchRecord rec = run_cell(cells[i], grid, grid.min_seconds / kPasses);
                if (pass == 0 || (rec.error.empty() && rec.seconds < rows[i].seconds)) rows[i] = rec;
                else if (!rec.error.empty()) rows[i].error = rec.error;
                if (progress && pass == kPasses - 1) {
                    std::lock_guard<std::mutex> lock(report_mutex);
                    progress(rows[i]);
                }
            }
        };
        std::size_t threads = std::max<std::size_t>(1, grid.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
    return rows;
}

std::string to_csv_row(const BenchRecord& r) {
    std::string result = !r.error.empty() ? "error" : (r.result ? "yes" : "no");
    return std::to_string(r.n) + "," + std::to_string(r.r) + "," + std::to_string(r.r_prime) + "," +
           to_string(r.kind) + "," + result + "," + format_double(r.seconds) + "," + std::to_string(r.seed);
}

std::string to_csv(const std::vector<BenchRecord>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const BenchRecord& r : rows) out += to_csv_row(r) + "\n";
    return out;
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
    std::vector<BenchRecord> out;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kCsvHeader) throw ParseError(1, 1, "expected header " + std::string(kCsvHeader));
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t col = 0;
        for (std::size_t comma; (comma = line.find(',', col)) != std::string_view::npos; col = comma + 1)
            f.push_back(line.substr(col, comma - col));
        f.push_back(line.substr(col));
        if (f.size() != 7) throw ParseError(line_no, 1, "expected 7 fields");

        BenchRecord r;
        auto number = [&](std::string_view s, auto& dst, std::size_t field) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), dst);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw ParseError(line_no, field, "bad number '" + std::string(s) + "'");
        };
        number(f[0], r.n, 1);
        number(f[1], r.r, 2);
        number(f[2], r.r_prime, 3);
        if (f[3] == "yes")
            r.kind = InstanceKind::Yes;
        else if (f[3] == "no")
            r.kind = InstanceKind::No;
        else
            throw ParseError(line_no, 4, "kind must be yes or no");
        if (f[4] == "yes")
            r.result = true;
        else if (f[4] == "no")
            r.result = false;
        else if (f[4] == "error")
            r.error = "error";
        else
            throw ParseError(line_no, 5, "result must be yes, no or error");
        number(f[5], r.seconds, 6);
        number(f[6], r.seed, 7);
        out.push_back(r);
    }
    return out;
}

std::string to_string(FitSplit s) {
    switch (s) {
    case FitSplit::All: return "all";
    case FitSplit::Yes: return "yes";
    case FitSplit::No: return "no";
    }
    return "?";
}

FitReport fit(const std::vector<BenchRecord>& records, FitSplit split) {
    std::vector<const BenchRecord*> use;
    for (const BenchRecord& r : records) {
        if (!r.error.empty()) continue;
        if (split == FitSplit::Yes && r.kind != InstanceKind::Yes) continue;
        if (split == FitSplit::No && r.kind != InstanceKind::No) continue;
        use.push_back(&r);
    }
    if (use.size() < 3) throw DomainError("fit needs at least three rows in split " + to_string(split));

    Eigen::MatrixXd x(use.size(), 3);
    Eigen::VectorXd y(use.size());
    for (std::size_t i = 0; i < use.size(); ++i) {
        x(i, 0) = static_cast<double>(use[i]->n);
        x(i, 1) = static_cast<double>(use[i]->r);
        x(i, 2) = static_cast<double>(use[i]->r_prime);
        y(i) = use[i]->seconds;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < 3) throw DomainError("design matrix is rank deficient in split " + to_string(split));
    Eigen::Vector3d beta = qr.solve(y);

    FitReport rep;
    rep.split = split;
    rep.samples = use.size();
    rep.slope_leaves = beta(0);
    rep.slope_r = beta(1);
    rep.slope_r_prime = beta(2);
    double total = y.squaredNorm();
    rep.r_squared = total > 0 ? 1.0 - (y - x * beta).squaredNorm() / total : 1.0;
    return rep;
}

} // namespace cherry
