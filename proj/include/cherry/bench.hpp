#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cherry/generation.hpp"

namespace cherry {

struct BenchGrid {
    std::size_t min = 100, max = 1000, step = 100;
    std::size_t replicates = 2;
    std::uint64_t base_seed = 1;
    // Each instance is timed in five passes over the grid, each after one
    // warm-up call and lasting a fifth of this; the reported figure is the
    // best per-call mean of a pass.
    double min_seconds = 0.02;
    std::size_t threads = 1;
};

struct BenchRecord {
    std::size_t n = 0, r = 0, r_prime = 0;
    InstanceKind kind = InstanceKind::Yes;
    bool result = false;
    double seconds = 0;
    std::uint64_t seed = 0;
    std::string error;  // non-empty when the row failed
};

inline constexpr const char* kCsvHeader = "n,r,r_prime,kind,result,seconds,seed";

// Rows come back in grid order whatever the thread count. progress, if
// set, is called after every finished row.
std::vector<BenchRecord> run_benchmark(const BenchGrid& grid,
                                       const std::function<void(const BenchRecord&)>& progress = {});

std::string to_csv_row(const BenchRecord& r);
std::string to_csv(const std::vector<BenchRecord>& rows);
// Throws ParseError on a malformed file.
std::vector<BenchRecord> parse_csv(std::string_view text);

enum class FitSplit { All, Yes, No };
std::string to_string(FitSplit s);

struct FitReport {
    FitSplit split = FitSplit::All;
    std::size_t samples = 0;
    double slope_leaves = 0, slope_r = 0, slope_r_prime = 0;
    // Against the zero-intercept model: 1 - SS_res / sum(y^2).
    double r_squared = 0;
};

// Least squares of seconds on (n, r, r_prime) with no intercept.
// Throws DomainError with fewer than three rows or a rank-deficient design.
FitReport fit(const std::vector<BenchRecord>& records, FitSplit split);

} // namespace cherry
