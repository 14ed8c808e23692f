#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/enumeration.hpp"
#include "lattice_lab/reduction.hpp"

namespace lattice_lab {

enum class Algorithm { lll, bkz, ekz };
enum class CaseStatus { ok, timeout, error };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(CaseStatus status);
Algorithm algorithm_from_string(std::string_view name);

struct BenchCase {
    LatticeFamily family;
    std::size_t n = 10;
    std::uint64_t seed = 1;
    Algorithm algorithm = Algorithm::lll;
    ReductionParams params;
    Budget budget;
};

struct BenchRecord {
    std::string run_id;
    FamilyKind family = FamilyKind::uniform;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::lll;
    Rational delta{99, 100};
    std::optional<std::size_t> beta;   // bkz only
    CaseStatus status = CaseStatus::ok;
    std::int64_t wall_time_us = 0;     // emitted as seconds with 6 decimals
    std::optional<Integer> norm_sq;
    std::optional<std::uint64_t> nodes;
    std::optional<std::uint64_t> swaps;
    std::optional<std::uint64_t> peak_mem_bytes;
    /// Diagnostic for status == error. Not part of the CSV.
    std::string detail;

    double wall_time_s() const { return static_cast<double>(wall_time_us) / 1e6; }

    /// Compares every CSV column; `detail` is ignored.
    bool operator==(const BenchRecord& other) const;
};

inline constexpr std::string_view kCsvHeader =
    "run_id,family,n,seed,algorithm,delta,beta,status,wall_time_s,norm_sq,nodes,swaps,peak_mem_bytes";

/// Generates the basis, runs the algorithm under the budget and fills the
/// record. Generation time is not counted. Solver failures become
/// status == error; nothing is thrown. A run that finishes after the budget
/// has elapsed is reported as a timeout.
BenchRecord run_case(const BenchCase& c, std::stop_token stop = {});

struct SuiteConfig {
    std::vector<LatticeFamily> families;
    std::vector<std::size_t> dimensions;
    std::vector<std::uint64_t> seeds;
    std::vector<Algorithm> algorithms;
    ReductionParams params;
    Budget budget;
    /// 0 selects the number of logical processors.
    std::size_t workers = 0;
};

/// Cases in grid order: family, then dimension, then seed, then algorithm.
/// Throws ParameterError if any axis is empty.
std::vector<BenchCase> expand_grid(const SuiteConfig& config);

/// Runs independent cases on a worker pool; results are in input order.
std::vector<BenchRecord> run_cases(const std::vector<BenchCase>& cases, std::size_t workers);

/// Runs the grid and writes the CSV (and the JSON mirror when `json_out`
/// is set). Output files are opened before any case runs; failure to open
/// them throws IoError.
std::vector<BenchRecord> run_suite(const SuiteConfig& config, const std::filesystem::path& csv_out,
                                   const std::optional<std::filesystem::path>& json_out = std::nullopt);

std::string to_csv(const std::vector<BenchRecord>& records);
/// Inverse of to_csv. Throws ParseError on a header mismatch or bad row.
std::vector<BenchRecord> parse_csv(std::string_view text);
nlohmann::json to_json(const std::vector<BenchRecord>& records);

struct ThresholdReport {
    Budget budget;
    LatticeFamily family;
    std::vector<std::size_t> dimensions_tested;
    /// Smallest tested n at which every seed timed out.
    std::optional<std::size_t> threshold_n;
    std::vector<BenchRecord> records;
};

/// Runs ekz over every (dimension, seed) pair, without stopping early, and
/// reports the smallest dimension at which all seeds time out.
ThresholdReport find_threshold(const LatticeFamily& family, const std::vector<std::size_t>& dimensions,
                               const std::vector<std::uint64_t>& seeds, const Budget& budget,
                               std::size_t workers = 0);

nlohmann::json to_json(const ThresholdReport& report);

/// Peak resident set size of this process, when the platform reports it.
std::optional<std::uint64_t> peak_memory_bytes();

} // namespace lattice_lab
