#include "lattice_lab/benchmark.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "lattice_lab/error.hpp"

namespace lattice_lab {

using nlohmann::json;

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::lll:
        return "lll";
    case Algorithm::bkz:
        return "bkz";
    case Algorithm::ekz:
        return "ekz";
    }
    return "?";
}

std::string_view to_string(CaseStatus status)
{
    switch (status) {
    case CaseStatus::ok:
        return "ok";
    case CaseStatus::timeout:
        return "timeout";
    case CaseStatus::error:
        return "error";
    }
    return "?";
}

Algorithm algorithm_from_string(std::string_view name)
{
    if (name == "lll")
        return Algorithm::lll;
    if (name == "bkz")
        return Algorithm::bkz;
    if (name == "ekz")
        return Algorithm::ekz;
    throw ParameterError("unknown algorithm '" + std::string(name) + "'");
}

bool BenchRecord::operator==(const BenchRecord& o) const
{
    return run_id == o.run_id && family == o.family && n == o.n && seed == o.seed && algorithm == o.algorithm &&
           delta == o.delta && beta == o.beta && status == o.status && wall_time_us == o.wall_time_us &&
           norm_sq == o.norm_sq && nodes == o.nodes && swaps == o.swaps && peak_mem_bytes == o.peak_mem_bytes;
}

std::optional<std::uint64_t> peak_memory_bytes()
{
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0)
        return std::nullopt;
    // Linux reports kilobytes.
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

BenchRecord run_case(const BenchCase& c, std::stop_token stop)
{
    using Clock = std::chrono::steady_clock;

    BenchRecord rec;
    rec.family = c.family.kind;
    rec.n = c.n;
    rec.seed = c.seed;
    rec.algorithm = c.algorithm;
    rec.delta = c.params.delta;
    if (c.algorithm == Algorithm::bkz)
        rec.beta = c.params.beta;
    rec.run_id = std::string(to_string(c.family.kind)) + "-n" + std::to_string(c.n) + "-s" + std::to_string(c.seed) +
                 "-" + std::string(to_string(c.algorithm));

    Clock::time_point start{};
    try {
        c.budget.validate();
        const Basis basis = gen_basis(c.family, c.n, c.seed);
        start = Clock::now();
        const auto cancel = CancelSignal(start + std::chrono::duration_cast<Clock::duration>(
                                                     std::chrono::duration<double>(c.budget.wall_time_s)),
                                         stop);
        switch (c.algorithm) {
        case Algorithm::lll:
        case Algorithm::bkz: {
            const auto report =
                c.algorithm == Algorithm::lll ? lll(basis, c.params, cancel) : bkz(basis, c.params, cancel);
            rec.status = report.status == ReductionStatus::timeout ? CaseStatus::timeout : CaseStatus::ok;
            rec.norm_sq = report.basis.row_norm_sq(0);
            rec.swaps = report.swaps;
            break;
        }
        case Algorithm::ekz: {
            const auto svp = enumerate_svp(basis, c.budget, stop);
            rec.status = svp.status == SvpStatus::ok ? CaseStatus::ok : CaseStatus::timeout;
            rec.norm_sq = svp.norm_sq;
            rec.nodes = svp.nodes;
            break;
        }
        }
        rec.wall_time_us =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
        if (rec.status == CaseStatus::ok && rec.wall_time_s() > c.budget.wall_time_s)
            rec.status = CaseStatus::timeout;
    } catch (const std::exception& e) {
        rec.status = CaseStatus::error;
        rec.norm_sq.reset();
        rec.nodes.reset();
        rec.swaps.reset();
        rec.detail = e.what();
        if (start != Clock::time_point{})
            rec.wall_time_us =
                std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
    }
    rec.peak_mem_bytes = peak_memory_bytes();
    return rec;
}

std::vector<BenchCase> expand_grid(const SuiteConfig& config)
{
    if (config.families.empty() || config.dimensions.empty() || config.seeds.empty() || config.algorithms.empty())
        throw ParameterError("benchmark grid has an empty axis");
    std::vector<BenchCase> cases;
    for (const auto& family : config.families)
        for (auto n : config.dimensions)
            for (auto seed : config.seeds)
                for (auto algo : config.algorithms)
                    cases.push_back(BenchCase{family, n, seed, algo, config.params, config.budget});
    return cases;
}

std::vector<BenchRecord> run_cases(const std::vector<BenchCase>& cases, std::size_t workers)
{
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(cases.size(), 1));

    std::vector<BenchRecord> records(cases.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&](std::stop_token stop) {
                for (std::size_t i = next++; i < cases.size(); i = next++)
                    records[i] = run_case(cases[i], stop);
            });
        }
        // ~jthread would request a stop first.
        for (auto& t : pool)
            t.join();
    }
    return records;
}

namespace {

std::string format_seconds(std::int64_t us)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(us / 1000000),
                  static_cast<long long>(us % 1000000));
    return buf;
}

std::string delta_text(const Rational& delta)
{
    return delta.get_num().get_str() + "/" + delta.get_den().get_str();
}

template <class T>
std::string opt_text(const std::optional<T>& v)
{
    if (!v)
        return {};
    if constexpr (std::is_same_v<T, Integer>)
        return v->get_str();
    else
        return std::to_string(*v);
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <class T>
T parse_unsigned(std::string_view s, std::size_t line)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad number '" + std::string(s) + "'", line);
    return v;
}

template <class T>
std::optional<T> parse_optional(std::string_view s, std::size_t line)
{
    if (s.empty())
        return std::nullopt;
    return parse_unsigned<T>(s, line);
}

std::int64_t parse_seconds_us(std::string_view s, std::size_t line)
{
    const auto dot = s.find('.');
    if (dot == std::string_view::npos || s.size() - dot - 1 != 6)
        throw ParseError("wall_time_s must have 6 decimals: '" + std::string(s) + "'", line);
    const auto whole = parse_unsigned<std::int64_t>(s.substr(0, dot), line);
    const auto frac = parse_unsigned<std::int64_t>(s.substr(dot + 1), line);
    return whole * 1000000 + frac;
}

CaseStatus status_from_string(std::string_view s, std::size_t line)
{
    if (s == "ok")
        return CaseStatus::ok;
    if (s == "timeout")
        return CaseStatus::timeout;
    if (s == "error")
        return CaseStatus::error;
    throw ParseError("bad status '" + std::string(s) + "'", line);
}

} // namespace

std::string to_csv(const std::vector<BenchRecord>& records)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.run_id << ',' << to_string(r.family) << ',' << r.n << ',' << r.seed << ',' << to_string(r.algorithm)
            << ',' << delta_text(r.delta) << ',' << opt_text(r.beta) << ',' << to_string(r.status) << ','
            << format_seconds(r.wall_time_us) << ',' << opt_text(r.norm_sq) << ',' << opt_text(r.nodes) << ','
            << opt_text(r.swaps) << ',' << opt_text(r.peak_mem_bytes) << '\n';
    }
    return out.str();
}

std::vector<BenchRecord> parse_csv(std::string_view text)
{
    std::vector<BenchRecord> out;
    std::size_t pos = 0;
    std::size_t line = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        const std::string_view row = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line;
        if (line == 1) {
            if (row != kCsvHeader)
                throw ParseError("unexpected CSV header '" + std::string(row) + "'", 1);
            continue;
        }
        const auto f = split_commas(row);
        if (f.size() != 13)
            throw ParseError("expected 13 fields, found " + std::to_string(f.size()), line);
        BenchRecord r;
        r.run_id = std::string(f[0]);
        try {
            r.family = family_kind_from_string(f[1]);
            r.algorithm = algorithm_from_string(f[4]);
            r.delta = parse_delta(f[5]);
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), line);
        }
        r.n = parse_unsigned<std::size_t>(f[2], line);
        r.seed = parse_unsigned<std::uint64_t>(f[3], line);
        r.beta = parse_optional<std::size_t>(f[6], line);
        r.status = status_from_string(f[7], line);
        r.wall_time_us = parse_seconds_us(f[8], line);
        if (!f[9].empty()) {
            Integer v;
            if (v.set_str(std::string(f[9]), 10) != 0)
                throw ParseError("bad norm_sq '" + std::string(f[9]) + "'", line);
            r.norm_sq = v;
        }
        r.nodes = parse_optional<std::uint64_t>(f[10], line);
        r.swaps = parse_optional<std::uint64_t>(f[11], line);
        r.peak_mem_bytes = parse_optional<std::uint64_t>(f[12], line);
        out.push_back(std::move(r));
    }
    if (line == 0)
        throw ParseError("empty CSV", 1);
    return out;
}

json to_json(const std::vector<BenchRecord>& records)
{
    auto opt = [](const auto& v) -> json {
        if (!v)
            return nullptr;
        return *v;
    };
    json out = json::array();
    for (const auto& r : records) {
        out.push_back(json{
            {"run_id", r.run_id},
            {"family", std::string(to_string(r.family))},
            {"n", r.n},
            {"seed", r.seed},
            {"algorithm", std::string(to_string(r.algorithm))},
            {"delta", delta_text(r.delta)},
            {"beta", opt(r.beta)},
            {"status", std::string(to_string(r.status))},
            {"wall_time_s", r.wall_time_s()},
            {"norm_sq", r.norm_sq ? json(r.norm_sq->get_str()) : json(nullptr)},
            {"nodes", opt(r.nodes)},
            {"swaps", opt(r.swaps)},
            {"peak_mem_bytes", opt(r.peak_mem_bytes)},
        });
    }
    return out;
}

std::vector<BenchRecord> run_suite(const SuiteConfig& config, const std::filesystem::path& csv_out,
                                   const std::optional<std::filesystem::path>& json_out)
{
    const auto cases = expand_grid(config);

    std::ofstream csv(csv_out, std::ios::binary | std::ios::trunc);
    if (!csv)
        throw IoError("cannot open '" + csv_out.string() + "' for writing");
    std::ofstream js;
    if (json_out) {
        js.open(*json_out, std::ios::binary | std::ios::trunc);
        if (!js)
            throw IoError("cannot open '" + json_out->string() + "' for writing");
    }

    auto records = run_cases(cases, config.workers);

    csv << to_csv(records);
    if (!csv.flush())
        throw IoError("failed writing '" + csv_out.string() + "'");
    if (json_out) {
        js << to_json(records).dump(2) << '\n';
        if (!js.flush())
            throw IoError("failed writing '" + json_out->string() + "'");
    }
    return records;
}

ThresholdReport find_threshold(const LatticeFamily& family, const std::vector<std::size_t>& dimensions,
                               const std::vector<std::uint64_t>& seeds, const Budget& budget, std::size_t workers)
{
    if (dimensions.empty() || seeds.empty())
        throw ParameterError("threshold search needs at least one dimension and one seed");
    for (std::size_t i = 1; i < dimensions.size(); ++i)
        if (dimensions[i] <= dimensions[i - 1])
            throw ParameterError("dimensions must be strictly ascending");
    budget.validate();

    SuiteConfig config;
    config.families = {family};
    config.dimensions = dimensions;
    config.seeds = seeds;
    config.algorithms = {Algorithm::ekz};
    config.budget = budget;

    ThresholdReport report;
    report.budget = budget;
    report.family = family;
    report.dimensions_tested = dimensions;
    report.records = run_cases(expand_grid(config), workers);

    for (auto n : dimensions) {
        const bool all_timeout =
            std::all_of(report.records.begin(), report.records.end(), [n](const BenchRecord& r) {
                return r.n != n || r.status == CaseStatus::timeout;
            });
        if (all_timeout) {
            report.threshold_n = n;
            break;
        }
    }
    return report;
}

json to_json(const ThresholdReport& report)
{
    json j;
    j["budget_s"] = report.budget.wall_time_s;
    j["family"] = std::string(to_string(report.family.kind));
    j["bits"] = report.family.bits;
    j["q"] = report.family.q;
    j["dimensions_tested"] = report.dimensions_tested;
    j["threshold_n"] = report.threshold_n ? json(*report.threshold_n) : json("none within range");
    j["records"] = to_json(report.records);
    return j;
}

} // namespace lattice_lab
