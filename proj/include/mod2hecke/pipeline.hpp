#ifndef MOD2HECKE_PIPELINE_HPP
#define MOD2HECKE_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mod2hecke/predict.hpp"
#include "mod2hecke/quad.hpp"

namespace mod2hecke::pipeline {

using Json = nlohmann::ordered_json;

struct PrimeRecord {
    std::uint64_t N = 0;
    unsigned residue8 = 0;
    std::size_t genus = 0;
    bool has0 = false, has1 = false;
    std::size_t rank0 = 0, rank1 = 0;
    std::size_t mult0 = 0, mult1 = 0;
    predict::Prediction prediction;
    quad::QuadInvariants quad_plus, quad_minus;
    std::int64_t excess0 = 0;
    std::int64_t excess1 = 0;
    double runtime_ms = 0;
};

/// Malformed record file; line is 1-based.
class RecordError : public std::runtime_error {
  public:
    RecordError(const std::string& path, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// T_2 on the cuspidal modular symbols, reduced mod 2 and analyzed, joined with the prediction.
PrimeRecord analyze(std::uint64_t N);

Json to_json(const predict::Prediction& p);
Json to_json(const quad::QuadInvariants& q);
Json to_json(const PrimeRecord& r);
PrimeRecord record_from_json(const Json& j);

/// One compact JSON object; runtime_ms is omitted when with_runtime is false.
std::string record_line(const PrimeRecord& r, bool with_runtime = true);

std::vector<PrimeRecord> read_records(const std::filesystem::path& path);

struct Violations {
    // Presence implied by the exact counts but not observed.
    bool presence0 = false, presence1 = false;
    // Multiplicity below the bound implied by proven results.
    bool theorem0 = false, theorem1 = false;
    // Multiplicity below the conjectured bound.
    bool conjecture0 = false, conjecture1 = false;

    bool soundness() const { return presence0 || presence1 || theorem0 || theorem1; }
    bool conjecture() const { return conjecture0 || conjecture1; }
};

Violations check(const PrimeRecord& r);

struct ResidueStats {
    unsigned residue = 0;
    std::size_t count = 0;
    std::size_t has0 = 0, has1 = 0;
    std::size_t excess0 = 0, excess1 = 0;  // records with positive excess
    std::size_t predicted0 = 0, predicted1 = 0;
    std::size_t unexplained0 = 0, unexplained1 = 0;  // observed but not implied
    std::size_t ss_dihedral = 0;                     // ss_count > 0
    std::size_t ord_dihedral_a2_1 = 0;               // some a2 = 1 dihedral ideal
    std::size_t plus_a2_1 = 0, minus_a2_1 = 0;

    static double freq(std::size_t k, std::size_t n) { return n ? static_cast<double>(k) / n : 0.0; }
};

struct ScanSummary {
    std::array<ResidueStats, 4> classes{};  // residues 1, 3, 5, 7
    std::size_t total = 0;
    std::size_t soundness_violations = 0;
    std::size_t conjecture_violations = 0;
    std::vector<std::uint64_t> soundness_primes;
    std::vector<std::uint64_t> conjecture_primes;

    const ResidueStats& of(unsigned residue8) const { return classes.at(residue8 / 2); }
};

ScanSummary summarize(const std::vector<PrimeRecord>& records);

struct ScanOptions {
    std::uint64_t lo = 3;
    std::uint64_t hi = 20000;
    unsigned jobs = 1;
    std::filesystem::path out;
    bool resume = false;
    // Stop after this many newly written records (0 = no limit); used to simulate interruption.
    std::size_t limit = 0;
};

struct ScanResult {
    ScanSummary summary;     // over the records in [lo, hi]
    std::size_t computed = 0;
    std::size_t skipped = 0;  // already present when resuming
};

ScanResult scan(const ScanOptions& opt);

/// Aligned text report with the heuristic comparison.
std::string stats_text(const ScanSummary& s);
Json stats_json(const ScanSummary& s);

}  // namespace mod2hecke::pipeline

#endif
