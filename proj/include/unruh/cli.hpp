#pragma once

#include "unruh/channel.hpp"
#include "unruh/fock.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Library layer behind the command-line tool: amplitude parsing, the capacity
// sweep CSV, the block dump format, the verification suites, and the
// closed-form-vs-oracle comparison.  Everything here is deterministic given
// its arguments (the verification suites take an explicit seed), so the
// binary stays a thin argument-handling shell.

namespace unruh::cli {

// Parses a comma-separated amplitude list, each entry `re`, `imj`, or
// `re+imj` (exponents allowed, e.g. 7.07e-1+0j).  The amplitudes must be
// normalized within 1e-6.  Throws std::invalid_argument on malformed input.
fock::QuditState parse_beta(const std::string& text);

// ---- capacity sweep --------------------------------------------------------

struct SweepConfig {
    std::vector<int> d_list{2, 3, 5, 10};
    double z_start = 0.0;
    double z_stop = 0.99;
    int z_points = 100;
    double tol = 1e-10;

    void validate() const;  // grid within [0, 1 - 1e-6], points >= 2, tol > 0
};

// CSV with header `d,z,Q_bits,Qp_bits,Qp_dits,terms,tail_bound`, one row per
// (d, z) grid point, LF line endings, 12 significant digits.  `terms` and
// `tail_bound` certify the series truncation of each row.
void write_capacity_csv(const SweepConfig& config, std::ostream& out);
std::string capacity_csv(const SweepConfig& config);

// ---- block dump format -----------------------------------------------------

// Text dump of sector blocks: a header (d, z, side, basis-ordering tag, tail
// bound) followed by one record per block carrying k, weight, dimension, and
// the row-major complex entries as `re im` pairs.  Values are printed with 17
// significant digits so a write/read round trip is exact.
struct BlockRecord {
    int k = 0;
    double weight = 0;
    Eigen::MatrixXcd entries;
};

struct BlockDump {
    int d = 0;
    double z = 0;
    channel::Side side = channel::Side::A;
    std::string order = "colex-descending";
    double tail = 0;
    std::vector<BlockRecord> records;
};

BlockDump to_dump(const channel::BlockState& state);  // densifies every block
void write_block_dump(const BlockDump& dump, std::ostream& out);
BlockDump read_block_dump(std::istream& in);  // throws std::runtime_error on bad input

// Single-sector dump of the raw (unnormalized) sector-k matrix for the given
// amplitudes: trace equals C(d+k-1, d), weight field 1, tail 0.
BlockDump single_raw_block(int d, int k, const fock::QuditState& beta,
                           channel::Side side);

// ---- verification suites ---------------------------------------------------

struct PropertyResult {
    std::string suite;
    std::string name;
    int cases = 0;
    double max_residual = 0;
    double tolerance = 0;

    bool passed() const { return max_residual <= tolerance; }
};

struct VerifyReport {
    std::string suite;
    std::vector<PropertyResult> properties;

    bool all_passed() const;
};

// Suites: structure (block algebra of the channel), degradability (conjugate
// degrading map reaches the complement), covariance (symmetric-representation
// properties), oracle (squeezer simulation agreement), capacity (series
// consistency and figure shapes), or all.  The default seed is kDefaultSeed;
// randomness only widens coverage, every property also holds at any seed.
inline constexpr std::uint64_t kDefaultSeed = 20110509;

VerifyReport run_verify(const std::string& suite, std::uint64_t seed = kDefaultSeed);
const std::vector<std::string>& verify_suite_names();
std::string format_report(const VerifyReport& report);  // aligned text table

// ---- oracle comparison -----------------------------------------------------

struct OracleComparison {
    int d = 0;
    double z = 0;
    double tail_epsilon = 0;
    int sectors = 0;

    struct SectorDistance {
        int k;
        double distance;  // weighted trace distance between the two routes
    };
    std::vector<SectorDistance> per_sector;

    double total = 0;             // sum of the per-sector distances
    double uncaptured = 0;        // weight beyond the truncation, closed form
    double oracle_uncaptured = 0; // declared loss of the squeezer simulation
};

// Builds the channel output of `beta` once through the closed block form and
// once through the squeezer simulation, both truncated to the same certified
// tail, and reports the per-sector trace distances.  Sectors of dimension at
// most 256 are compared by exact eigensolve, larger ones by the
// sqrt(dim) * Frobenius upper bound.
OracleComparison compare_against_oracle(int d, double z, const fock::QuditState& beta,
                                        double tail_epsilon);
std::string format_oracle_comparison(const OracleComparison& comparison);

}  // namespace unruh::cli
