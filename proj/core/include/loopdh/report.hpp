#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopdh/weights.hpp"

namespace loopdh {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepModel : std::uint8_t { On, C2, GenOn };
enum class BranchChoice : std::uint8_t { Real, Imaginary, Both };

std::string to_string(SweepModel m);
std::string to_string(BranchChoice b);

struct Tolerances {
    double residual = 1e-10;
    double rank = 1e-9;
    double projective = 1e-8;
};

// Fixed tolerances of the identity-style checks (fugacity relations, blob
// rescaling, exact reductions); not affected by --tol.
inline constexpr double kIdentityTol = 1e-12;

struct Perturbation {
    WeightSymbol target = WeightSymbol::Beta1;
    double delta = 0.0;
};

struct SweepConfig {
    SweepModel model = SweepModel::On;
    BranchChoice branch = BranchChoice::Both;
    std::vector<double> lambda_grid;
    std::vector<double> lambda1_grid;
    std::vector<double> x_grid;
    std::vector<double> y_grid;
    std::vector<double> k_grid;
    double scale = 1.0;   // n2 for O(n), n1 for C2 and the generalised model
    Tolerances tol;
    std::vector<std::string> checks;
    std::optional<Perturbation> perturbation;
};

// Default configuration for a model (grids per the shipped defaults).
SweepConfig default_config(SweepModel model);

// Parse and validate a JSON config; missing fields fall back to the model's
// defaults. Throws config_error on malformed input.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config_file(const std::string& path);

std::string config_to_json(const SweepConfig& cfg);

struct GridPoint {
    std::optional<double> lambda, lambda1, x, y, k;
};

struct Record {
    std::string check;          // dh-bulk | dh-boundary | solve | reflection | limits
    std::string model;
    std::string branch;         // real | imaginary | n/a
    GridPoint point;
    std::string kind;           // residual | rank | deviation | identity | skip
    double value = 0.0;
    std::optional<int> expected_rank;
    double tolerance = 0.0;
    std::string verdict;        // pass | fail | skipped
    std::string note;
};

struct Summary {
    std::map<std::string, double> max_residual_per_check;
    std::map<std::string, int> pass_per_check;
    std::map<std::string, int> fail_per_check;
    int skipped = 0;
    bool all_pass = true;
};

struct VerificationReport {
    std::string engine;
    std::string timestamp;
    SweepConfig config;
    std::vector<Record> records;
    Summary summary;

    void add(Record r);
    void finalize();   // sorts records by (check, insertion order) and builds the summary
};

// Serialises the report as UTF-8 JSON with every real printed to 17
// significant digits (lossless double round-trip).
std::string report_to_json(const VerificationReport& report);
void write_report_file(const VerificationReport& report, const std::string& path);

std::string engine_version();

}  // namespace loopdh
