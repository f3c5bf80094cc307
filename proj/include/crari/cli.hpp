#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace crari {

/// Fully resolved command line. Every field is echoed in the report.
struct RunConfig {
    std::string command;  ///< icc, impute, ecvt, fit, synth, experiment
    std::string input;
    std::string output;
    std::string report;  ///< report path; empty writes to stdout
    std::string missing_code;
    std::uint64_t seed = 1;
    std::string target = "corrected";  ///< low, corrected, or a value in (0, 1)
    std::vector<double> conf = {0.95, 0.99, 0.999};
    std::vector<std::size_t> groups;  ///< empty selects the default sizes
    std::size_t resamples = 200;
    double alpha = 0.05;
    bool fisher_z = false;
    bool zscore = false;
    bool mix = false;
    bool virtualize = false;
    std::vector<double> p_grid;
    std::size_t replications = 10;
    std::string predictors;
    std::string curve;
    double c_max = 10.0;
    double c_tolerance = 1e-4;

    // synth and experiment
    std::size_t rows = 1400;
    std::size_t cols = 80;
    double mu = 0.0;
    double sigma_beta = 1.0;
    double sigma_eps = 2.5;
    double s = 0.0;
    double degrade = 0.0;
    std::string truth;  ///< prefix for <truth>_beta.csv and <truth>_alpha.csv
    std::string experiment = "fig2";
};

/// Checks cross-flag requirements; throws PreconditionError naming the flag.
void validate(const RunConfig& config);

/// Executes a validated config. Returns the process exit code; errors are
/// reported as one line on @p err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, validates and runs. Usage errors exit with code 6.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crari
