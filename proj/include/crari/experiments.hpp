#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crari/synth.hpp"

namespace crari {

/// Canned desk-scale studies on generated data. Every study emits one row per
/// missing-data proportion, averaged over replications.
///  - fig2:  Z-scores; exact, missing, ARI-imputed and corrected ICC.
///  - fig3:  non-centred / centred / Z-score / mixed Z-score versions; exact, missing, corrected ICC.
///  - fig4:  Z-scores; exact, missing, corrected, CRARI-imputed (corrected target) ICC.
///  - fig9:  as fig4 plus the correlation between original and degraded item means.
///  - fig11: Z-scores and a noisy predictor of beta; exact, observed and corrected r2.
struct ExperimentSpec {
    std::string name = "fig2";
    SynthSpec synth;
    std::vector<double> p_grid;  ///< empty selects the study's default grid
    std::size_t replications = 10;
    double column_offset_sd = 6.0;    ///< fig3 participant main effect
    double predictor_noise_sd = 0.5;  ///< fig11 predictor = beta + noise
};

struct CurveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  ///< one vector per column

    [[nodiscard]] const std::vector<double>& column(const std::string& name) const;
};

[[nodiscard]] std::vector<std::string> experiment_names();
[[nodiscard]] std::vector<double> default_p_grid(const std::string& name);
[[nodiscard]] CurveTable run_experiment(const ExperimentSpec& spec);

}  // namespace crari
