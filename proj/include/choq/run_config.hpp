#ifndef CHOQ_RUN_CONFIG_HPP
#define CHOQ_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choq/report_io.hpp"

namespace choq {

/// One run = one flat JSON config mirroring the type tree.
struct RunConfig {
    ProblemParams params;
    Grid grid{1, 16.0, 256};
    SolverConfig solver;
    std::string init = "gaussian";
    std::string output_dir = "out";
    std::uint64_t seed = 1234;
    int threads = 1;

    // sweep
    std::vector<double> mu_values;            ///< absolute μ values
    std::vector<double> mu_threshold_factors; ///< multiples of the a* threshold

    // gapcheck
    std::vector<double> eps_list{0.1, 0.05, 0.025, 0.01, 0.005, 0.0025};
    double gap_tolerance = 1e-3;

    // constants
    bool include_cgn = false;
    std::optional<Grid> cgn_grid;

    // verify
    int verify_M_1d = 256;
    int verify_M_3d = 64;

    std::string source_path; ///< where the config was loaded from
    std::uint64_t content_hash = 0;
    json raw;                ///< the resolved document embedded in reports
};

RunConfig load_run_config(const std::string& path);
json resolved_config_json(const RunConfig& rc);

} // namespace choq

#endif
