#ifndef CHOQ_VERIFY_SUITE_HPP
#define CHOQ_VERIFY_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace choq {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  ///< the quantity the tolerance applies to
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int M_1d = 256;   ///< 1-d working resolution
    int M_3d = 64;    ///< 3-d working resolution
    std::uint64_t seed = 20240101;
    bool quiet = false;
};

/// Runs the per-module invariant batteries and returns one row per check.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt);

} // namespace choq

#endif
