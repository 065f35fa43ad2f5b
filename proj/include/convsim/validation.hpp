#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace convsim {

// One validation check with its measured margin.
struct CheckResult {
    std::string id;       // e.g. "waiting-law/sampler-ks"
    std::string detail;   // measured value vs threshold, human readable
    bool pass = false;
    double seconds = 0.0;
};

struct ValidationConfig {
    std::uint64_t seed = 7;
    // "full" runs everything at the calibrated sample sizes; "tiny"
    // divides sample counts by 10 and doubles tolerances.
    bool tiny = false;
    unsigned workers = 0;       // 0 = hardware concurrency
    std::string cli_path;       // binary used for the determinism checks; empty skips them
    std::string scratch_dir;    // where determinism runs write their files
};

// Runs the whole validation suite; one entry per check, in a fixed order.
std::vector<CheckResult> run_validation(const ValidationConfig& config);

}  // namespace convsim
