#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbscl/codes.hpp"
#include "nbscl/simulator.hpp"

namespace nbscl {

// Flat sectioned key = value run configuration; unknown sections or keys are
// rejected with file:line diagnostics.
struct RunConfig {
    // [code]
    std::string family; // ers | nb-ebch | custom
    int field_r = 0;
    int N = 0;
    int K = 0;
    std::uint32_t poly = 0; // 0 = built-in default
    std::string code_file;
    // [decoder]
    std::string decoder = "scl"; // sc | scl | bm | chase-bm
    int list_size = 1;
    std::string sorter = "r-step"; // r-step | full
    int eta = 0;
    // [channel]
    std::vector<double> snr_db;
    bool noiseless = false;
    // [sim]
    std::uint64_t seed = 1;
    std::uint64_t max_frames = 1'000'000;
    std::uint64_t target_errors = 200;
    int threads = 1;
    // [output]
    std::string fer_csv;

    DecoderSpec decoder_spec() const; // throws ConfigError on bad combinations
    StopRule stop_rule() const { return {max_frames, target_errors}; }
};

RunConfig parse_run_config(const std::string& path);

// Builds the code described by the [code] section.
CodeSpec build_code(const RunConfig& cfg);

} // namespace nbscl
