#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbscl/baseline.hpp"
#include "nbscl/polar_map.hpp"
#include "nbscl/scl_decoder.hpp"

namespace nbscl {

// Counter-based per-frame random stream (SplitMix64 over a key derived from
// seed and frame index), so frames are reproducible independently of
// execution order and thread count.
class FrameRng {
public:
    FrameRng(std::uint64_t seed, std::uint64_t frame);

    std::uint64_t next_u64();
    double next_unit();   // (0, 1]
    double next_gauss();  // standard normal, Box-Muller
    FieldElem next_symbol(int field_size); // uniform over [0, 2^r)

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

struct ChannelConfig {
    double ebn0_db = 0.0;
    double code_rate = 0.0;
    double noise_var = 0.0; // sigma^2 = 1 / (2 R 10^{EbN0/10})
    std::uint64_t seed = 0;
    bool noiseless = false;

    static ChannelConfig make(double ebn0_db, double code_rate, std::uint64_t seed,
                              bool noiseless = false);
};

// BPSK over AWGN, bit order follows the binary composition of the codeword:
// y[i*r + j] = (1 - 2 c_i[j]) + n, n ~ N(0, sigma^2).
std::vector<double> transmit(const std::vector<FieldElem>& codeword, int r,
                             const ChannelConfig& cfg, FrameRng& rng);

// Bit LLRs 2 y / sigma^2 clipped to +-40, de-permuted by P^{-1} and grouped
// into the r component decoder inputs.
std::vector<std::vector<double>> channel_llrs(const std::vector<double>& y, int r,
                                              const ChannelConfig& cfg,
                                              const Permutation& perm);

enum class DecoderKind { kSc, kScl, kBm, kChaseBm };

struct DecoderSpec {
    DecoderKind kind = DecoderKind::kScl;
    int list_size = 1;
    Sorter sorter = Sorter::kRStep;
    int eta = 0;

    std::string label() const;
};

struct StopRule {
    std::uint64_t max_frames = 1'000'000;
    std::uint64_t target_errors = 200;
};

struct SimResult {
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;
    double fer = 0.0;
    double mean_field_ops = 0.0;
    double mean_flops = 0.0;
};

// Everything needed to re-run an experiment bit-exactly; written as a
// comment header in every CSV.
struct SimMetadata {
    std::string family;
    int field_r = 0;
    std::uint32_t field_poly = 0;
    int N = 0;
    int K = 0;
    std::string permutation = "eq14-alpha-powers";
    std::string decoder;
    std::uint64_t seed = 0;
    std::uint64_t max_frames = 0;
    std::uint64_t target_errors = 0;
    int threads = 1;
    bool noiseless = false;
    int convention_version = 1;

    std::vector<std::pair<std::string, std::string>> lines() const;
};

SimMetadata make_metadata(const CodeSpec& code, const DecoderSpec& dec, StopRule stop,
                          std::uint64_t seed, int threads, bool noiseless);

// Monte Carlo FER sweep. Frames are processed in fixed-size batches with the
// stop rule evaluated at batch boundaries, so results do not depend on the
// thread count. The SCL/SC mapping is built once per sweep.
std::vector<SimResult> run_fer(const CodeSpec& code, const DecoderSpec& dec,
                               const std::vector<double>& snrs_db, StopRule stop,
                               std::uint64_t seed, int threads = 1, bool noiseless = false);

void write_fer_csv(const std::string& path, const SimMetadata& meta,
                   const std::vector<SimResult>& results);

// Complexity comparison table for results sharing one code and SNR point.
struct LabeledResult {
    std::string scheme;
    SimResult result;
};

void write_count_report(const std::string& path, const SimMetadata& meta, double snr_db,
                        const std::vector<LabeledResult>& rows);

} // namespace nbscl
