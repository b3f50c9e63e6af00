#include "nbscl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace nbscl {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame)
    : state_(mix64(seed + kGolden) ^ mix64(frame * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull)) {}

std::uint64_t FrameRng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double FrameRng::next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double FrameRng::next_gauss() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    cached_ = rad * std::sin(ang);
    has_cached_ = true;
    return rad * std::cos(ang);
}

FieldElem FrameRng::next_symbol(int field_size) {
    int bits = 0;
    while ((1 << bits) < field_size) ++bits;
    if (bits == 0) return 0;
    return static_cast<FieldElem>(next_u64() >> (64 - bits));
}

ChannelConfig ChannelConfig::make(double ebn0_db, double code_rate, std::uint64_t seed,
                                  bool noiseless) {
    ChannelConfig cfg;
    cfg.ebn0_db = ebn0_db;
    cfg.code_rate = code_rate;
    cfg.noise_var = 1.0 / (2.0 * code_rate * std::pow(10.0, ebn0_db / 10.0));
    cfg.seed = seed;
    cfg.noiseless = noiseless;
    return cfg;
}

std::vector<double> transmit(const std::vector<FieldElem>& codeword, int r,
                             const ChannelConfig& cfg, FrameRng& rng) {
    std::vector<double> y(codeword.size() * static_cast<std::size_t>(r));
    const double sigma = std::sqrt(cfg.noise_var);
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        for (int j = 0; j < r; ++j) {
            const double s = Field::bit(codeword[i], j) ? -1.0 : 1.0;
            y[i * static_cast<std::size_t>(r) + static_cast<std::size_t>(j)] =
                cfg.noiseless ? s : s + sigma * rng.next_gauss();
        }
    }
    return y;
}

std::vector<std::vector<double>> channel_llrs(const std::vector<double>& y, int r,
                                              const ChannelConfig& cfg,
                                              const Permutation& perm) {
    const int n_sym = perm.size();
    if (static_cast<int>(y.size()) != n_sym * r)
        throw LengthMismatch("channel_llrs: expected N*r received reals");
    const double scale = 2.0 / cfg.noise_var;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(r),
                                         std::vector<double>(static_cast<std::size_t>(n_sym)));
    for (int i = 0; i < n_sym; ++i) {
        const int src = perm.inverse_at(i); // y^P = y * P^{-1}
        for (int j = 0; j < r; ++j) {
            double v = scale * y[static_cast<std::size_t>(src) * r + static_cast<std::size_t>(j)];
            v = std::clamp(v, -40.0, 40.0);
            out[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    }
    return out;
}

std::string DecoderSpec::label() const {
    switch (kind) {
    case DecoderKind::kSc:
        return "sc";
    case DecoderKind::kScl:
        return "scl(" + std::to_string(list_size) + "," +
               (sorter == Sorter::kRStep ? "r-step" : "full") + ")";
    case DecoderKind::kBm:
        return "bm";
    case DecoderKind::kChaseBm:
        return "chase-bm(" + std::to_string(eta) + ")";
    }
    return "?";
}

std::vector<std::pair<std::string, std::string>> SimMetadata::lines() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("convention_version", std::to_string(convention_version));
    out.emplace_back("family", family);
    out.emplace_back("field_r", std::to_string(field_r));
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "0x%X", field_poly);
        out.emplace_back("field_poly", buf);
    }
    out.emplace_back("N", std::to_string(N));
    out.emplace_back("K", std::to_string(K));
    out.emplace_back("permutation", permutation);
    out.emplace_back("decoder", decoder);
    out.emplace_back("seed", std::to_string(seed));
    out.emplace_back("max_frames", std::to_string(max_frames));
    out.emplace_back("target_errors", std::to_string(target_errors));
    out.emplace_back("threads", std::to_string(threads));
    out.emplace_back("noiseless", noiseless ? "1" : "0");
    return out;
}

SimMetadata make_metadata(const CodeSpec& code, const DecoderSpec& dec, StopRule stop,
                          std::uint64_t seed, int threads, bool noiseless) {
    SimMetadata meta;
    meta.family = code.family;
    meta.field_r = code.field->degree();
    meta.field_poly = code.field->primitive_poly();
    meta.N = code.N;
    meta.K = code.K;
    meta.decoder = dec.label();
    meta.seed = seed;
    meta.max_frames = stop.max_frames;
    meta.target_errors = stop.target_errors;
    meta.threads = threads;
    meta.noiseless = noiseless;
    return meta;
}

namespace {

struct FrameOutcome {
    bool error = false;
    std::uint64_t field_ops = 0;
    std::uint64_t flops = 0;
};

class FrameWorker {
public:
    FrameWorker(const CodeSpec& code, const PolarMapping* map, const DecoderSpec& dec)
        : code_(code), map_(map), dec_(dec), r_(code.field->degree()) {}

    FrameOutcome run(std::uint64_t seed, std::uint64_t frame, const ChannelConfig& cfg) {
        FrameRng rng(seed, frame);
        std::vector<FieldElem> msg(static_cast<std::size_t>(code_.K));
        for (auto& m : msg) m = rng.next_symbol(code_.field->size());
        const std::vector<FieldElem> cw = encode(code_, msg);
        const std::vector<double> y = transmit(cw, r_, cfg, rng);

        OpCounters ctr;
        bool error = false;
        switch (dec_.kind) {
        case DecoderKind::kSc:
        case DecoderKind::kScl: {
            const auto llrs = channel_llrs(y, r_, cfg, map_->perm);
            CounterScope scope(&ctr);
            const DecodeResult res = (dec_.kind == DecoderKind::kSc)
                                         ? sc_decode(*map_, llrs)
                                         : scl_decode(*map_, llrs, dec_.list_size, dec_.sorter);
            error = res.codeword != cw;
            break;
        }
        case DecoderKind::kBm: {
            std::vector<FieldElem> hard(static_cast<std::size_t>(code_.N - 1), 0);
            for (int i = 0; i + 1 < code_.N; ++i)
                for (int j = 0; j < r_; ++j)
                    if (y[static_cast<std::size_t>(i) * r_ + static_cast<std::size_t>(j)] < 0)
                        hard[static_cast<std::size_t>(i)] |= static_cast<FieldElem>(1u << j);
            CounterScope scope(&ctr);
            const auto cand = bm_decode(code_, hard);
            if (!cand) {
                error = true;
            } else {
                FieldElem parity = 0;
                for (FieldElem c : *cand) parity = code_.field->add(parity, c);
                std::vector<FieldElem> full = *cand;
                full.push_back(parity);
                error = full != cw;
            }
            break;
        }
        case DecoderKind::kChaseBm: {
            CounterScope scope(&ctr);
            const auto cand = chase_bm_decode(code_, y, dec_.eta, cfg.noise_var);
            error = !cand || *cand != cw;
            break;
        }
        }
        return {error, ctr.field_ops, ctr.flops};
    }

private:
    const CodeSpec& code_;
    const PolarMapping* map_;
    DecoderSpec dec_;
    int r_;
};

} // namespace

std::vector<SimResult> run_fer(const CodeSpec& code, const DecoderSpec& dec,
                               const std::vector<double>& snrs_db, StopRule stop,
                               std::uint64_t seed, int threads, bool noiseless) {
    if (snrs_db.empty()) throw ConfigError("run_fer: empty SNR list");
    if (stop.max_frames == 0) throw ConfigError("run_fer: max_frames must be positive");
    if (dec.kind == DecoderKind::kScl && dec.list_size < 1)
        throw ConfigError("run_fer: list size must be >= 1");
    if (dec.kind == DecoderKind::kChaseBm && dec.eta < 0)
        throw ConfigError("run_fer: eta must be >= 0");
    if ((dec.kind == DecoderKind::kBm || dec.kind == DecoderKind::kChaseBm) && !code.cyclic)
        throw ConfigError("run_fer: BM-based decoding needs an eRS or NB-eBCH code");
    threads = std::max(1, threads);

    std::unique_ptr<PolarMapping> map;
    if (dec.kind == DecoderKind::kSc || dec.kind == DecoderKind::kScl)
        map = std::make_unique<PolarMapping>(build_mapping(code));

    constexpr std::uint64_t kBatch = 512;
    std::vector<SimResult> results;
    for (double snr : snrs_db) {
        const ChannelConfig cfg = ChannelConfig::make(snr, code.rate(), seed, noiseless);
        std::uint64_t frames = 0, errors = 0, field_ops = 0, flops = 0;
        while (frames < stop.max_frames && errors < stop.target_errors) {
            const std::uint64_t count = std::min(kBatch, stop.max_frames - frames);
            std::vector<FrameOutcome> outcomes(static_cast<std::size_t>(count));
            auto work = [&](int worker_id) {
                FrameWorker worker(code, map.get(), dec);
                for (std::uint64_t k = static_cast<std::uint64_t>(worker_id); k < count;
                     k += static_cast<std::uint64_t>(threads))
                    outcomes[static_cast<std::size_t>(k)] = worker.run(seed, frames + k, cfg);
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
                for (auto& th : pool) th.join();
            }
            for (const FrameOutcome& o : outcomes) {
                errors += o.error ? 1 : 0;
                field_ops += o.field_ops;
                flops += o.flops;
            }
            frames += count;
        }
        SimResult res;
        res.snr_db = snr;
        res.frames = frames;
        res.errors = errors;
        res.fer = frames ? static_cast<double>(errors) / static_cast<double>(frames) : 0.0;
        res.mean_field_ops = frames ? static_cast<double>(field_ops) / static_cast<double>(frames) : 0.0;
        res.mean_flops = frames ? static_cast<double>(flops) / static_cast<double>(frames) : 0.0;
        results.push_back(res);
    }
    return results;
}

void write_fer_csv(const std::string& path, const SimMetadata& meta,
                   const std::vector<SimResult>& results) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << "# nbscl fer sweep\n";
    for (const auto& [k, v] : meta.lines()) out << "# " << k << " = " << v << "\n";
    out << "snr_db,frames,errors,fer,mean_field_ops,mean_flops\n";
    for (const SimResult& r : results) {
        out << format_double("%.6g", r.snr_db) << ',' << r.frames << ',' << r.errors << ','
            << format_double("%.6e", r.fer) << ',' << format_double("%.6e", r.mean_field_ops)
            << ',' << format_double("%.6e", r.mean_flops) << "\n";
    }
}

void write_count_report(const std::string& path, const SimMetadata& meta, double snr_db,
                        const std::vector<LabeledResult>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << "# nbscl count report\n";
    for (const auto& [k, v] : meta.lines()) {
        if (k == "decoder") continue; // per-row below
        out << "# " << k << " = " << v << "\n";
    }
    out << "# snr_db = " << format_double("%.6g", snr_db) << "\n";
    out << "scheme,mean_field_ops,mean_flops\n";
    for (const LabeledResult& row : rows)
        out << row.scheme << ',' << format_double("%.6e", row.result.mean_field_ops) << ','
            << format_double("%.6e", row.result.mean_flops) << "\n";
}

} // namespace nbscl
