#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbscl/config.hpp"
#include "nbscl/counters.hpp"
#include "nbscl/scl_decoder.hpp"
#include "nbscl/simulator.hpp"

namespace {

using namespace nbscl;

struct CodeArgs {
    std::string family = "ers";
    int r = 0;
    int n = 0;
    int k = -1;
    std::uint32_t poly = 0;
    std::string file;
};

void add_code_options(CLI::App* cmd, CodeArgs& args) {
    cmd->add_option("--family", args.family, "Code family: ers, nb-ebch or custom");
    cmd->add_option("--r", args.r, "Field extension degree");
    cmd->add_option("--n", args.n, "Code length N (nb-ebch; eRS derives it from r)");
    cmd->add_option("--k", args.k, "Code dimension K");
    cmd->add_option("--poly", args.poly, "Primitive polynomial bitmask (0 = default)");
    cmd->add_option("--file", args.file, "Custom generator matrix file");
}

CodeSpec build_code_from_args(const CodeArgs& args) {
    RunConfig cfg;
    cfg.family = args.family;
    cfg.field_r = args.r;
    cfg.N = args.n;
    cfg.K = args.k;
    cfg.poly = args.poly;
    cfg.code_file = args.file;
    if (cfg.family == "ers" && cfg.N == 0 && cfg.field_r > 0) cfg.N = 1 << cfg.field_r;
    if (cfg.family != "custom" && (cfg.field_r <= 0 || cfg.K <= 0))
        throw ConfigError("analyze/encode: need --r and --k (or --family custom --file)");
    if (cfg.family == "custom" && cfg.code_file.empty())
        throw ConfigError("custom code needs --file");
    return build_code(cfg);
}

int run_simulate(const std::string& config_path, const std::string& out_override,
                 long long seed_override, int threads_override) {
    RunConfig cfg = parse_run_config(config_path);
    if (!out_override.empty()) cfg.fer_csv = out_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (threads_override > 0) cfg.threads = threads_override;

    const CodeSpec code = build_code(cfg);
    const DecoderSpec dec = cfg.decoder_spec();
    const auto results =
        run_fer(code, dec, cfg.snr_db, cfg.stop_rule(), cfg.seed, cfg.threads, cfg.noiseless);
    const SimMetadata meta =
        make_metadata(code, dec, cfg.stop_rule(), cfg.seed, cfg.threads, cfg.noiseless);
    write_fer_csv(cfg.fer_csv, meta, results);

    std::printf("# %s (%d,%d) over GF(%d), decoder %s\n", code.family.c_str(), code.N, code.K,
                code.field->size(), dec.label().c_str());
    for (const auto& res : results)
        std::printf("snr=%g fer=%.3e frames=%llu errors=%llu field_ops=%.3e flops=%.3e\n",
                    res.snr_db, res.fer, static_cast<unsigned long long>(res.frames),
                    static_cast<unsigned long long>(res.errors), res.mean_field_ops,
                    res.mean_flops);
    std::printf("wrote %s\n", cfg.fer_csv.c_str());
    return 0;
}

int run_analyze(const CodeArgs& code_args, double snr_db, const std::string& out_path) {
    int n = 0;
    double rate = 0.5;
    std::vector<int> info_set;
    SimMetadata meta;

    if (code_args.k == 0) {
        // Degenerate empty code: the bound is an empty sum.
        int N = code_args.n > 0 ? code_args.n : (code_args.r > 0 ? 1 << code_args.r : 0);
        if (N <= 0 || (N & (N - 1)) != 0)
            throw ConfigError("analyze: need a power-of-two length for k = 0");
        while ((1 << n) < N) ++n;
        meta.family = code_args.family;
        meta.field_r = code_args.r;
        meta.field_poly = code_args.poly ? code_args.poly : default_primitive_poly(std::max(code_args.r, 1));
        meta.N = N;
        meta.K = 0;
        meta.decoder = "analyze";
    } else {
        const CodeSpec code = build_code_from_args(code_args);
        const PolarMapping map = build_mapping(code);
        n = map.n;
        rate = code.rate();
        info_set = map.info_set;
        meta = make_metadata(code, DecoderSpec{}, StopRule{}, 0, 1, false);
        meta.decoder = "analyze";
    }

    const SubchannelReliability rel = ga_reliabilities(n, snr_db, rate);
    const double bound = sc_union_bound(rel, info_set);
    const bool zero_in_a = std::find(info_set.begin(), info_set.end(), 0) != info_set.end();

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
    out << "# nbscl subchannel analysis\n";
    for (const auto& [k, v] : meta.lines()) out << "# " << k << " = " << v << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", snr_db);
    out << "# design_snr_db = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.6e", bound);
    out << "# union_bound = " << buf << "\n";
    out << "# zero_in_info_set = " << (zero_in_a ? 1 : 0) << "\n";
    out << "index,pe,in_info_set\n";
    std::vector<std::uint8_t> in_a(rel.pe.size(), 0);
    for (int i : info_set) in_a[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = 0; i < rel.pe.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6e", rel.pe[i]);
        out << i << ',' << buf << ',' << int(in_a[i]) << "\n";
    }

    std::printf("union_bound = %.6e\n", bound);
    std::printf("zero_in_info_set = %d\n", zero_in_a ? 1 : 0);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int run_sortbench(int r, int list_size, long long trials, std::uint64_t seed,
                  const std::string& out_path) {
    if (r < 1 || r > 8) throw ConfigError("sortbench: r must be in [1, 8]");
    if (list_size < 1 || list_size > 1024) throw ConfigError("sortbench: L must be in [1, 1024]");
    if (trials < 1) throw ConfigError("sortbench: trials must be >= 1");

    SortScratch scratch;
    std::vector<SplitDecision> full_out, rstep_out;
    std::uint64_t full_compares = 0, rstep_compares = 0;
    long long mismatches = 0;

    for (long long trial = 0; trial < trials; ++trial) {
        FrameRng rng(seed, static_cast<std::uint64_t>(trial));
        int parents = list_size;
        if (trial % 4 == 3) parents = std::max(1, list_size / 2);
        std::vector<double> metrics(static_cast<std::size_t>(parents));
        std::vector<double> llrs(static_cast<std::size_t>(parents) * r);
        for (auto& m : metrics) m = 20.0 * rng.next_unit();
        for (auto& l : llrs) l = 3.0 * rng.next_gauss();
        std::vector<SplitInput> in(static_cast<std::size_t>(parents));
        for (int l = 0; l < parents; ++l)
            in[static_cast<std::size_t>(l)] = {metrics[static_cast<std::size_t>(l)],
                                               &llrs[static_cast<std::size_t>(l) * r]};

        OpCounters cf, cr;
        {
            CounterScope scope(&cf);
            prune_full(in, r, list_size, scratch, full_out);
        }
        {
            CounterScope scope(&cr);
            prune_r_step(in, r, list_size, scratch, rstep_out);
        }
        full_compares += cf.compares;
        rstep_compares += cr.compares;

        std::vector<double> mf, mr;
        for (const auto& d : full_out) mf.push_back(d.metric);
        for (const auto& d : rstep_out) mr.push_back(d.metric);
        std::sort(mf.begin(), mf.end());
        std::sort(mr.begin(), mr.end());
        if (mf != mr) ++mismatches;
    }

    const double full_mean = static_cast<double>(full_compares) / static_cast<double>(trials);
    const double rstep_mean = static_cast<double>(rstep_compares) / static_cast<double>(trials);
    const bool pass = mismatches == 0;

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
        out << "# nbscl sortbench\n";
        out << "# seed = " << seed << "\n";
        out << "r,list,trials,full_compares_mean,rstep_compares_mean,equivalent\n";
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%d,%d,%lld,%.6e,%.6e,%d", r, list_size, trials,
                      full_mean, rstep_mean, pass ? 1 : 0);
        out << buf << "\n";
    }

    std::printf("r=%d L=%d trials=%lld\n", r, list_size, trials);
    std::printf("full sort compares/trial   = %.1f\n", full_mean);
    std::printf("r-step sort compares/trial = %.1f\n", rstep_mean);
    std::printf("oracle equivalence: %s\n", pass ? "PASS" : "FAIL");
    if (!pass) throw std::runtime_error("sortbench: survivor multiset mismatch");
    return 0;
}

// "sc", "bm", "scl:16", "scl-full:64", "chase-bm:8"
DecoderSpec parse_decoder_token(const std::string& tok) {
    DecoderSpec spec;
    const auto colon = tok.find(':');
    const std::string head = tok.substr(0, colon);
    const int arg = colon == std::string::npos ? -1 : std::stoi(tok.substr(colon + 1));
    if (head == "sc") {
        spec.kind = DecoderKind::kSc;
    } else if (head == "bm") {
        spec.kind = DecoderKind::kBm;
    } else if (head == "scl" || head == "scl-full") {
        if (arg < 1) throw ConfigError("decoder '" + tok + "' needs a list size");
        spec.kind = DecoderKind::kScl;
        spec.list_size = arg;
        spec.sorter = head == "scl-full" ? Sorter::kFull : Sorter::kRStep;
    } else if (head == "chase-bm") {
        if (arg < 0) throw ConfigError("decoder '" + tok + "' needs eta");
        spec.kind = DecoderKind::kChaseBm;
        spec.eta = arg;
    } else {
        throw ConfigError("unknown decoder token '" + tok + "'");
    }
    return spec;
}

int run_countbench(const CodeArgs& code_args, const std::string& decoders_csv, double snr_db,
                   long long frames, std::uint64_t seed, int threads,
                   const std::string& out_path) {
    if (frames < 1) throw ConfigError("countbench: frames must be >= 1");
    const CodeSpec code = build_code_from_args(code_args);

    std::vector<DecoderSpec> specs;
    std::size_t pos = 0;
    while (pos <= decoders_csv.size()) {
        const auto comma = decoders_csv.find(',', pos);
        const std::string tok =
            decoders_csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw ConfigError("countbench: empty decoder token");
        specs.push_back(parse_decoder_token(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    std::vector<LabeledResult> rows;
    const StopRule stop{static_cast<std::uint64_t>(frames), std::uint64_t{1} << 40};
    for (const DecoderSpec& dec : specs) {
        const SimResult res = run_fer(code, dec, {snr_db}, stop, seed, threads)[0];
        rows.push_back({dec.label(), res});
        std::printf("%-16s field_ops=%.3e flops=%.3e (fer=%.3e over %llu frames)\n",
                    dec.label().c_str(), res.mean_field_ops, res.mean_flops, res.fer,
                    static_cast<unsigned long long>(res.frames));
    }
    SimMetadata meta = make_metadata(code, specs.front(), stop, seed, threads, false);
    write_count_report(out_path, meta, snr_db, rows);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int run_encode(const CodeArgs& code_args, const std::string& message_csv, std::uint64_t seed) {
    const CodeSpec code = build_code_from_args(code_args);
    const PolarMapping map = build_mapping(code);

    std::vector<FieldElem> msg;
    if (!message_csv.empty()) {
        std::size_t pos = 0;
        while (pos <= message_csv.size()) {
            const auto comma = message_csv.find(',', pos);
            const std::string piece =
                message_csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const long v = std::stol(piece);
            if (v < 0 || v >= code.field->size())
                throw ConfigError("encode: message symbol outside the field");
            msg.push_back(static_cast<FieldElem>(v));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (static_cast<int>(msg.size()) != code.K)
            throw ConfigError("encode: message must have exactly K symbols");
    } else {
        FrameRng rng(seed, 0);
        msg.resize(static_cast<std::size_t>(code.K));
        for (auto& m : msg) m = rng.next_symbol(code.field->size());
    }

    const auto cw = encode(code, msg);
    const auto cw2 = polar_encode(map, msg);
    const auto comps = decompose(map, cw);

    auto print_vec = [](const char* name, const std::vector<FieldElem>& v) {
        std::printf("%s =", name);
        for (FieldElem x : v) std::printf(" %d", int(x));
        std::printf("\n");
    };
    print_vec("message", msg);
    print_vec("codeword", cw);
    std::printf("polar_encode matches generator encode: %s\n", cw == cw2 ? "yes" : "NO");
    for (std::size_t j = 0; j < comps.size(); ++j) {
        std::printf("component %zu =", j);
        for (std::uint8_t b : comps[j]) std::printf(" %d", int(b));
        std::printf("\n");
    }
    std::printf("info_set =");
    for (int i : map.info_set) std::printf(" %d", i);
    std::printf("\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SCL decoding of non-binary linear block codes over GF(2^r)"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo FER sweep from a config file");
    std::string sim_config, sim_out;
    long long sim_seed = -1;
    int sim_threads = 0;
    sim->add_option("--config", sim_config, "Run configuration file")->required();
    sim->add_option("--seed", sim_seed, "Override the configured seed");
    sim->add_option("--threads", sim_threads, "Override the configured thread count");
    sim->add_option("--out", sim_out, "Override the configured FER CSV path");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Subchannel reliabilities and the SC union bound");
    CodeArgs ana_code;
    double ana_snr = 0.0;
    std::string ana_out = "analysis.csv";
    add_code_options(ana, ana_code);
    ana->add_option("--snr", ana_snr, "Design SNR Eb/N0 in dB")->required();
    ana->add_option("--out", ana_out, "Output CSV path");

    // sortbench
    auto* srt = app.add_subcommand("sortbench", "Compare full and r-step path sorting");
    int srt_r = 5, srt_list = 32;
    long long srt_trials = 1000;
    long long srt_seed = 7;
    std::string srt_out;
    srt->add_option("--r", srt_r, "Extension degree (components per symbol)");
    srt->add_option("--list", srt_list, "List size L");
    srt->add_option("--trials", srt_trials, "Number of random instances");
    srt->add_option("--seed", srt_seed, "RNG seed");
    srt->add_option("--out", srt_out, "Optional CSV path");

    // countbench
    auto* cnt = app.add_subcommand("countbench",
                                   "Measure decoding complexity counters for several decoders");
    CodeArgs cnt_code;
    std::string cnt_decoders = "scl:16,scl:32,scl:64";
    double cnt_snr = 6.0;
    long long cnt_frames = 2000;
    long long cnt_seed = 1;
    int cnt_threads = 1;
    std::string cnt_out = "counts.csv";
    add_code_options(cnt, cnt_code);
    cnt->add_option("--decoders", cnt_decoders,
                    "Comma list: sc, bm, scl:L, scl-full:L, chase-bm:eta");
    cnt->add_option("--snr", cnt_snr, "Eb/N0 in dB");
    cnt->add_option("--frames", cnt_frames, "Frames per decoder");
    cnt->add_option("--seed", cnt_seed, "RNG seed");
    cnt->add_option("--threads", cnt_threads, "Worker threads");
    cnt->add_option("--out", cnt_out, "Output CSV path");

    // encode
    auto* enc = app.add_subcommand("encode", "Encode a message and dump its decomposition");
    CodeArgs enc_code;
    std::string enc_msg;
    long long enc_seed = 1;
    add_code_options(enc, enc_code);
    enc->add_option("--message", enc_msg, "Comma-separated K symbols (default: random)");
    enc->add_option("--seed", enc_seed, "Seed for a random message");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return run_simulate(sim_config, sim_out, sim_seed, sim_threads);
        if (ana->parsed()) return run_analyze(ana_code, ana_snr, ana_out);
        if (srt->parsed())
            return run_sortbench(srt_r, srt_list, srt_trials,
                                 static_cast<std::uint64_t>(srt_seed), srt_out);
        if (cnt->parsed())
            return run_countbench(cnt_code, cnt_decoders, cnt_snr, cnt_frames,
                                  static_cast<std::uint64_t>(cnt_seed), cnt_threads, cnt_out);
        if (enc->parsed())
            return run_encode(enc_code, enc_msg, static_cast<std::uint64_t>(enc_seed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const nbscl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 1;
    }
    return 0;
}
