#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nbscl/counters.hpp"
#include "nbscl/polar_map.hpp"

namespace nbscl {

// Exact check-node combination f(x, y) = ln((e^{x+y} + 1) / (e^x + e^y)),
// evaluated in the numerically stable min-plus-correction form. Counts as a
// single transcendental evaluation.
double llr_f(double x, double y);

// g(x, y, b) = (-1)^b x + y; one addition.
double llr_g(double x, double y, int bit);

enum class Sorter { kFull, kRStep };

struct DecodeResult {
    std::vector<FieldElem> codeword; // length N over the code field
    std::vector<FieldElem> u;        // polar input vector
    double metric = 0.0;             // accumulated penalty of the winning path
};

// Child metrics for all 2^r symbol hypotheses at one information symbol,
// indexed by symbol value: parent metric plus |L_j| over every component
// where the symbol bit disagrees with the hard decision.
std::vector<double> split_metrics(double path_metric, const std::vector<double>& stage0_llrs);

// One parent path presented to the path sorters.
struct SplitInput {
    double metric = 0.0;
    const double* stage0 = nullptr; // r stage-0 LLRs in component order
};

struct SplitDecision {
    int parent = 0;
    FieldElem symbol = 0;
    double metric = 0.0;
};

// Working buffers of the path sorters: the ordered metric vector and its
// parent indices, the step candidate vector, and the per-path ordered LLR
// magnitudes. Reused across calls to keep the decoders allocation-free.
struct SortScratch {
    struct Entry {
        double metric;
        int parent;
        std::uint32_t flips; // component-space flip mask relative to the hard symbol
    };
    std::vector<Entry> pool;      // x~ together with p
    std::vector<Entry> cand;      // x+ together with p+
    std::vector<Entry> merged;
    std::vector<Entry> tmp;
    std::vector<double> ordered_mag;     // L~, r entries per parent, ascending
    std::vector<std::uint32_t> flip_bit; // matching component bit per entry
    std::vector<FieldElem> hard;         // hard-decision symbol per parent
};

// Selects the list_size smallest of the 2^r * |parents| children by sorting
// them all; ties break by (metric, parent index, symbol value).
void prune_full(const std::vector<SplitInput>& parents, int r, int list_size,
                SortScratch& scratch, std::vector<SplitDecision>& out);

// The r-step sorting procedure: parents sorted once, then r rounds of
// add-smallest-remaining-magnitude, sort and keep-L merge. Produces the same
// survivor metric multiset as prune_full (paths may differ among exact ties).
void prune_r_step(const std::vector<SplitInput>& parents, int r, int list_size,
                  SortScratch& scratch, std::vector<SplitDecision>& out);

// Plain successive cancellation: hard decisions on information symbols,
// dynamic frozen values elsewhere. channel_llrs is one length-N vector per
// binary component, already de-permuted.
DecodeResult sc_decode(const PolarMapping& map,
                       const std::vector<std::vector<double>>& channel_llrs);

// Successive cancellation list decoding with symbol-level path splitting.
DecodeResult scl_decode(const PolarMapping& map,
                        const std::vector<std::vector<double>>& channel_llrs,
                        int list_size, Sorter sorter = Sorter::kRStep);

// c = u G_p P.
std::vector<FieldElem> reconstruct(const PolarMapping& map, const std::vector<FieldElem>& u);

} // namespace nbscl
