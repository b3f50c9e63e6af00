#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nbscl/codes.hpp"

namespace nbscl {

// The decomposition of a non-binary code into r coupled binary polar codes:
// a permutation P, the pre-transformed matrix M^(r) (reduced row-echelon form
// of G * P^{-1} * G_p^{-1}), the shared information set A (pivot columns),
// and the dynamic frozen constraints read off the non-pivot columns.
// Immutable after build; shared read-only across decoder workers.
struct PolarMapping {
    CodeSpec code;
    Permutation perm;
    int n = 0;                      // log2 N
    NbMatrix m_r;                   // K x N
    NbMatrix r_mat;                 // row elimination matrix R (K x K)
    NbMatrix r_inv;                 // R^{-1}; encoding uses u^A = m R^{-1}
    std::vector<int> info_set;      // ascending, |A| = K
    std::vector<int> frozen_set;    // ascending complement
    std::vector<int> tau;           // tau[i] = |A ∩ [0, i)| for every i
    std::vector<std::uint8_t> is_info;
    // Column i of M^(r) restricted to rows 0 .. tau_i - 1 (all entries below
    // are zero in reduced row-echelon form); empty for information indices.
    std::vector<std::vector<FieldElem>> frozen_cols;
};

// In-place v := v * F^{(x)n} over GF(2^r); the kernel is binary, so this is
// N log2 N field additions. The transform is its own inverse.
void butterfly_transform(const Field& f, std::vector<FieldElem>& v);

PolarMapping build_mapping(const CodeSpec& code, Permutation perm);

// Uses the alpha-power permutation built from a field with 2^n = N elements
// (its default primitive polynomial).
PolarMapping build_mapping(const CodeSpec& code);

// Dynamic frozen symbol value at frozen index i given the estimated
// information prefix u^A_0 .. u^A_{tau_i - 1}. Throws IndexNotFrozen.
FieldElem frozen_value(const PolarMapping& map, const std::vector<FieldElem>& prefix, int i);

// Full polar input vector from the K information symbols (frozen positions
// filled from the dynamic constraints).
std::vector<FieldElem> expand_input(const PolarMapping& map, const std::vector<FieldElem>& info_symbols);

// c = u^A M^(r) G_p P with u^A = m R^{-1}; equals encode(code, m) exactly.
std::vector<FieldElem> polar_encode(const PolarMapping& map, const std::vector<FieldElem>& msg);

// Splits a codeword into its r binary component vectors (component j holds
// bit j of every symbol) after verifying that the dynamic frozen constraints
// hold; throws NotACodeword otherwise.
std::vector<std::vector<std::uint8_t>> decompose(const PolarMapping& map,
                                                 const std::vector<FieldElem>& codeword);

// m = u^A R for a full polar input vector u.
std::vector<FieldElem> recover_message(const PolarMapping& map, const std::vector<FieldElem>& u);

// Per-subchannel error probabilities of a length-2^n polar code on
// BPSK-AWGN under the Gaussian approximation.
struct SubchannelReliability {
    std::vector<double> pe;
    double design_snr_db = 0.0;
};

SubchannelReliability ga_reliabilities(int n, double design_snr_db, double code_rate);

// SC union bound: sum of pe over the information set.
double sc_union_bound(const SubchannelReliability& rel, const std::vector<int>& info_set);

} // namespace nbscl
