#pragma once

#include <optional>
#include <vector>

#include "nbscl/codes.hpp"

namespace nbscl {

// Syndromes S_i = y(beta^i), i = 1 .. 2t, of the pre-extension cyclic code,
// computed in the splitting field. All zero iff the word is in the kernel of
// the syndrome map (for RS codes, iff it is a codeword).
struct Syndromes {
    std::vector<FieldElem> values;

    bool all_zero() const {
        for (FieldElem s : values)
            if (s != 0) return false;
        return true;
    }
};

Syndromes compute_syndromes(const CodeSpec& code, const std::vector<FieldElem>& y_hard);

// Hard-decision Berlekamp-Massey decoding of the cyclic part (length N - 1).
// Corrects up to t = floor((delta - 1) / 2) symbol errors; returns the
// corrected cyclic word, or nothing when the error locator is inconsistent.
// Miscorrection beyond t errors is possible, as in practice.
std::optional<std::vector<FieldElem>> bm_decode(const CodeSpec& code,
                                                const std::vector<FieldElem>& y_hard);

// Soft-decision Chase decoding of the extended code: flips the eta least
// reliable of the first N-1 symbol positions (each to its second-best
// hypothesis), BM-decodes the 2^eta test vectors, extends the survivors by
// the overall parity symbol, and returns the candidate with the largest
// full-length likelihood. y holds N*r received reals in binary-composition
// order.
std::optional<std::vector<FieldElem>> chase_bm_decode(const CodeSpec& code,
                                                      const std::vector<double>& y,
                                                      int eta, double noise_var);

} // namespace nbscl
