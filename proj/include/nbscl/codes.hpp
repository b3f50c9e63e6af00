#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbscl/galois.hpp"
#include "nbscl/matrix.hpp"

namespace nbscl {

// Root structure of the pre-extension cyclic code, everything the
// syndrome-based decoders need. For RS codes the splitting field is the code
// field itself and the embedding is the identity; for NB-BCH codes the roots
// live in a larger field GF(2^m) with an explicit embedding of GF(2^r).
struct CyclicInfo {
    int length = 0;                  // cyclic code length, N - 1
    int designed_distance = 0;       // delta; beta^1 .. beta^{delta-1} are roots of g(X)
    FieldPtr split_field;
    FieldElem beta = 0;              // primitive length-th root of unity in split_field
    std::vector<FieldElem> embed;    // base field value -> split field value
    std::vector<int> unembed;        // split field value -> base value, -1 if outside

    int t() const { return (designed_distance - 1) / 2; }
};

// A non-binary linear block code with an N = 2^n codeword length (extended
// when the underlying family is cyclic of length 2^n - 1).
struct CodeSpec {
    FieldPtr field;
    int N = 0;
    int K = 0;
    NbMatrix gen;                    // K x N, full row rank
    std::string family;              // "eRS" | "NB-eBCH" | "custom"
    std::optional<CyclicInfo> cyclic;

    double rate() const { return static_cast<double>(K) / N; }
};

// Generator matrix of the narrow-sense (2^r - 1, K) Reed-Solomon code:
// row t holds the coefficients of g(X) * X^t with
// g(X) = prod_{i=1}^{2^r-1-K} (X - alpha^i).
NbMatrix rs_generator(const FieldPtr& field, int K);

// Generator matrix of the narrow-sense non-binary BCH code of the given
// length over GF(2^r). The designed distance is grown from 2 until the
// dimension drops to target_K; throws DimensionUnreachable when no designed
// distance hits the target exactly.
NbMatrix nb_bch_generator(const FieldPtr& field, int length, int target_K);

// Appends the overall parity column: the new symbol of every codeword equals
// the sum of the existing ones.
NbMatrix extend(const NbMatrix& gen);

// c = m * G.
std::vector<FieldElem> encode(const CodeSpec& code, const std::vector<FieldElem>& msg);

// Extended Reed-Solomon code of length 2^r and dimension K.
CodeSpec make_ers_code(const FieldPtr& field, int K);

// Extended non-binary BCH code of length N = 2^n and dimension K over the
// given field (the cyclic length is N - 1).
CodeSpec make_nb_ebch_code(const FieldPtr& field, int N, int K);

// Arbitrary generator matrix; validates that N is a power of two and the
// rank is full.
CodeSpec make_custom_code(FieldPtr field, NbMatrix gen);

// Plain-text matrix format: first line "r N K primitive_poly", then K lines
// of N integers (binary-composition packings).
CodeSpec load_code_file(const std::string& path);
void save_code_file(const std::string& path, const CodeSpec& code);

} // namespace nbscl
