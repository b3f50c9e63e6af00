#pragma once

#include <cstdint>
#include <vector>

#include "nbscl/galois.hpp"

namespace nbscl {

// Dense matrix over GF(2) with rows packed into 64-bit words.
class BinMatrix {
public:
    BinMatrix(int rows, int cols);
    static BinMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int i, int j) const {
        return static_cast<int>((data_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u);
    }
    void set(int i, int j, int bit) {
        std::uint64_t& w = data_[static_cast<std::size_t>(i) * words_ + (j >> 6)];
        const std::uint64_t mask = std::uint64_t{1} << (j & 63);
        w = bit ? (w | mask) : (w & ~mask);
    }

    void xor_rows(int dst, int src); // row dst += row src
    void xor_rows_from(const BinMatrix& src, int dst_row, int src_row);
    void swap_rows(int a, int b);

    BinMatrix multiply(const BinMatrix& rhs) const;

    bool operator==(const BinMatrix& rhs) const;

private:
    int rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

// F^{(x)n} for the Arikan kernel F = [[1,0],[1,1]]; 2^n x 2^n, lower
// triangular with unit diagonal, and its own inverse over GF(2).
BinMatrix kronecker_power(int n);

// Inverse of a square full-rank matrix over GF(2); throws Singular.
BinMatrix gf2_inverse(const BinMatrix& m);

// Dense matrix over GF(2^r). All entries live in the shared field.
class NbMatrix {
public:
    NbMatrix(FieldPtr field, int rows, int cols);
    static NbMatrix identity(FieldPtr field, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    FieldElem at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    FieldElem& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    NbMatrix multiply(const NbMatrix& rhs) const;
    std::vector<FieldElem> row(int i) const;

    // v * this for a row vector v of length rows().
    std::vector<FieldElem> left_multiply(const std::vector<FieldElem>& v) const;

    bool operator==(const NbMatrix& rhs) const;

private:
    FieldPtr field_;
    int rows_, cols_;
    std::vector<FieldElem> data_;
};

struct RrefResult {
    NbMatrix elim;              // R, K x K invertible row elimination matrix
    NbMatrix rref;              // R * M, reduced row-echelon form
    std::vector<int> pivots;    // pivot column indices, ascending
};

// Gaussian elimination over GF(2^r) to reduced row-echelon form. The pivot
// for each column is the first remaining row with a nonzero entry, which
// makes the result deterministic. Throws RankDeficient when the row rank is
// below rows().
RrefResult nb_rref(const NbMatrix& m);

// N x N permutation stored as an index array: perm[b] = a iff P(a,b) = 1.
class Permutation {
public:
    explicit Permutation(std::vector<int> perm); // throws NotBijective
    static Permutation identity(int n);

    int size() const { return static_cast<int>(forward_.size()); }
    int operator[](int b) const { return forward_[b]; }
    int inverse_at(int b) const { return inverse_[b]; }

private:
    std::vector<int> forward_;
    std::vector<int> inverse_;
};

// The alpha-power permutation: column b (0 <= b <= N-2) carries its 1 in
// row a = value of alpha^b in a field with exactly N = 2^n elements, and
// column N-1 in row 0. Throws NotBijective if alpha is not primitive and
// LengthMismatch if the field size is not 2^n.
Permutation build_permutation(int n, const Field& field_n);

// w = v * P, i.e. w[b] = v[perm[b]].
template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& v, const Permutation& p) {
    if (static_cast<int>(v.size()) != p.size())
        throw LengthMismatch("apply_permutation: vector length != permutation size");
    std::vector<T> out(v.size());
    for (int b = 0; b < p.size(); ++b) out[b] = v[p[b]];
    return out;
}

// w = v * P^{-1}, i.e. w[b] = v[perm^{-1}[b]].
template <typename T>
std::vector<T> apply_inverse_permutation(const std::vector<T>& v, const Permutation& p) {
    if (static_cast<int>(v.size()) != p.size())
        throw LengthMismatch("apply_inverse_permutation: vector length != permutation size");
    std::vector<T> out(v.size());
    for (int b = 0; b < p.size(); ++b) out[b] = v[p.inverse_at(b)];
    return out;
}

} // namespace nbscl
