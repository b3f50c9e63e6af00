#include "nbscl/matrix.hpp"

#include <algorithm>
#include <utility>

namespace nbscl {

BinMatrix::BinMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows) * words_, 0) {
    if (rows < 0 || cols < 0) throw InvalidDimension("BinMatrix: negative dimension");
}

BinMatrix BinMatrix::identity(int n) {
    BinMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void BinMatrix::xor_rows(int dst, int src) {
    std::uint64_t* d = &data_[static_cast<std::size_t>(dst) * words_];
    const std::uint64_t* s = &data_[static_cast<std::size_t>(src) * words_];
    for (int w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BinMatrix::xor_rows_from(const BinMatrix& src, int dst_row, int src_row) {
    if (words_ != src.words_) throw LengthMismatch("xor_rows_from: column counts differ");
    std::uint64_t* d = &data_[static_cast<std::size_t>(dst_row) * words_];
    const std::uint64_t* s = &src.data_[static_cast<std::size_t>(src_row) * src.words_];
    for (int w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BinMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a) * words_,
                     data_.begin() + static_cast<std::ptrdiff_t>(a + 1) * words_,
                     data_.begin() + static_cast<std::ptrdiff_t>(b) * words_);
}

BinMatrix BinMatrix::multiply(const BinMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw LengthMismatch("BinMatrix::multiply: inner dimensions differ");
    BinMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            if (get(i, k)) out.xor_rows_from(rhs, i, k);
        }
    }
    return out;
}

bool BinMatrix::operator==(const BinMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

BinMatrix kronecker_power(int n) {
    if (n < 0) throw InvalidDimension("kronecker_power: n must be >= 0");
    const int size = 1 << n;
    BinMatrix m(size, size);
    // F^{(x)n}[a][b] = 1 iff b's support is a subset of a's support.
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
            if ((a & b) == b) m.set(a, b, 1);
    return m;
}

BinMatrix gf2_inverse(const BinMatrix& m) {
    if (m.rows() != m.cols()) throw Singular("gf2_inverse: matrix is not square");
    const int n = m.rows();
    BinMatrix work = m;
    BinMatrix inv = BinMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (work.get(row, col)) { pivot = row; break; }
        if (pivot < 0) throw Singular("gf2_inverse: matrix is singular");
        work.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        for (int row = 0; row < n; ++row) {
            if (row != col && work.get(row, col)) {
                work.xor_rows(row, col);
                inv.xor_rows(row, col);
            }
        }
    }
    return inv;
}

NbMatrix::NbMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw InvalidDimension("NbMatrix: negative dimension");
}

NbMatrix NbMatrix::identity(FieldPtr field, int n) {
    NbMatrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

NbMatrix NbMatrix::multiply(const NbMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw LengthMismatch("NbMatrix::multiply: inner dimensions differ");
    NbMatrix out(field_, rows_, rhs.cols_);
    const Field& f = *field_;
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const FieldElem a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                const FieldElem b = rhs.at(k, j);
                if (b == 0) continue;
                out.at(i, j) = f.add(out.at(i, j), f.mul(a, b));
            }
        }
    }
    return out;
}

std::vector<FieldElem> NbMatrix::row(int i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
            data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
}

std::vector<FieldElem> NbMatrix::left_multiply(const std::vector<FieldElem>& v) const {
    if (static_cast<int>(v.size()) != rows_)
        throw LengthMismatch("NbMatrix::left_multiply: vector length != rows");
    std::vector<FieldElem> out(cols_, 0);
    const Field& f = *field_;
    for (int i = 0; i < rows_; ++i) {
        const FieldElem a = v[i];
        if (a == 0) continue;
        for (int j = 0; j < cols_; ++j) {
            const FieldElem b = at(i, j);
            if (b == 0) continue;
            out[j] = f.add(out[j], f.mul(a, b));
        }
    }
    return out;
}

bool NbMatrix::operator==(const NbMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

RrefResult nb_rref(const NbMatrix& m) {
    const Field& f = m.field();
    const int rows = m.rows();
    const int cols = m.cols();
    NbMatrix work = m;
    NbMatrix elim = NbMatrix::identity(m.field_ptr(), rows);
    std::vector<int> pivots;

    auto scale_row = [&](NbMatrix& mat, int row, FieldElem factor) {
        for (int j = 0; j < mat.cols(); ++j)
            mat.at(row, j) = f.mul(mat.at(row, j), factor);
    };
    auto add_scaled_row = [&](NbMatrix& mat, int dst, int src, FieldElem factor) {
        for (int j = 0; j < mat.cols(); ++j)
            mat.at(dst, j) = f.add(mat.at(dst, j), f.mul(factor, mat.at(src, j)));
    };
    auto swap_rows = [&](NbMatrix& mat, int a, int b) {
        for (int j = 0; j < mat.cols(); ++j) std::swap(mat.at(a, j), mat.at(b, j));
    };

    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int row = rank; row < rows; ++row)
            if (work.at(row, col) != 0) { pivot = row; break; }
        if (pivot < 0) continue;
        if (pivot != rank) {
            swap_rows(work, rank, pivot);
            swap_rows(elim, rank, pivot);
        }
        const FieldElem scale = f.inv(work.at(rank, col));
        if (scale != 1) {
            scale_row(work, rank, scale);
            scale_row(elim, rank, scale);
        }
        for (int row = 0; row < rows; ++row) {
            if (row == rank) continue;
            const FieldElem factor = work.at(row, col);
            if (factor == 0) continue;
            add_scaled_row(work, row, rank, factor);
            add_scaled_row(elim, row, rank, factor);
        }
        pivots.push_back(col);
        ++rank;
    }
    if (rank < rows) throw RankDeficient("nb_rref: matrix does not have full row rank");
    return RrefResult{std::move(elim), std::move(work), std::move(pivots)};
}

Permutation::Permutation(std::vector<int> perm) : forward_(std::move(perm)) {
    const int n = static_cast<int>(forward_.size());
    inverse_.assign(n, -1);
    for (int b = 0; b < n; ++b) {
        const int a = forward_[b];
        if (a < 0 || a >= n || inverse_[a] != -1)
            throw NotBijective("Permutation: index array is not a bijection");
        inverse_[a] = b;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    return Permutation(std::move(perm));
}

Permutation build_permutation(int n, const Field& field_n) {
    const int size = 1 << n;
    if (field_n.size() != size)
        throw LengthMismatch("build_permutation: field size must equal 2^n");
    std::vector<int> perm(size);
    for (int b = 0; b < size - 1; ++b) perm[b] = field_n.antilog(static_cast<std::uint64_t>(b));
    perm[size - 1] = 0;
    return Permutation(std::move(perm)); // throws NotBijective if alpha is not primitive
}

} // namespace nbscl
