#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nbscl/counters.hpp"
#include "nbscl/errors.hpp"

namespace nbscl {

// An element of GF(2^r) in polynomial-basis representation: bit j of the
// value is the coefficient of alpha^j in the binary composition
// sigma = sum_j sigma_j alpha^j.
using FieldElem = std::uint16_t;

// GF(2^r) for 1 <= r <= 16, built from a primitive polynomial p(X) of degree
// exactly r. Arithmetic goes through log/antilog tables. Immutable after
// construction and safe for concurrent reads.
class Field {
public:
    Field(int degree, std::uint32_t primitive_poly);

    int degree() const { return degree_; }
    std::uint32_t primitive_poly() const { return poly_; }
    int size() const { return size_; }          // 2^r
    int order() const { return size_ - 1; }     // multiplicative order of alpha

    // The primitive element used to build the tables (X, i.e. value 2, except
    // in GF(2) where alpha = 1).
    FieldElem alpha() const { return antilog_[1 % order()]; }

    FieldElem add(FieldElem a, FieldElem b) const {
        add_field_ops();
        return static_cast<FieldElem>(a ^ b);
    }

    FieldElem mul(FieldElem a, FieldElem b) const {
        add_field_ops();
        if (a == 0 || b == 0) return 0;
        return antilog_[(log_[a] + log_[b]) % order()];
    }

    FieldElem inv(FieldElem a) const {
        add_field_ops();
        if (a == 0) throw DivisionByZero("inv(0) is undefined");
        return antilog_[(order() - log_[a]) % order()];
    }

    // a^e with the usual conventions pow(a, 0) = 1 and pow(0, e>0) = 0.
    FieldElem pow(FieldElem a, std::uint64_t e) const;

    // Discrete log base alpha; requires a != 0.
    int log(FieldElem a) const {
        if (a == 0) throw DivisionByZero("log(0) is undefined");
        return log_[a];
    }

    // alpha^k for any k >= 0.
    FieldElem antilog(std::uint64_t k) const { return antilog_[k % order()]; }

    // Bit j of sigma, i.e. sigma[j] in the binary composition.
    static int bit(FieldElem sigma, int j) { return (sigma >> j) & 1; }

    std::vector<std::uint8_t> binary_composition(FieldElem sigma) const;
    FieldElem from_bits(const std::vector<std::uint8_t>& bits) const;

private:
    int degree_;
    std::uint32_t poly_;
    int size_;
    std::vector<FieldElem> antilog_; // antilog_[k] = alpha^k, k = 0 .. 2^r - 2
    std::vector<int> log_;           // log_[antilog_[k]] = k; log_[0] = -1
};

using FieldPtr = std::shared_ptr<const Field>;

// Builds GF(2^r) from an explicit primitive polynomial bitmask (bit i is the
// X^i coefficient; the degree must be exactly r). Throws DegreeMismatch or
// NonPrimitivePolynomial.
FieldPtr make_field(int degree, std::uint32_t primitive_poly);

// Builds GF(2^r) with the conventional minimal-weight primitive polynomial.
FieldPtr make_field(int degree);

// The built-in default polynomial for the given degree.
std::uint32_t default_primitive_poly(int degree);

} // namespace nbscl
