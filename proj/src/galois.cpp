#include "nbscl/galois.hpp"

namespace nbscl {

namespace {

int poly_degree(std::uint32_t poly) {
    int d = -1;
    for (int i = 0; i < 32; ++i)
        if ((poly >> i) & 1u) d = i;
    return d;
}

} // namespace

Field::Field(int degree, std::uint32_t primitive_poly)
    : degree_(degree), poly_(primitive_poly) {
    if (degree < 1 || degree > 16)
        throw DegreeMismatch("field degree must be in [1, 16]");
    if (poly_degree(primitive_poly) != degree)
        throw DegreeMismatch("primitive polynomial degree does not match field degree");

    size_ = 1 << degree;
    antilog_.assign(size_ - 1, 0);
    log_.assign(size_, -1);

    // Successive powers of X reduced modulo p(X). The polynomial is
    // primitive iff the powers visit every nonzero element exactly once
    // before returning to 1.
    const std::uint32_t reduction = primitive_poly & static_cast<std::uint32_t>(size_ - 1);
    std::uint32_t cur = 1;
    for (int k = 0; k < size_ - 1; ++k) {
        if (log_[cur] != -1)
            throw NonPrimitivePolynomial("polynomial is not primitive: power cycle shorter than 2^r - 1");
        antilog_[k] = static_cast<FieldElem>(cur);
        log_[cur] = k;
        cur <<= 1;
        if (cur & static_cast<std::uint32_t>(size_)) cur = (cur ^ static_cast<std::uint32_t>(size_)) ^ reduction;
    }
    if (cur != 1)
        throw NonPrimitivePolynomial("polynomial is not primitive: alpha^(2^r - 1) != 1");
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
    add_field_ops();
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t k = (static_cast<std::uint64_t>(log_[a]) * (e % order())) % order();
    return antilog_[k];
}

std::vector<std::uint8_t> Field::binary_composition(FieldElem sigma) const {
    std::vector<std::uint8_t> bits(degree_);
    for (int j = 0; j < degree_; ++j) bits[j] = static_cast<std::uint8_t>(bit(sigma, j));
    return bits;
}

FieldElem Field::from_bits(const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != degree_)
        throw LengthMismatch("from_bits: expected exactly r bits");
    FieldElem v = 0;
    for (int j = 0; j < degree_; ++j)
        if (bits[j]) v = static_cast<FieldElem>(v | (1u << j));
    return v;
}

std::uint32_t default_primitive_poly(int degree) {
    // Conventional minimal-weight primitive polynomials, bit i = X^i coeff.
    static const std::uint32_t table[17] = {
        0,
        0x3,     // X + 1
        0x7,     // X^2 + X + 1
        0xB,     // X^3 + X + 1
        0x13,    // X^4 + X + 1
        0x25,    // X^5 + X^2 + 1
        0x43,    // X^6 + X + 1
        0x89,    // X^7 + X^3 + 1
        0x11D,   // X^8 + X^4 + X^3 + X^2 + 1
        0x211,   // X^9 + X^4 + 1
        0x409,   // X^10 + X^3 + 1
        0x805,   // X^11 + X^2 + 1
        0x1053,  // X^12 + X^6 + X^4 + X + 1
        0x201B,  // X^13 + X^4 + X^3 + X + 1
        0x4443,  // X^14 + X^10 + X^6 + X + 1
        0x8003,  // X^15 + X + 1
        0x1100B, // X^16 + X^12 + X^3 + X + 1
    };
    if (degree < 1 || degree > 16)
        throw DegreeMismatch("no default primitive polynomial for this degree");
    return table[degree];
}

FieldPtr make_field(int degree, std::uint32_t primitive_poly) {
    return std::make_shared<Field>(degree, primitive_poly);
}

FieldPtr make_field(int degree) {
    return std::make_shared<Field>(degree, default_primitive_poly(degree));
}

} // namespace nbscl
