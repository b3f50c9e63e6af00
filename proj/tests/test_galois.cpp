#include <doctest.h>

#include "nbscl/galois.hpp"
#include "nbscl/simulator.hpp"

using namespace nbscl;

namespace {

// Independent product oracle: carry-less multiply then reduce mod p(X).
FieldElem slow_mul(int r, std::uint32_t poly, FieldElem a, FieldElem b) {
    std::uint32_t acc = 0, aa = a;
    for (int i = 0; i < r; ++i) {
        if ((b >> i) & 1) acc ^= aa << i;
    }
    for (int d = 2 * r - 2; d >= r; --d) {
        if ((acc >> d) & 1) acc ^= poly << (d - r);
    }
    return static_cast<FieldElem>(acc);
}

} // namespace

TEST_CASE("default primitive polynomials build fields for every degree") {
    for (int r = 1; r <= 16; ++r) {
        const FieldPtr f = make_field(r);
        CHECK(f->size() == (1 << r));
    }
}

TEST_CASE("make_field examples") {
    const FieldPtr gf2 = make_field(1, 0x3);
    CHECK(gf2->alpha() == 1);
    CHECK(gf2->order() == 1);

    const FieldPtr gf4 = make_field(2, 0x7);
    // exhaustive order check: alpha^1, alpha^2 != 1, alpha^3 = 1
    FieldElem x = gf4->alpha();
    int order = 1;
    while (x != 1) {
        x = gf4->mul(x, gf4->alpha());
        ++order;
    }
    CHECK(order == 3);

    CHECK_NOTHROW(make_field(5, 0x25));
}

TEST_CASE("non-primitive and mismatched polynomials are rejected") {
    CHECK_THROWS_AS(make_field(2, 0x5), NonPrimitivePolynomial);  // X^2 + 1 = (X+1)^2
    CHECK_THROWS_AS(make_field(4, 0x1F), NonPrimitivePolynomial); // X^4+X^3+X^2+X+1: alpha has order 5
    CHECK_THROWS_AS(make_field(3, 0x7), DegreeMismatch);          // degree 2 polynomial
    CHECK_THROWS_AS(make_field(0, 0x3), DegreeMismatch);
    CHECK_THROWS_AS(make_field(17), DegreeMismatch);
}

TEST_CASE("addition is characteristic-two") {
    const FieldPtr f = make_field(4);
    for (int a = 0; a < f->size(); ++a) {
        CHECK(f->add(static_cast<FieldElem>(a), static_cast<FieldElem>(a)) == 0);
        CHECK(f->add(static_cast<FieldElem>(a), 0) == a);
    }
    const FieldPtr gf4 = make_field(2);
    CHECK(gf4->add(gf4->alpha(), 1) == 3);
}

TEST_CASE("multiplication matches the polynomial oracle exhaustively for r <= 5") {
    for (int r = 1; r <= 5; ++r) {
        const std::uint32_t poly = default_primitive_poly(r);
        const FieldPtr f = make_field(r, poly);
        for (int a = 0; a < f->size(); ++a)
            for (int b = 0; b < f->size(); ++b)
                CHECK(f->mul(static_cast<FieldElem>(a), static_cast<FieldElem>(b)) ==
                      slow_mul(r, poly, static_cast<FieldElem>(a), static_cast<FieldElem>(b)));
    }
}

TEST_CASE("mul/inv/pow basics") {
    const FieldPtr gf4 = make_field(2);
    CHECK(gf4->mul(gf4->alpha(), gf4->alpha()) == 3); // alpha^2 = alpha + 1
    const FieldPtr gf32 = make_field(5);
    CHECK(gf32->pow(gf32->alpha(), 31) == 1);
    CHECK(gf32->pow(gf32->alpha(), 0) == 1);
    CHECK(gf32->pow(0, 5) == 0);
    CHECK(gf32->pow(0, 0) == 1);
    for (int a = 1; a < gf32->size(); ++a) {
        CHECK(gf32->mul(static_cast<FieldElem>(a), gf32->inv(static_cast<FieldElem>(a))) == 1);
        CHECK(gf32->mul(static_cast<FieldElem>(a), 1) == a);
    }
    CHECK_THROWS_AS(gf32->inv(0), DivisionByZero);
}

TEST_CASE("binary composition round trip and basis convention") {
    const FieldPtr gf4 = make_field(2);
    CHECK(gf4->binary_composition(0) == std::vector<std::uint8_t>{0, 0});
    CHECK(gf4->binary_composition(gf4->alpha()) == std::vector<std::uint8_t>{0, 1});

    const FieldPtr gf32 = make_field(5);
    for (int s = 0; s < gf32->size(); ++s)
        CHECK(gf32->from_bits(gf32->binary_composition(static_cast<FieldElem>(s))) == s);
    CHECK_THROWS_AS(gf32->from_bits({1, 0}), LengthMismatch);
}

TEST_CASE("addition acts componentwise on binary compositions") {
    const FieldPtr f = make_field(5);
    for (int a = 0; a < f->size(); ++a) {
        for (int b = 0; b < f->size(); ++b) {
            const auto ca = f->binary_composition(static_cast<FieldElem>(a));
            const auto cb = f->binary_composition(static_cast<FieldElem>(b));
            const auto cs = f->binary_composition(f->add(static_cast<FieldElem>(a), static_cast<FieldElem>(b)));
            for (int j = 0; j < 5; ++j) CHECK(cs[j] == (ca[j] ^ cb[j]));
        }
    }
}

TEST_CASE("field axioms, exhaustive for small degrees") {
    for (int r = 2; r <= 4; ++r) {
        const FieldPtr f = make_field(r);
        const int q = f->size();
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                CHECK(f->mul(static_cast<FieldElem>(a), static_cast<FieldElem>(b)) ==
                      f->mul(static_cast<FieldElem>(b), static_cast<FieldElem>(a)));
                for (int c = 0; c < q; ++c) {
                    const auto A = static_cast<FieldElem>(a);
                    const auto B = static_cast<FieldElem>(b);
                    const auto C = static_cast<FieldElem>(c);
                    CHECK(f->mul(f->mul(A, B), C) == f->mul(A, f->mul(B, C)));
                    CHECK(f->mul(A, f->add(B, C)) == f->add(f->mul(A, B), f->mul(A, C)));
                }
            }
        }
    }
}

TEST_CASE("field axioms, randomized for GF(256)") {
    const FieldPtr f = make_field(8);
    FrameRng rng(99, 0);
    for (int t = 0; t < 10000; ++t) {
        const auto a = rng.next_symbol(f->size());
        const auto b = rng.next_symbol(f->size());
        const auto c = rng.next_symbol(f->size());
        CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        CHECK(f->add(a, b) == f->add(b, a));
        if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
    }
}

TEST_CASE("alpha has full multiplicative order") {
    for (int r = 2; r <= 10; ++r) {
        const FieldPtr f = make_field(r);
        CHECK(f->alpha() == 2);
        FieldElem x = f->alpha();
        int order = 1;
        while (x != 1) {
            x = f->mul(x, f->alpha());
            ++order;
        }
        CHECK(order == f->order());
    }
}

TEST_CASE("field op counting is active only inside a scope") {
    const FieldPtr f = make_field(3);
    OpCounters ctr;
    f->mul(3, 5);
    CHECK(ctr.field_ops == 0);
    {
        CounterScope scope(&ctr);
        f->mul(3, 5);
        f->add(1, 2);
        f->inv(4);
    }
    CHECK(ctr.field_ops == 3);
    f->mul(3, 5);
    CHECK(ctr.field_ops == 3);
}
