#include "oat/errors.hpp"
#include "oat/galois_field.hpp"

#include <doctest.h>

#include <vector>

using oat::Error;
using oat::ErrorKind;
using oat::GaloisField;

namespace {

// Exhaustive axiom check: closure, commutativity, identities, inverses,
// associativity, distributivity over every pair/triple.
void check_field_axioms(const GaloisField& field) {
    const int h = field.order();
    for (int a = 0; a < h; ++a) {
        CHECK(field.add(a, 0) == a);
        CHECK(field.mul(a, 1) == a);
        CHECK(field.mul(a, 0) == 0);
        CHECK(field.add(a, field.neg(a)) == 0);
        if (a != 0) {
            CHECK(field.mul(a, field.inverse(a)) == 1);
        }
        for (int b = 0; b < h; ++b) {
            const int sum = field.add(a, b);
            const int product = field.mul(a, b);
            CHECK(sum >= 0);
            CHECK(sum < h);
            CHECK(product >= 0);
            CHECK(product < h);
            CHECK(sum == field.add(b, a));
            CHECK(product == field.mul(b, a));
        }
    }
    for (int a = 0; a < h; ++a) {
        for (int b = 0; b < h; ++b) {
            for (int c = 0; c < h; ++c) {
                CHECK(field.add(field.add(a, b), c) == field.add(a, field.add(b, c)));
                CHECK(field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c)));
                CHECK(field.mul(a, field.add(b, c)) ==
                      field.add(field.mul(a, b), field.mul(a, c)));
            }
        }
    }
}

} // namespace

TEST_CASE("prime power detection") {
    for (int n : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49}) {
        CHECK(GaloisField::is_prime_power(n));
    }
    for (int n : {0, 1, 6, 10, 12, 15, 24, 36}) {
        CHECK_FALSE(GaloisField::is_prime_power(n));
    }
}

TEST_CASE("field axioms hold exhaustively for every supported order") {
    for (int h : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49}) {
        CAPTURE(h);
        check_field_axioms(oat::build_field(h));
    }
}

TEST_CASE("mod-3 arithmetic") {
    const GaloisField field(3);
    CHECK(field.add(2, 2) == 1);
    CHECK(field.mul(2, 2) == 1);
}

TEST_CASE("GF(4) built from x^2 + x + 1") {
    const GaloisField field(4);
    // 2 encodes x, 3 encodes x + 1: x * x = x + 1.
    CHECK(field.mul(2, 2) == 3);
    CHECK(field.add(2, 3) == 1);   // x + (x+1) = 1 in characteristic 2
    CHECK(field.characteristic() == 2);
}

TEST_CASE("orders with two distinct prime divisors are rejected") {
    CHECK_THROWS_AS(oat::build_field(6), Error);
    try {
        oat::build_field(6);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrimePower);
    }
}

TEST_CASE("zero has no inverse") {
    const GaloisField field(5);
    CHECK_THROWS_AS(field.inverse(0), Error);
}
