#pragma once

#include <cstdint>
#include <vector>

namespace oat {

/// Arithmetic context for the finite field of order h.
///
/// Elements are the integers 0..h-1. For prime h the operations are plain
/// modular arithmetic. For prime powers h = p^e an element encodes a
/// polynomial over GF(p) in base p (value = sum coeff_i * p^i) and the
/// operation tables are built from a fixed irreducible polynomial, so the
/// same h always yields the same tables. The supported irreducible
/// polynomials are listed in galois_field.cpp; changing one would produce a
/// different (equally valid) field labeling, hence they are frozen.
class GaloisField {
public:
    /// Builds the field of order h. Throws Error{NotPrimePower} when h has
    /// two distinct prime divisors and Error{UnsupportedLevels} when h is a
    /// prime power without a registered irreducible polynomial.
    explicit GaloisField(int order);

    int order() const { return order_; }
    int characteristic() const { return characteristic_; }

    int add(int a, int b) const { return add_[index(a, b)]; }
    int mul(int a, int b) const { return mul_[index(a, b)]; }
    int neg(int a) const { return neg_[check(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

    /// Multiplicative inverse; a must be nonzero.
    int inverse(int a) const;

    static bool is_prime(int n);
    static bool is_prime_power(int n);

private:
    std::size_t index(int a, int b) const {
        return static_cast<std::size_t>(check(a)) * static_cast<std::size_t>(order_) +
               static_cast<std::size_t>(check(b));
    }
    int check(int a) const;

    int order_ = 0;
    int characteristic_ = 0;
    std::vector<int> add_;
    std::vector<int> mul_;
    std::vector<int> neg_;
    std::vector<int> inv_; // inv_[0] unused
};

/// Spec-level entry point: field arithmetic for order h.
GaloisField build_field(int order);

} // namespace oat
