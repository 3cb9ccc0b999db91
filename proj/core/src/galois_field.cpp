#include "oat/galois_field.hpp"

#include "oat/errors.hpp"

#include <map>
#include <string>

namespace oat {

namespace {

// Monic irreducible polynomials over GF(p), one per supported prime power.
// Encoded as the coefficient list of x^e + c_{e-1} x^{e-1} + ... + c_0,
// stored low degree first and without the leading 1.
struct PrimePowerField {
    int prime;
    int exponent;
    std::vector<int> poly; // c_0 .. c_{e-1}
};

const std::map<int, PrimePowerField>& prime_power_fields() {
    static const std::map<int, PrimePowerField> table = {
        {4, {2, 2, {1, 1}}},     // x^2 + x + 1
        {8, {2, 3, {1, 1, 0}}},  // x^3 + x + 1
        {9, {3, 2, {1, 0}}},     // x^2 + 1
        {16, {2, 4, {1, 1, 0, 0}}},    // x^4 + x + 1
        {25, {5, 2, {2, 1}}},          // x^2 + x + 2
        {27, {3, 3, {1, 2, 0}}},       // x^3 + 2x + 1
        {32, {2, 5, {1, 0, 1, 0, 0}}}, // x^5 + x^2 + 1
        {49, {7, 2, {3, 1}}},          // x^2 + x + 3
    };
    return table;
}

std::vector<int> to_poly(int value, int prime, int exponent) {
    std::vector<int> coeffs(static_cast<std::size_t>(exponent), 0);
    for (int i = 0; i < exponent; ++i) {
        coeffs[static_cast<std::size_t>(i)] = value % prime;
        value /= prime;
    }
    return coeffs;
}

int from_poly(const std::vector<int>& coeffs, int prime) {
    int value = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        value = value * prime + coeffs[i];
    }
    return value;
}

// Product of two elements modulo the field polynomial.
int poly_mul(int a, int b, const PrimePowerField& field) {
    const int p = field.prime;
    const int e = field.exponent;
    std::vector<int> pa = to_poly(a, p, e);
    std::vector<int> pb = to_poly(b, p, e);
    std::vector<int> prod(static_cast<std::size_t>(2 * e - 1), 0);
    for (int i = 0; i < e; ++i) {
        for (int j = 0; j < e; ++j) {
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)]) % p;
        }
    }
    // Reduce using x^e = -(c_{e-1} x^{e-1} + ... + c_0).
    for (int deg = 2 * e - 2; deg >= e; --deg) {
        const int coeff = prod[static_cast<std::size_t>(deg)];
        if (coeff == 0) {
            continue;
        }
        prod[static_cast<std::size_t>(deg)] = 0;
        for (int i = 0; i < e; ++i) {
            const int idx = deg - e + i;
            int value = prod[static_cast<std::size_t>(idx)] - coeff * field.poly[static_cast<std::size_t>(i)];
            value %= p;
            if (value < 0) {
                value += p;
            }
            prod[static_cast<std::size_t>(idx)] = value;
        }
    }
    prod.resize(static_cast<std::size_t>(e));
    return from_poly(prod, p);
}

} // namespace

bool GaloisField::is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

bool GaloisField::is_prime_power(int n) {
    if (n < 2) {
        return false;
    }
    int p = n;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    while (n % p == 0) {
        n /= p;
    }
    return n == 1;
}

GaloisField::GaloisField(int order) : order_(order) {
    if (!is_prime_power(order)) {
        throw Error(ErrorKind::NotPrimePower,
                    "field order " + std::to_string(order) + " has two distinct prime divisors");
    }
    const std::size_t n = static_cast<std::size_t>(order);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.assign(n, 0);

    if (is_prime(order)) {
        characteristic_ = order;
        for (int a = 0; a < order; ++a) {
            for (int b = 0; b < order; ++b) {
                add_[index(a, b)] = (a + b) % order;
                mul_[index(a, b)] = (a * b) % order;
            }
            neg_[static_cast<std::size_t>(a)] = (order - a) % order;
        }
    } else {
        auto it = prime_power_fields().find(order);
        if (it == prime_power_fields().end()) {
            throw Error(ErrorKind::UnsupportedLevels,
                        "no irreducible polynomial registered for field order " +
                            std::to_string(order));
        }
        const PrimePowerField& field = it->second;
        characteristic_ = field.prime;
        for (int a = 0; a < order; ++a) {
            const auto pa = to_poly(a, field.prime, field.exponent);
            for (int b = 0; b < order; ++b) {
                const auto pb = to_poly(b, field.prime, field.exponent);
                std::vector<int> sum(pa.size());
                for (std::size_t i = 0; i < pa.size(); ++i) {
                    sum[i] = (pa[i] + pb[i]) % field.prime;
                }
                add_[index(a, b)] = from_poly(sum, field.prime);
                mul_[index(a, b)] = poly_mul(a, b, field);
            }
            std::vector<int> negated(pa.size());
            for (std::size_t i = 0; i < pa.size(); ++i) {
                negated[i] = (field.prime - pa[i]) % field.prime;
            }
            neg_[static_cast<std::size_t>(a)] = from_poly(negated, field.prime);
        }
    }

    // Inverses by exhaustive scan; field orders here are small.
    for (int a = 1; a < order; ++a) {
        for (int b = 1; b < order; ++b) {
            if (mul_[index(a, b)] == 1) {
                inv_[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
    }
}

int GaloisField::inverse(int a) const {
    check(a);
    if (a == 0) {
        throw Error(ErrorKind::InvalidCount, "zero has no multiplicative inverse");
    }
    return inv_[static_cast<std::size_t>(a)];
}

int GaloisField::check(int a) const {
    if (a < 0 || a >= order_) {
        throw Error(ErrorKind::InvalidCount,
                    "field element " + std::to_string(a) + " out of range for order " +
                        std::to_string(order_));
    }
    return a;
}

GaloisField build_field(int order) {
    return GaloisField(order);
}

} // namespace oat
