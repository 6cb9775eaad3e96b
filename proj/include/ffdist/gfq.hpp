#pragma once

#include <cstdint>
#include <vector>

namespace ffdist {

// Table-driven arithmetic for a small finite field F_q, q = p^e <= 256.
// Elements are encoded as integers 0..q-1: the base-p digits of the code are
// the coefficients of a residue polynomial over F_p, constant term first.
// For e >= 2 the field is F_p[x]/(g) with g the monic irreducible of degree e
// whose non-leading coefficient vector has the smallest base-p encoding, so
// the representation is deterministic and reproducible across runs.
class GFq {
public:
    explicit GFq(long q);  // validation_error if q is not a prime power

    long q() const { return q_; }
    long p() const { return p_; }
    int e() const { return e_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[idx(a, b)]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[idx(a, neg_[b])]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[idx(a, b)]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const;  // a != 0

    // Coefficients of the reduction polynomial g (ascending, length e+1,
    // leading 1). For e == 1 this is {0, 1}, i.e. g(x) = x.
    const std::vector<uint8_t>& modulus() const { return modulus_; }

private:
    size_t idx(uint8_t a, uint8_t b) const { return size_t(a) * q_ + b; }

    long q_, p_;
    int e_;
    std::vector<uint8_t> modulus_;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

// Dense monic polynomial helpers over F_q. Coefficients ascending; a monic
// polynomial of degree d is a vector of length d+1 with back() == 1.
using Poly = std::vector<uint8_t>;

// Remainder of a by b (b monic, deg b >= 0). a is copied.
Poly poly_mod(const GFq& F, Poly a, const Poly& b);

// True iff b divides a exactly.
bool poly_divides(const GFq& F, const Poly& a, const Poly& b);

// Quotient of a by b; requires exact divisibility not checked here.
Poly poly_quotient(const GFq& F, Poly a, const Poly& b);

// Decodes index in [0, q^d) to the monic degree-d polynomial whose lower
// coefficients are the base-q digits of the index.
Poly decode_monic(const GFq& F, int degree, uint64_t index);

}  // namespace ffdist
