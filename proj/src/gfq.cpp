#include "ffdist/gfq.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdist/errors.hpp"
#include "ffdist/prime_tab.hpp"

namespace ffdist {
namespace {

// Polynomials over the prime field F_p, used only to bootstrap the reduction
// polynomial for q = p^e. Coefficients ascending, int-valued in [0, p).
using PPoly = std::vector<int>;

PPoly ppoly_mod(long p, PPoly a, const PPoly& b) {
    const int db = int(b.size()) - 1;
    while (int(a.size()) - 1 >= db && !a.empty()) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        const int shift = int(a.size()) - 1 - db;
        const long c = a.back();  // b monic
        for (int i = 0; i <= db; ++i) {
            long v = a[shift + i] - c * b[i];
            a[shift + i] = int(((v % p) + p) % p);
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

// Monic irreducibles over F_p of degree up to max_deg, by divisibility sieve
// in degree order.
std::vector<PPoly> prime_field_irreducibles(long p, int max_deg) {
    std::vector<PPoly> irr;
    for (int d = 1; d <= max_deg; ++d) {
        uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= uint64_t(p);
        for (uint64_t code = 0; code < total; ++code) {
            PPoly f(d + 1);
            uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                f[i] = int(c % p);
                c /= p;
            }
            f[d] = 1;
            bool reducible = false;
            for (const PPoly& g : irr) {
                if (2 * (int(g.size()) - 1) > d) break;
                if (ppoly_mod(p, f, g).empty()) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible) irr.push_back(std::move(f));
        }
        std::stable_sort(irr.begin(), irr.end(),
                         [](const PPoly& a, const PPoly& b) { return a.size() < b.size(); });
    }
    return irr;
}

}  // namespace

GFq::GFq(long q) {
    auto pe = is_prime_power(q);
    if (!pe) throw validation_error("q must be a prime power");
    if (q > 256) throw validation_error("GFq: q > 256 not supported");
    q_ = q;
    p_ = pe->first;
    e_ = pe->second;

    if (e_ == 1) {
        modulus_ = {0, 1};
    } else {
        // Smallest monic irreducible of degree e over F_p, by encoding order.
        auto irr = prime_field_irreducibles(p_, e_);
        const PPoly* g = nullptr;
        for (const PPoly& f : irr)
            if (int(f.size()) - 1 == e_) {
                g = &f;
                break;
            }
        if (!g) throw std::logic_error("GFq: no irreducible of requested degree");
        modulus_.assign(g->begin(), g->end());
    }

    neg_.resize(q_);
    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    inv_.assign(q_, 0);

    auto digits = [&](long v) {
        std::vector<int> d(e_);
        for (int i = 0; i < e_; ++i) {
            d[i] = int(v % p_);
            v /= p_;
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        long v = 0;
        for (int i = e_ - 1; i >= 0; --i) v = v * p_ + d[i];
        return uint8_t(v);
    };

    for (long a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (int i = 0; i < e_; ++i) da[i] = int((p_ - da[i]) % p_);
        neg_[a] = encode(da);
    }
    for (long a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (long b = 0; b < q_; ++b) {
            auto db = digits(b);
            std::vector<int> s(e_);
            for (int i = 0; i < e_; ++i) s[i] = int((da[i] + db[i]) % p_);
            add_[idx(uint8_t(a), uint8_t(b))] = encode(s);

            // product of residue polynomials reduced mod g
            std::vector<int> prod(2 * e_ - 1, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j)
                    prod[i + j] = int((prod[i + j] + long(da[i]) * db[j]) % p_);
            if (e_ > 1) {
                for (int i = int(prod.size()) - 1; i >= e_; --i) {
                    int c = prod[i];
                    if (c == 0) continue;
                    prod[i] = 0;
                    for (int t = 0; t < e_; ++t) {
                        long v = prod[i - e_ + t] - long(c) * modulus_[t];
                        prod[i - e_ + t] = int(((v % p_) + p_) % p_);
                    }
                }
            }
            std::vector<int> red(prod.begin(), prod.begin() + e_);
            mul_[idx(uint8_t(a), uint8_t(b))] = encode(red);
        }
    }
    for (long a = 1; a < q_; ++a)
        for (long b = 1; b < q_; ++b)
            if (mul_[idx(uint8_t(a), uint8_t(b))] == 1) inv_[a] = uint8_t(b);
}

uint8_t GFq::inv(uint8_t a) const {
    if (a == 0) throw validation_error("GFq::inv: zero has no inverse");
    return inv_[a];
}

Poly poly_mod(const GFq& F, Poly a, const Poly& b) {
    const int db = int(b.size()) - 1;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (int(a.size()) - 1 >= db && !a.empty()) {
        const uint8_t c = a.back();  // b monic
        if (c != 0) {
            const int shift = int(a.size()) - 1 - db;
            for (int i = 0; i <= db; ++i)
                a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

bool poly_divides(const GFq& F, const Poly& a, const Poly& b) {
    return poly_mod(F, a, b).empty();
}

Poly poly_quotient(const GFq& F, Poly a, const Poly& b) {
    const int db = int(b.size()) - 1;
    const int dq = int(a.size()) - 1 - db;
    Poly quot(dq + 1, 0);
    for (int s = dq; s >= 0; --s) {
        const uint8_t c = a[s + db];
        if (c == 0) continue;
        quot[s] = c;
        for (int i = 0; i <= db; ++i) a[s + i] = F.sub(a[s + i], F.mul(c, b[i]));
    }
    return quot;
}

Poly decode_monic(const GFq& F, int degree, uint64_t index) {
    Poly f(degree + 1);
    for (int i = 0; i < degree; ++i) {
        f[i] = uint8_t(index % uint64_t(F.q()));
        index /= uint64_t(F.q());
    }
    f[degree] = 1;
    return f;
}

}  // namespace ffdist
