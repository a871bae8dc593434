#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace nbldpc {

// GF(2^p) arithmetic context, 2 <= p <= 8. Multiplication and division go
// through log/antilog tables built from a primitive polynomial. Immutable
// after construction; symbols are plain integers in [0, q).
struct FieldSpec {
    unsigned q = 0;    // field order, 2^p
    unsigned p = 0;    // log2(q)
    unsigned poly = 0; // primitive polynomial as a bitmask of degree p
    std::vector<uint16_t> log_table;     // symbol (1..q-1) -> discrete log
    std::vector<uint16_t> antilog_table; // exponent (0..q-2) -> symbol

    static uint16_t add(uint16_t a, uint16_t b) { return a ^ b; }

    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        unsigned e = log_table[a] + log_table[b];
        if (e >= q - 1) e -= q - 1;
        return antilog_table[e];
    }

    uint16_t div(uint16_t a, uint16_t b) const; // throws on b == 0

    uint16_t inv(uint16_t a) const { return div(1, a); }
};

// Pinned default primitive polynomial for each supported p.
unsigned default_primitive_poly(unsigned p);

// Builds the tables, verifying that x generates the full multiplicative
// group (i.e. that poly is primitive). Throws std::invalid_argument on a
// p out of range or a non-primitive polynomial.
FieldSpec build_field(unsigned p, std::optional<unsigned> poly = std::nullopt);

} // namespace nbldpc
