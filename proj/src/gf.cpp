#include "nbldpc/gf.hpp"

#include <stdexcept>
#include <string>

namespace nbldpc {

unsigned default_primitive_poly(unsigned p) {
    switch (p) {
        case 2: return 0b111;        // x^2 + x + 1
        case 3: return 0b1011;       // x^3 + x + 1
        case 4: return 0b10011;      // x^4 + x + 1
        case 5: return 0b100101;     // x^5 + x^2 + 1
        case 6: return 0b1000011;    // x^6 + x + 1
        case 7: return 0b10001001;   // x^7 + x^3 + 1
        case 8: return 0b100011101;  // x^8 + x^4 + x^3 + x^2 + 1
        default:
            throw std::invalid_argument("field exponent p must be in [2, 8], got " +
                                        std::to_string(p));
    }
}

FieldSpec build_field(unsigned p, std::optional<unsigned> poly_opt) {
    if (p < 2 || p > 8)
        throw std::invalid_argument("field exponent p must be in [2, 8], got " +
                                    std::to_string(p));
    const unsigned q = 1u << p;
    const unsigned poly = poly_opt.value_or(default_primitive_poly(p));
    if ((poly & (1u << p)) == 0 || poly >= (1u << (p + 1)))
        throw std::invalid_argument("polynomial bitmask must have degree exactly p");

    FieldSpec f;
    f.q = q;
    f.p = p;
    f.poly = poly;
    f.log_table.assign(q, 0);
    f.antilog_table.assign(q - 1, 0);

    // Walk the powers of x; a repeat (return to 1) before q-1 steps means the
    // generator's order is a proper divisor of q-1, i.e. poly is not primitive.
    unsigned cur = 1;
    for (unsigned e = 0; e < q - 1; ++e) {
        if (cur == 1 && e != 0)
            throw std::invalid_argument("polynomial is not primitive: generator order " +
                                        std::to_string(e) + " < " + std::to_string(q - 1));
        f.antilog_table[e] = static_cast<uint16_t>(cur);
        f.log_table[cur] = static_cast<uint16_t>(e);
        cur <<= 1;
        if (cur & q) cur ^= poly;
    }
    if (cur != 1)
        throw std::invalid_argument("polynomial is not primitive or not irreducible");
    return f;
}

uint16_t FieldSpec::div(uint16_t a, uint16_t b) const {
    if (b == 0) throw std::invalid_argument("GF division by zero");
    if (a == 0) return 0;
    int e = static_cast<int>(log_table[a]) - static_cast<int>(log_table[b]);
    if (e < 0) e += static_cast<int>(q) - 1;
    return antilog_table[e];
}

} // namespace nbldpc
