#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "nbldpc/gf.hpp"

namespace nbldpc {

struct PcmEntry {
    uint32_t col;
    uint16_t coeff; // nonzero GF symbol

    bool operator==(const PcmEntry&) const = default;
};

// Sparse parity-check matrix over GF(q). Rows hold (column, coefficient)
// pairs with strictly increasing columns. Immutable once built.
struct ParityCheckMatrix {
    unsigned q = 0;
    uint32_t m = 0;
    uint32_t n = 0;
    std::vector<std::vector<PcmEntry>> rows;
};

struct QcCell {
    int32_t shift;  // -1 marks an absent (all-zero) block
    uint16_t coeff;
};

struct QcBaseMatrix {
    uint32_t rows_b = 0;
    uint32_t cols_b = 0;
    uint32_t circulant = 0;
    unsigned q = 0;
    std::vector<QcCell> cells; // row-major, rows_b * cols_b
};

// Checks all structural invariants; throws std::invalid_argument on violation.
void validate_pcm(const ParityCheckMatrix& h);

// Nonbinary alist: "n m q" / "max_dv max_dc" / column degrees / row degrees /
// per-column "row coeff" pairs (1-based) / per-row "col coeff" pairs (1-based).
// Both adjacency sections are required and cross-checked.
ParityCheckMatrix load_alist_nb(std::istream& in);
void save_alist_nb(const ParityCheckMatrix& h, std::ostream& out);

// QC base text: header "rows_b cols_b circulant_size q", then one
// "shift coeff" pair per cell in row-major order ("-1 0" for absent).
QcBaseMatrix load_qc_base(std::istream& in);
void save_qc_base(const QcBaseMatrix& b, std::ostream& out);

// Random (2, d_c)-regular matrix: column degree 2, row degree d_c, no two
// rows sharing two columns. Positions depend only on (n, d_c, seed) so that a
// field-order sweep keeps the nonzero pattern fixed; coefficients are drawn
// from a (seed, q)-derived stream. Throws if n*2 is not divisible by d_c or
// if placement cannot satisfy the double-edge rule.
ParityCheckMatrix build_regular_2dc(uint32_t n, uint32_t d_c, const FieldSpec& f, uint64_t seed);

// Expands each base cell (shift s, coeff c) into a circulant block with c at
// (r, (r+s) mod circulant) for every r.
ParityCheckMatrix expand_qc(const QcBaseMatrix& base, const FieldSpec& f);

std::pair<std::vector<uint32_t>, std::vector<uint32_t>>
degrees(const ParityCheckMatrix& h); // (column degrees, row degrees)

// (n - m) / n under the full-rank assumption.
double rate(const ParityCheckMatrix& h);

std::vector<uint16_t> syndrome(const ParityCheckMatrix& h, std::span<const uint16_t> x,
                               const FieldSpec& f);

bool is_codeword(const ParityCheckMatrix& h, std::span<const uint16_t> x, const FieldSpec& f);

} // namespace nbldpc
