#include "nbldpc/code.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "nbldpc/rng.hpp"

namespace nbldpc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

long long read_int(std::istream& in, const char* what) {
    long long v;
    if (!(in >> v)) fail(std::string("alist: failed to read ") + what);
    return v;
}

} // namespace

void validate_pcm(const ParityCheckMatrix& h) {
    if (h.q < 4 || (h.q & (h.q - 1)) != 0) fail("pcm: q must be a power of two >= 4");
    if (h.m == 0 || h.n == 0) fail("pcm: empty dimensions");
    if (h.rows.size() != h.m) fail("pcm: row count mismatch");
    for (const auto& row : h.rows) {
        uint32_t prev = 0;
        bool first = true;
        for (const auto& e : row) {
            if (e.col >= h.n) fail("pcm: column index out of range");
            if (e.coeff == 0 || e.coeff >= h.q) fail("pcm: coefficient must be in [1, q)");
            if (!first && e.col <= prev) fail("pcm: columns must be strictly increasing in a row");
            prev = e.col;
            first = false;
        }
    }
}

ParityCheckMatrix load_alist_nb(std::istream& in) {
    ParityCheckMatrix h;
    const long long n = read_int(in, "n");
    const long long m = read_int(in, "m");
    const long long q = read_int(in, "q");
    if (n <= 0 || m <= 0) fail("alist: n and m must be positive");
    if (q < 4 || q > 256 || (q & (q - 1)) != 0) fail("alist: q must be a power of two in [4, 256]");
    h.n = static_cast<uint32_t>(n);
    h.m = static_cast<uint32_t>(m);
    h.q = static_cast<unsigned>(q);

    const long long max_dv = read_int(in, "max_dv");
    const long long max_dc = read_int(in, "max_dc");
    if (max_dv <= 0 || max_dc <= 0) fail("alist: max degrees must be positive");

    std::vector<long long> col_deg(h.n), row_deg(h.m);
    for (auto& d : col_deg) {
        d = read_int(in, "column degree");
        if (d < 0 || d > max_dv) fail("alist: column degree out of range");
    }
    for (auto& d : row_deg) {
        d = read_int(in, "row degree");
        if (d < 0 || d > max_dc) fail("alist: row degree out of range");
    }

    // Column section defines the edges; row section must agree exactly.
    std::vector<std::vector<PcmEntry>> rows(h.m);
    for (uint32_t j = 0; j < h.n; ++j) {
        for (long long k = 0; k < col_deg[j]; ++k) {
            const long long r = read_int(in, "row index");
            const long long c = read_int(in, "coefficient");
            if (r < 1 || r > m) fail("alist: row index out of range in column section");
            if (c <= 0 || c >= q) fail("alist: coefficient must be in [1, q)");
            rows[static_cast<size_t>(r - 1)].push_back({j, static_cast<uint16_t>(c)});
        }
    }
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const PcmEntry& a, const PcmEntry& b) { return a.col < b.col; });

    for (uint32_t i = 0; i < h.m; ++i) {
        if (static_cast<long long>(rows[i].size()) != row_deg[i])
            fail("alist: row degree header disagrees with column section");
        std::vector<PcmEntry> listed;
        for (long long k = 0; k < row_deg[i]; ++k) {
            const long long c = read_int(in, "column index");
            const long long v = read_int(in, "coefficient");
            if (c < 1 || c > n) fail("alist: column index out of range in row section");
            if (v <= 0 || v >= q) fail("alist: coefficient must be in [1, q)");
            listed.push_back({static_cast<uint32_t>(c - 1), static_cast<uint16_t>(v)});
        }
        std::sort(listed.begin(), listed.end(),
                  [](const PcmEntry& a, const PcmEntry& b) { return a.col < b.col; });
        for (long long k = 0; k < row_deg[i]; ++k) {
            if (listed[k].col != rows[i][k].col || listed[k].coeff != rows[i][k].coeff)
                fail("alist: row section disagrees with column section");
            if (k > 0 && listed[k].col == listed[k - 1].col)
                fail("alist: duplicate position in a row");
        }
    }

    h.rows = std::move(rows);
    validate_pcm(h);
    return h;
}

void save_alist_nb(const ParityCheckMatrix& h, std::ostream& out) {
    auto [col_deg, row_deg] = degrees(h);
    const uint32_t max_dv = *std::max_element(col_deg.begin(), col_deg.end());
    const uint32_t max_dc = *std::max_element(row_deg.begin(), row_deg.end());

    out << h.n << ' ' << h.m << ' ' << h.q << '\n';
    out << max_dv << ' ' << max_dc << '\n';
    for (uint32_t j = 0; j < h.n; ++j) out << col_deg[j] << (j + 1 == h.n ? '\n' : ' ');
    for (uint32_t i = 0; i < h.m; ++i) out << row_deg[i] << (i + 1 == h.m ? '\n' : ' ');

    std::vector<std::vector<std::pair<uint32_t, uint16_t>>> cols(h.n);
    for (uint32_t i = 0; i < h.m; ++i)
        for (const auto& e : h.rows[i]) cols[e.col].push_back({i, e.coeff});
    for (uint32_t j = 0; j < h.n; ++j) {
        for (const auto& [r, c] : cols[j]) out << r + 1 << ' ' << c << ' ';
        out << '\n';
    }
    for (uint32_t i = 0; i < h.m; ++i) {
        for (const auto& e : h.rows[i]) out << e.col + 1 << ' ' << e.coeff << ' ';
        out << '\n';
    }
}

QcBaseMatrix load_qc_base(std::istream& in) {
    QcBaseMatrix b;
    const long long rb = read_int(in, "rows_b");
    const long long cb = read_int(in, "cols_b");
    const long long z = read_int(in, "circulant_size");
    const long long q = read_int(in, "q");
    if (rb <= 0 || cb <= 0 || z <= 0) fail("qc: dimensions must be positive");
    if (q < 4 || q > 256 || (q & (q - 1)) != 0) fail("qc: q must be a power of two in [4, 256]");
    b.rows_b = static_cast<uint32_t>(rb);
    b.cols_b = static_cast<uint32_t>(cb);
    b.circulant = static_cast<uint32_t>(z);
    b.q = static_cast<unsigned>(q);
    b.cells.resize(static_cast<size_t>(rb) * static_cast<size_t>(cb));
    for (auto& cell : b.cells) {
        const long long s = read_int(in, "shift");
        const long long c = read_int(in, "coefficient");
        if (s < 0) {
            cell = {-1, 0};
            continue;
        }
        if (s >= z) fail("qc: shift must be in [0, circulant_size)");
        if (c <= 0 || c >= q) fail("qc: coefficient must be in [1, q)");
        cell = {static_cast<int32_t>(s), static_cast<uint16_t>(c)};
    }
    return b;
}

void save_qc_base(const QcBaseMatrix& b, std::ostream& out) {
    out << b.rows_b << ' ' << b.cols_b << ' ' << b.circulant << ' ' << b.q << '\n';
    for (uint32_t i = 0; i < b.rows_b; ++i) {
        for (uint32_t j = 0; j < b.cols_b; ++j) {
            const auto& c = b.cells[static_cast<size_t>(i) * b.cols_b + j];
            if (c.shift < 0)
                out << "-1 0";
            else
                out << c.shift << ' ' << c.coeff;
            out << (j + 1 == b.cols_b ? '\n' : ' ');
        }
    }
}

ParityCheckMatrix build_regular_2dc(uint32_t n, uint32_t d_c, const FieldSpec& f, uint64_t seed) {
    if (d_c == 0 || (2ull * n) % d_c != 0) fail("build_regular_2dc: 2n must be divisible by d_c");
    const uint32_t m = static_cast<uint32_t>(2ull * n / d_c);
    if (m > n) fail("build_regular_2dc: resulting m exceeds n");
    if (m < 2) fail("build_regular_2dc: need at least two rows");

    SplitMix64 pos_rng(seed); // position stream, independent of q
    constexpr int kColumnRetries = 100;
    constexpr int kGlobalRestarts = 100;

    std::vector<std::pair<uint32_t, uint32_t>> col_rows(n);
    bool placed = false;
    for (int restart = 0; restart < kGlobalRestarts && !placed; ++restart) {
        std::vector<uint32_t> cap(m, d_c);
        std::set<std::pair<uint32_t, uint32_t>> used_pairs;
        bool ok = true;
        for (uint32_t j = 0; j < n && ok; ++j) {
            bool done = false;
            for (int attempt = 0; attempt < kColumnRetries && !done; ++attempt) {
                // Draw two distinct rows weighted by remaining capacity.
                std::vector<uint32_t> slots;
                for (uint32_t r = 0; r < m; ++r)
                    for (uint32_t s = 0; s < cap[r]; ++s) slots.push_back(r);
                if (slots.empty()) break;
                const uint32_t r1 = slots[pos_rng.below(slots.size())];
                std::vector<uint32_t> slots2;
                for (uint32_t r : slots)
                    if (r != r1) slots2.push_back(r);
                if (slots2.empty()) break;
                const uint32_t r2 = slots2[pos_rng.below(slots2.size())];
                const auto pair = std::minmax(r1, r2);
                if (used_pairs.count({pair.first, pair.second})) continue;
                used_pairs.insert({pair.first, pair.second});
                --cap[r1];
                --cap[r2];
                col_rows[j] = {pair.first, pair.second};
                done = true;
            }
            ok = done;
        }
        placed = ok;
    }
    if (!placed)
        fail("build_regular_2dc: could not satisfy the no-double-edge rule (code too dense)");

    ParityCheckMatrix h;
    h.q = f.q;
    h.m = m;
    h.n = n;
    h.rows.resize(m);
    for (uint32_t j = 0; j < n; ++j) {
        h.rows[col_rows[j].first].push_back({j, 1});
        h.rows[col_rows[j].second].push_back({j, 1});
    }
    // Coefficient stream keyed by (seed, q): the same seed gives the same
    // positions for every q while re-randomizing the nonzero values.
    SplitMix64 coeff_rng(seed_for_frame(seed, f.q));
    for (auto& row : h.rows)
        for (auto& e : row) e.coeff = static_cast<uint16_t>(1 + coeff_rng.below(f.q - 1));
    validate_pcm(h);
    return h;
}

ParityCheckMatrix expand_qc(const QcBaseMatrix& base, const FieldSpec& f) {
    if (base.q != f.q) fail("expand_qc: base q disagrees with field");
    const uint32_t z = base.circulant;
    ParityCheckMatrix h;
    h.q = f.q;
    h.m = base.rows_b * z;
    h.n = base.cols_b * z;
    h.rows.resize(h.m);
    for (uint32_t bi = 0; bi < base.rows_b; ++bi) {
        for (uint32_t r = 0; r < z; ++r) {
            auto& row = h.rows[bi * z + r];
            for (uint32_t bj = 0; bj < base.cols_b; ++bj) {
                const auto& cell = base.cells[static_cast<size_t>(bi) * base.cols_b + bj];
                if (cell.shift < 0) continue;
                const uint32_t col = bj * z + (r + static_cast<uint32_t>(cell.shift)) % z;
                row.push_back({col, cell.coeff});
            }
            std::sort(row.begin(), row.end(),
                      [](const PcmEntry& a, const PcmEntry& b) { return a.col < b.col; });
        }
    }
    validate_pcm(h);
    return h;
}

std::pair<std::vector<uint32_t>, std::vector<uint32_t>> degrees(const ParityCheckMatrix& h) {
    std::vector<uint32_t> col_deg(h.n, 0), row_deg(h.m, 0);
    for (uint32_t i = 0; i < h.m; ++i) {
        row_deg[i] = static_cast<uint32_t>(h.rows[i].size());
        for (const auto& e : h.rows[i]) ++col_deg[e.col];
    }
    return {col_deg, row_deg};
}

double rate(const ParityCheckMatrix& h) {
    return static_cast<double>(h.n - std::min(h.m, h.n)) / static_cast<double>(h.n);
}

std::vector<uint16_t> syndrome(const ParityCheckMatrix& h, std::span<const uint16_t> x,
                               const FieldSpec& f) {
    if (x.size() != h.n) fail("syndrome: vector length mismatch");
    std::vector<uint16_t> s(h.m, 0);
    for (uint32_t i = 0; i < h.m; ++i) {
        uint16_t acc = 0;
        for (const auto& e : h.rows[i]) acc = FieldSpec::add(acc, f.mul(e.coeff, x[e.col]));
        s[i] = acc;
    }
    return s;
}

bool is_codeword(const ParityCheckMatrix& h, std::span<const uint16_t> x, const FieldSpec& f) {
    const auto s = syndrome(h, x, f);
    return std::all_of(s.begin(), s.end(), [](uint16_t v) { return v == 0; });
}

} // namespace nbldpc
