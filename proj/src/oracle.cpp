#include "degdet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace degdet {

TPoly TPoly::monomial(std::uint64_t q, std::uint64_t coeff, std::int64_t exp) {
    TPoly p(q);
    if (coeff % q) p.terms_.push_back({exp, coeff % q});
    return p;
}

Delta TPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().first;
}

Delta TPoly::low_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
}

std::uint64_t TPoly::coeff(std::int64_t exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(exp, std::uint64_t{0}));
    return it != terms_.end() && it->first == exp ? it->second : 0;
}

void TPoly::add_scaled(const TPoly& o, std::uint64_t c, std::int64_t e, bool negate) {
    if (q_ == 0) q_ = o.q_;
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first + e)) {
            out.push_back(terms_[i++]);
            continue;
        }
        std::int64_t ex = o.terms_[j].first + e;
        std::uint64_t v = modp::mul(o.terms_[j].second, c, q_);
        if (negate) v = modp::sub(0, v, q_);
        ++j;
        if (i < terms_.size() && terms_[i].first == ex) {
            v = modp::add(v, terms_[i].second, q_);
            ++i;
        }
        if (v) out.push_back({ex, v});
    }
    terms_ = std::move(out);
}

TPoly TPoly::operator+(const TPoly& o) const {
    TPoly r = *this;
    r.add_scaled(o, 1, 0, false);
    return r;
}

TPoly TPoly::operator-(const TPoly& o) const {
    TPoly r = *this;
    r.add_scaled(o, 1, 0, true);
    return r;
}

TPoly TPoly::operator*(const TPoly& o) const {
    TPoly r(q_ ? q_ : o.q_);
    for (const auto& [e, c] : terms_) r.add_scaled(o, c, e, false);
    return r;
}

TPoly TPoly::shifted(std::int64_t by) const {
    TPoly r = *this;
    for (auto& t : r.terms_) t.first += by;
    return r;
}

TPoly TPoly::exact_div(const TPoly& o) const {
    if (o.is_zero()) throw OracleError("division by the zero polynomial");
    std::uint64_t q = q_ ? q_ : o.q_;
    if (is_zero()) return TPoly(q);
    // Long division from the top; the quotient of Laurent polynomials is exact by assumption.
    TPoly rem = *this, quot(q);
    std::int64_t od = *o.degree(), ol = *o.low_degree();
    std::uint64_t lead_inv = modp::inv(o.terms_.back().second, q);
    while (!rem.is_zero()) {
        std::int64_t rd = *rem.degree();
        if (rd - od < *rem.low_degree() - ol) throw OracleError("inexact polynomial division");
        std::uint64_t c = modp::mul(rem.terms_.back().second, lead_inv, q);
        quot.add_scaled(TPoly::monomial(q, 1, 0), c, rd - od, false);
        rem.add_scaled(o, c, rd - od, true);
    }
    return quot;
}

TPoly det_cofactor(const TMatrix& m, std::uint64_t q) {
    // Laplace expansion along rows, memoized on the set of columns already used.
    std::size_t n = m.size();
    if (n == 0) return TPoly::monomial(q, 1, 0);
    std::vector<TPoly> cur(std::size_t{1} << n, TPoly(q)), next(cur.size(), TPoly(q));
    cur[0] = TPoly::monomial(q, 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(next.begin(), next.end(), TPoly(q));
        for (std::size_t mask = 0; mask < cur.size(); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != r || cur[mask].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (mask >> j & 1) continue;
                bool neg = std::popcount(mask >> (j + 1)) & 1;
                TPoly term = cur[mask] * m[r][j];
                next[mask | (std::size_t{1} << j)].add_scaled(term, 1, 0, neg);
            }
        }
        std::swap(cur, next);
    }
    return cur.back();
}

TPoly det_fraction_free(const TMatrix& in, std::uint64_t q) {
    TMatrix m = in;
    std::size_t n = m.size();
    if (n == 0) return TPoly::monomial(q, 1, 0);
    bool neg = false;
    TPoly prev = TPoly::monomial(q, 1, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return TPoly(q);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
        prev = m[k][k];
    }
    TPoly d = m[n - 1][n - 1];
    return neg ? TPoly(q) - d : d;
}

TMatrix substituted_matrix(const Instance& inst, const std::vector<std::uint64_t>& x) {
    std::uint64_t q = inst.field().modulus();
    TMatrix m(2 * inst.mu(), std::vector<TPoly>(2 * inst.nu(), TPoly(q)));
    for (std::size_t i = 0; i < inst.blocks().size(); ++i) {
        const Block& b = inst.blocks()[i];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                m[2 * b.id.alpha + r][2 * b.id.beta + c] =
                    TPoly::monomial(q, modp::mul(x[i], b.a(r, c).residue(), q), b.d);
    }
    return m;
}

namespace {
struct MinorSearch {
    const TMatrix& m;
    std::uint64_t q;
    int rows, cols, order;
    bool cross_check;
    DeltaSeq& best;
    std::vector<std::vector<TPoly>> tables;  // one per depth, indexed by column mask
    std::vector<int> chosen;

    void visit(int next_row, int depth) {
        std::vector<TPoly>& table = tables[depth];
        for (std::size_t mask = 0; mask < table.size(); ++mask) {
            if (std::popcount(mask) != depth) continue;
            if (cross_check && depth <= 4) check(mask, table[mask]);
            if (auto d = table[mask].degree(); d && (!best[depth] || *d > *best[depth])) best[depth] = d;
        }
        if (depth == order) return;
        for (int r = next_row; r < rows; ++r) {
            std::vector<TPoly>& nt = tables[depth + 1];
            std::fill(nt.begin(), nt.end(), TPoly(q));
            bool any = false;
            for (std::size_t mask = 0; mask < table.size(); ++mask) {
                if (std::popcount(mask) != depth || table[mask].is_zero()) continue;
                for (int j = 0; j < cols; ++j) {
                    if (mask >> j & 1 || m[r][j].is_zero()) continue;
                    const auto& [e, c] = m[r][j].terms().front();
                    bool neg = std::popcount(mask >> (j + 1)) & 1;
                    nt[mask | (std::size_t{1} << j)].add_scaled(table[mask], c, e, neg);
                    any = true;
                }
            }
            if (!any && !cross_check) continue;
            chosen.push_back(r);
            visit(r + 1, depth + 1);
            chosen.pop_back();
        }
    }

    void check(std::size_t mask, const TPoly& value) {
        TMatrix sub;
        for (int r : chosen) {
            std::vector<TPoly> row;
            for (int j = 0; j < cols; ++j)
                if (mask >> j & 1) row.push_back(m[r][j]);
            sub.push_back(row);
        }
        if (!(det_fraction_free(sub, q) == value) || !(det_cofactor(sub, q) == value))
            throw std::logic_error("oracle determinant cross-check failed");
    }
};
}  // namespace

DeltaSeq oracle_sequence(const Instance& inst, const OracleOptions& opt) {
    if (inst.field().is_rational() || inst.field().modulus() < kDefaultPrime)
        throw OracleError("oracle requires a prime field with q >= 2^31-1");
    int order = std::min(2 * inst.mu(), 2 * inst.nu());
    if (order > kOracleMaxOrder) throw OracleError("instance exceeds the oracle size guard");
    std::uint64_t q = inst.field().modulus();
    DeltaSeq best(order + 1);
    best[0] = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(trial));
        std::uniform_int_distribution<std::uint64_t> dist(1, q - 1);
        std::vector<std::uint64_t> x(inst.blocks().size());
        for (auto& xi : x) xi = dist(rng);
        TMatrix m = substituted_matrix(inst, x);
        MinorSearch s{m, q, 2 * inst.mu(), 2 * inst.nu(), order, opt.cross_check, best, {}, {}};
        s.tables.assign(order + 1, std::vector<TPoly>(std::size_t{1} << s.cols, TPoly(q)));
        s.tables[0][0] = TPoly::monomial(q, 1, 0);
        s.visit(0, 0);
    }
    bool tail = false;
    for (const auto& d : best) {
        if (!d) tail = true;
        else if (tail) throw std::logic_error("oracle sequence has a finite value after -inf");
    }
    return best;
}

Delta oracle_delta(const Instance& inst, int k, const OracleOptions& opt) {
    int order = std::min(2 * inst.mu(), 2 * inst.nu());
    if (k < 0 || k > order) throw OracleError("k out of range");
    return oracle_sequence(inst, opt)[k];
}

}  // namespace degdet
