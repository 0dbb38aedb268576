#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gcx {

struct Triplet {
    int row = 0;
    int col = 0;
    Rational value;
};

// Coordinate-format matrix over Q. Entries are kept sorted by (col, row), merged and nonzero.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Triplet>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    void add(int r, int c, const Rational& v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix entry out of range");
        if (v == 0) return;
        entries_.push_back({r, c, v});
        normalized_ = false;
    }

    // Sorts, sums duplicates and drops zeros.
    void normalize() {
        if (normalized_) return;
        std::sort(entries_.begin(), entries_.end(),
                  [](const Triplet& a, const Triplet& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
        std::vector<Triplet> out;
        out.reserve(entries_.size());
        for (Triplet& t : entries_) {
            if (!out.empty() && out.back().row == t.row && out.back().col == t.col) out.back().value += t.value;
            else out.push_back(std::move(t));
            if (out.back().value == 0) out.pop_back();
        }
        entries_ = std::move(out);
        normalized_ = true;
    }

    SparseMatrix transposed() const {
        SparseMatrix t(cols_, rows_);
        for (const Triplet& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
        t.normalized_ = false;
        t.normalize();
        return t;
    }

    Rational at(int r, int c) const {
        Rational s = 0;
        for (const Triplet& e : entries_)
            if (e.row == r && e.col == c) s += e.value;
        return s;
    }

    bool operator==(const SparseMatrix& o) const {
        SparseMatrix a = *this, b = o;
        a.normalize();
        b.normalize();
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            if (a.entries_[i].row != b.entries_[i].row || a.entries_[i].col != b.entries_[i].col ||
                a.entries_[i].value != b.entries_[i].value)
                return false;
        return true;
    }

    // Columns as sparse vectors (row, value), rows ascending.
    std::vector<std::vector<std::pair<int, Rational>>> columns() const {
        SparseMatrix m = *this;
        m.normalize();
        std::vector<std::vector<std::pair<int, Rational>>> cols(static_cast<std::size_t>(cols_));
        for (const Triplet& e : m.entries_) cols[static_cast<std::size_t>(e.col)].emplace_back(e.row, e.value);
        return cols;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Triplet> entries_;
    bool normalized_ = true;
};

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

static_assert(sizeof(unsigned long) == 8, "word-size primes need 64-bit unsigned long");

inline u64 mpz_mod_u64(const Integer& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

// Residue of q mod p, or nullopt when p divides the denominator.
inline std::optional<u64> reduce(const Rational& q, u64 p) {
    const u64 den = mpz_mod_u64(q.get_den(), p);
    if (den == 0) return std::nullopt;
    return mulmod(mpz_mod_u64(q.get_num(), p), powmod(den, p - 2, p), p);
}

using ModVec = std::vector<std::pair<int, u64>>;  // sorted by index

// v <- v - c * w
inline void axpy_mod(ModVec& v, u64 c, const ModVec& w, u64 p) {
    ModVec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    const u64 neg = (p - c) % p;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) out.push_back(v[i++]);
        else if (i == v.size() || w[j].first < v[i].first) {
            out.emplace_back(w[j].first, mulmod(neg, w[j].second, p));
            ++j;
        } else {
            const u64 s = (v[i].second + mulmod(neg, w[j].second, p)) % p;
            if (s) out.emplace_back(v[i].first, s);
            ++i;
            ++j;
        }
    }
    v.swap(out);
}

// Echelon insertion of column vectors; returns the indices of columns that were independent.
// nullopt means the prime divides some denominator.
inline std::optional<std::vector<int>> pivot_columns_mod(const SparseMatrix& m, u64 p) {
    std::vector<ModVec> cols(static_cast<std::size_t>(m.cols()));
    SparseMatrix n = m;
    n.normalize();
    for (const Triplet& t : n.entries()) {
        auto r = reduce(t.value, p);
        if (!r) return std::nullopt;
        if (*r) cols[static_cast<std::size_t>(t.col)].emplace_back(t.row, *r);
    }
    // process sparse columns first; the chosen set then still spans the image
    std::vector<int> order(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) order[static_cast<std::size_t>(j)] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cols[static_cast<std::size_t>(a)].size() < cols[static_cast<std::size_t>(b)].size(); });
    std::map<int, ModVec> pivots;  // leading row -> normalized vector
    std::vector<int> chosen;
    for (int j : order) {
        ModVec v = std::move(cols[static_cast<std::size_t>(j)]);
        while (!v.empty()) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end()) break;
            axpy_mod(v, v.front().second, it->second, p);
        }
        if (v.empty()) continue;
        const u64 inv = powmod(v.front().second, p - 2, p);
        for (auto& [r, x] : v) x = mulmod(x, inv, p);
        const int lead = v.front().first;
        pivots.emplace(lead, std::move(v));
        chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

using ZVec = std::vector<std::pair<int, Integer>>;

inline void make_primitive(ZVec& v) {
    Integer g = 0;
    for (auto& [r, x] : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& [r, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// v <- a*v - b*w with a = w.lead, b = v.lead; fraction free.
inline void eliminate_z(ZVec& v, const ZVec& w) {
    const Integer a = w.front().second;
    const Integer b = v.front().second;
    ZVec out;
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.emplace_back(v[i].first, a * v[i].second);
            ++i;
        } else if (i == v.size() || w[j].first < v[i].first) {
            out.emplace_back(w[j].first, -b * w[j].second);
            ++j;
        } else {
            Integer s = a * v[i].second - b * w[j].second;
            if (s != 0) out.emplace_back(v[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    v.swap(out);
    make_primitive(v);
}

inline std::vector<int> pivot_columns_exact(const SparseMatrix& m) {
    std::vector<ZVec> cols(static_cast<std::size_t>(m.cols()));
    const auto qcols = m.columns();
    for (int j = 0; j < m.cols(); ++j) {
        Integer l = 1;
        for (const auto& [r, q] : qcols[static_cast<std::size_t>(j)]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        for (const auto& [r, q] : qcols[static_cast<std::size_t>(j)]) {
            Rational s = q * Rational(l);
            cols[static_cast<std::size_t>(j)].emplace_back(r, s.get_num());
        }
        make_primitive(cols[static_cast<std::size_t>(j)]);
    }
    std::map<int, ZVec> pivots;
    std::vector<int> chosen;
    for (int j = 0; j < m.cols(); ++j) {
        ZVec v = std::move(cols[static_cast<std::size_t>(j)]);
        while (!v.empty()) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end()) break;
            eliminate_z(v, it->second);
        }
        if (v.empty()) continue;
        const int lead = v.front().first;
        pivots.emplace(lead, std::move(v));
        chosen.push_back(j);
    }
    return chosen;
}

}  // namespace detail

struct RankOptions {
    int primes = 2;
    std::uint64_t seed = 0x5eed;  // fixed default keeps runs reproducible
    bool force_exact = false;
    // Test hook: pretend the modular results disagree.
    bool simulate_bad_prime = false;
};

struct RankResult {
    int rank = 0;
    std::vector<int> pivot_columns;  // independent columns spanning the image
    std::vector<std::uint64_t> primes;
    std::vector<int> modular_ranks;
    bool escalated = false;
};

// Random primes in (2^31, 2^62).
inline std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::uint64_t> dist((1ULL << 31) + 1, (1ULL << 62) - 1);
    std::vector<std::uint64_t> out;
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t c = dist(gen) | 1ULL;
        while (!detail::is_prime_u64(c)) c += 2;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

inline RankResult rank_details(const SparseMatrix& m, const RankOptions& opt = {}) {
    RankResult res;
    if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) return res;
    if (!opt.force_exact) {
        std::vector<std::vector<int>> found;
        std::uint64_t seed = opt.seed;
        int attempts = 0;
        while (static_cast<int>(found.size()) < std::max(2, opt.primes) && attempts < 16) {
            ++attempts;
            const std::uint64_t p = random_primes(1, seed++).front();
            if (std::find(res.primes.begin(), res.primes.end(), p) != res.primes.end()) continue;
            auto piv = detail::pivot_columns_mod(m, p);
            if (!piv) continue;  // p divides a denominator
            res.primes.push_back(p);
            res.modular_ranks.push_back(static_cast<int>(piv->size()));
            found.push_back(std::move(*piv));
        }
        if (opt.simulate_bad_prime && !res.modular_ranks.empty()) --res.modular_ranks.front();
        bool agree = found.size() >= 2;
        for (std::size_t i = 1; i < found.size() && agree; ++i)
            agree = res.modular_ranks[i] == res.modular_ranks[0] && found[i] == found[0];
        if (agree) {
            res.rank = res.modular_ranks[0];
            res.pivot_columns = std::move(found[0]);
            return res;
        }
    }
    res.escalated = true;
    res.pivot_columns = detail::pivot_columns_exact(m);
    res.rank = static_cast<int>(res.pivot_columns.size());
    return res;
}

inline int rank(const SparseMatrix& m, const RankOptions& opt = {}) { return rank_details(m, opt).rank; }

// Rank-many independent columns of M spanning its image, as (row, value) vectors.
inline std::vector<std::vector<std::pair<int, Rational>>> image_basis(const SparseMatrix& m, const RankOptions& opt = {}) {
    const RankResult r = rank_details(m, opt);
    const auto cols = m.columns();
    std::vector<std::vector<std::pair<int, Rational>>> out;
    for (int j : r.pivot_columns) out.push_back(cols[static_cast<std::size_t>(j)]);
    return out;
}

}  // namespace gcx
