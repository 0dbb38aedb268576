#pragma once

// Canonical forms with orientation signs.
//
// Encoding, version 1 (all fields one unsigned byte):
//   0x01 | v | hair count of vertex 0..v-1 | P | P triples (a, b, m), a < b, sorted
// where P is the number of adjacent vertex pairs and m the edge multiplicity.
// Vertex numbering is the canonical one. Edge direction and element labels are not
// part of the class.
//
// Reference orientation of a class: vertices in canonical order, edges sorted by
// (a, b) and directed a -> b, hairs sorted by vertex. decode() returns exactly this
// labeled graph, and canonicalize() reports the sign relating its input to it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "perm.hpp"

namespace gcx {

inline constexpr std::uint8_t kEncodingVersion = 1;

struct CanonicalGraph {
    std::string encoding;
    GradedSlice slice;
    Flavor flavor;

    bool operator==(const CanonicalGraph& o) const { return encoding == o.encoding && flavor == o.flavor; }
    bool operator<(const CanonicalGraph& o) const {
        if (encoding != o.encoding) return encoding < o.encoding;
        if (flavor.n != o.flavor.n) return flavor.n < o.flavor.n;
        return flavor.kind < o.flavor.kind;
    }
};

struct CanonicalGraphHash {
    std::size_t operator()(const CanonicalGraph& g) const { return std::hash<std::string>()(g.encoding); }
};

inline GradedSlice slice_of_encoding(const std::string& enc) {
    if (enc.size() < 3 || static_cast<std::uint8_t>(enc[0]) != kEncodingVersion)
        throw std::invalid_argument("bad canonical encoding");
    GradedSlice s;
    s.v = static_cast<std::uint8_t>(enc[1]);
    std::size_t pos = 2;
    for (int i = 0; i < s.v; ++i) s.h += static_cast<std::uint8_t>(enc[pos++]);
    const int pairs = static_cast<std::uint8_t>(enc[pos++]);
    for (int i = 0; i < pairs; ++i) {
        s.e += static_cast<std::uint8_t>(enc[pos + 2]);
        pos += 3;
    }
    return s;
}

// The reference-oriented labeled graph of a canonical encoding.
inline LabeledGraph decode(const std::string& enc) {
    if (enc.size() < 3 || static_cast<std::uint8_t>(enc[0]) != kEncodingVersion)
        throw std::invalid_argument("bad canonical encoding");
    LabeledGraph g;
    g.v = static_cast<std::uint8_t>(enc[1]);
    std::size_t pos = 2;
    for (int x = 0; x < g.v; ++x) {
        const int c = static_cast<std::uint8_t>(enc[pos++]);
        for (int k = 0; k < c; ++k) g.hairs.push_back(x);
    }
    const int pairs = static_cast<std::uint8_t>(enc[pos++]);
    for (int i = 0; i < pairs; ++i) {
        const int a = static_cast<std::uint8_t>(enc[pos]);
        const int b = static_cast<std::uint8_t>(enc[pos + 1]);
        const int m = static_cast<std::uint8_t>(enc[pos + 2]);
        pos += 3;
        for (int k = 0; k < m; ++k) g.edges.push_back({a, b});
    }
    return g;
}

inline LabeledGraph decode(const CanonicalGraph& g) { return decode(g.encoding); }

// Sign relating g to the reference orientation of its image under the relabeling
// pos (old vertex -> new vertex). Zero when the flavor kills the graph through
// repeated edges (even) or repeated hairs on a vertex (odd).
inline int orientation_sign(const LabeledGraph& g, const std::vector<int>& pos, int n) {
    if (n == 0) {
        std::vector<std::pair<int, int>> keys;
        keys.reserve(g.edges.size());
        for (const Edge& ed : g.edges) {
            const int a = pos[static_cast<std::size_t>(ed.tail)], b = pos[static_cast<std::size_t>(ed.head)];
            keys.emplace_back(std::min(a, b), std::max(a, b));
        }
        return sorting_sign(keys);
    }
    int s = permutation_sign(pos);
    for (const Edge& ed : g.edges)
        if (pos[static_cast<std::size_t>(ed.tail)] > pos[static_cast<std::size_t>(ed.head)]) s = -s;
    if (!g.hairs.empty()) {
        std::vector<int> keys;
        keys.reserve(g.hairs.size());
        for (int x : g.hairs) keys.push_back(pos[static_cast<std::size_t>(x)]);
        s *= sorting_sign(keys);
    }
    return s;
}

namespace detail {

class CanonSearch {
public:
    CanonSearch(const LabeledGraph& g, int n, bool want_sign) : g_(g), n_(n), want_sign_(want_sign), v_(g.v) {
        if (v_ > 255) throw std::invalid_argument("graph too large for encoding");
        mult_.assign(static_cast<std::size_t>(v_ * v_), 0);
        for (const Edge& ed : g.edges) {
            ++mult_[idx(ed.tail, ed.head)];
            ++mult_[idx(ed.head, ed.tail)];
        }
        hairs_ = g.hair_counts();
        deg_ = g.edge_degrees();
        find_twins();
    }

    void run() {
        if (want_sign_) {
            if (n_ == 0) {
                for (int a = 0; a < v_; ++a)
                    for (int b = a + 1; b < v_; ++b)
                        if (mult_[idx(a, b)] > 1) zero_ = true;
            } else {
                for (int x = 0; x < v_; ++x)
                    if (hairs_[static_cast<std::size_t>(x)] > 1) zero_ = true;
            }
            if (!zero_) check_twin_signs();
        }
        std::vector<int> cells(static_cast<std::size_t>(v_));
        {
            std::vector<int> order(static_cast<std::size_t>(v_));
            for (int x = 0; x < v_; ++x) order[static_cast<std::size_t>(x)] = x;
            auto key = [&](int x) {
                return std::pair<int, int>(hairs_[static_cast<std::size_t>(x)], deg_[static_cast<std::size_t>(x)]);
            };
            std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
            int id = -1;
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i == 0 || key(order[i]) != key(order[i - 1])) ++id;
                cells[static_cast<std::size_t>(order[i])] = id;
            }
        }
        search(cells);
    }

    bool zero() const { return zero_; }
    int sign() const { return best_sign_; }
    const std::vector<int>& labeling() const { return best_pos_; }

    std::string encoding() const {
        std::string enc;
        enc.push_back(static_cast<char>(kEncodingVersion));
        enc.push_back(static_cast<char>(v_));
        for (int i = 0; i < v_; ++i) enc.push_back(static_cast<char>(best_code_[static_cast<std::size_t>(i)]));
        std::string pairs;
        int count = 0;
        std::size_t k = static_cast<std::size_t>(v_);
        for (int a = 0; a < v_; ++a)
            for (int b = a + 1; b < v_; ++b, ++k) {
                const std::uint8_t m = best_code_[k];
                if (m == 0) continue;
                pairs.push_back(static_cast<char>(a));
                pairs.push_back(static_cast<char>(b));
                pairs.push_back(static_cast<char>(m));
                ++count;
            }
        if (count > 255) throw std::invalid_argument("graph too large for encoding");
        enc.push_back(static_cast<char>(count));
        enc += pairs;
        return enc;
    }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * v_ + b); }

    // u and w are twins when the transposition (u w) is an automorphism.
    void find_twins() {
        twin_.resize(static_cast<std::size_t>(v_));
        for (int u = 0; u < v_; ++u) {
            twin_[static_cast<std::size_t>(u)] = u;
            for (int w = 0; w < u; ++w) {
                if (twin_[static_cast<std::size_t>(w)] != w) continue;
                if (are_twins(w, u)) {
                    twin_[static_cast<std::size_t>(u)] = w;
                    break;
                }
            }
        }
    }

    bool are_twins(int u, int w) const {
        if (hairs_[static_cast<std::size_t>(u)] != hairs_[static_cast<std::size_t>(w)]) return false;
        for (int x = 0; x < v_; ++x) {
            if (x == u || x == w) continue;
            if (mult_[idx(u, x)] != mult_[idx(w, x)]) return false;
        }
        return true;
    }

    // Transpositions within a twin class are conjugate, so one per class suffices.
    void check_twin_signs() {
        std::vector<int> id(static_cast<std::size_t>(v_));
        for (int x = 0; x < v_; ++x) id[static_cast<std::size_t>(x)] = x;
        const int base = orientation_sign(g_, id, n_);
        std::vector<char> done(static_cast<std::size_t>(v_), 0);
        for (int u = 0; u < v_ && !zero_; ++u) {
            const int r = twin_[static_cast<std::size_t>(u)];
            if (r == u || done[static_cast<std::size_t>(r)]) continue;
            done[static_cast<std::size_t>(r)] = 1;
            std::vector<int> tau = id;
            std::swap(tau[static_cast<std::size_t>(u)], tau[static_cast<std::size_t>(r)]);
            if (orientation_sign(g_, tau, n_) != base) zero_ = true;
        }
    }

    int refine(std::vector<int>& cells) const {
        int k = *std::max_element(cells.begin(), cells.end()) + 1;
        std::vector<int> order(static_cast<std::size_t>(v_));
        std::vector<std::vector<int>> sig(static_cast<std::size_t>(v_));
        while (true) {
            for (int x = 0; x < v_; ++x) {
                std::vector<int>& s = sig[static_cast<std::size_t>(x)];
                s.assign(static_cast<std::size_t>(k + 1), 0);
                s[0] = cells[static_cast<std::size_t>(x)];
                for (int y = 0; y < v_; ++y) {
                    const int m = mult_[idx(x, y)];
                    if (m) s[static_cast<std::size_t>(cells[static_cast<std::size_t>(y)] + 1)] += m;
                }
                order[static_cast<std::size_t>(x)] = x;
            }
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
            int id = -1;
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i == 0 || sig[static_cast<std::size_t>(order[i])] != sig[static_cast<std::size_t>(order[i - 1])]) ++id;
                cells[static_cast<std::size_t>(order[i])] = id;
            }
            if (id + 1 == k) return k;
            k = id + 1;
        }
    }

    void search(std::vector<int> cells) {
        const int k = v_ == 0 ? 0 : refine(cells);
        if (k == v_) {
            leaf(cells);
            return;
        }
        std::vector<int> size(static_cast<std::size_t>(k), 0);
        for (int c : cells) ++size[static_cast<std::size_t>(c)];
        int target = 0;
        while (size[static_cast<std::size_t>(target)] == 1) ++target;
        for (int x = 0; x < v_; ++x) {
            if (cells[static_cast<std::size_t>(x)] != target) continue;
            bool eligible = true;
            for (int y = 0; y < x; ++y)
                if (cells[static_cast<std::size_t>(y)] == target &&
                    twin_[static_cast<std::size_t>(y)] == twin_[static_cast<std::size_t>(x)]) {
                    eligible = false;
                    break;
                }
            if (!eligible) continue;
            std::vector<int> child(cells);
            for (int y = 0; y < v_; ++y) {
                int& c = child[static_cast<std::size_t>(y)];
                if (c > target || (c == target && y != x)) ++c;
            }
            search(std::move(child));
        }
    }

    void leaf(const std::vector<int>& pos) {
        if (++leaves_ > kMaxLeaves) throw std::runtime_error("canonical search exceeded leaf budget");
        std::vector<int> inv = inverse_permutation(pos);
        code_.assign(static_cast<std::size_t>(v_ + v_ * (v_ - 1) / 2), 0);
        for (int i = 0; i < v_; ++i)
            code_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(hairs_[static_cast<std::size_t>(inv[static_cast<std::size_t>(i)])]);
        std::size_t k = static_cast<std::size_t>(v_);
        for (int a = 0; a < v_; ++a)
            for (int b = a + 1; b < v_; ++b, ++k)
                code_[k] = mult_[idx(inv[static_cast<std::size_t>(a)], inv[static_cast<std::size_t>(b)])];
        if (!have_best_ || code_ < best_code_) {
            have_best_ = true;
            best_code_ = code_;
            best_pos_ = pos;
            if (want_sign_ && !zero_) best_sign_ = orientation_sign(g_, pos, n_);
        } else if (code_ == best_code_ && want_sign_ && !zero_) {
            if (orientation_sign(g_, pos, n_) != best_sign_) zero_ = true;
        }
    }

    static constexpr long kMaxLeaves = 5'000'000;

    const LabeledGraph& g_;
    int n_;
    bool want_sign_;
    int v_;
    std::vector<std::uint8_t> mult_;
    std::vector<int> hairs_, deg_, twin_;
    std::vector<std::uint8_t> code_, best_code_;
    std::vector<int> best_pos_;
    bool have_best_ = false;
    bool zero_ = false;
    int best_sign_ = 1;
    long leaves_ = 0;
};

}  // namespace detail

struct CanonResult {
    CanonicalGraph graph;
    int sign = 1;
    bool zero = false;
    std::vector<int> labeling;  // input vertex -> canonical vertex
};

// Full result, including the class of zero graphs (needed while enumerating).
inline CanonResult canonical_form(const LabeledGraph& g, int n, Kind kind, bool want_sign = true) {
    detail::CanonSearch s(g, n, want_sign);
    s.run();
    CanonResult r;
    r.graph.encoding = s.encoding();
    r.graph.slice = slice_of(g);
    r.graph.flavor = {n, kind};
    r.zero = want_sign && s.zero();
    r.sign = s.sign();
    r.labeling = s.labeling();
    return r;
}

// Absent iff the class is zero in the given flavor.
inline std::optional<std::pair<CanonicalGraph, int>> canonicalize(const LabeledGraph& g, int n, Kind kind) {
    g.validate();
    CanonResult r = canonical_form(g, n, kind, true);
    if (r.zero) return std::nullopt;
    return std::make_pair(std::move(r.graph), r.sign);
}

// Class key ignoring orientation; used by the enumerator.
inline std::string class_code(const LabeledGraph& g) {
    detail::CanonSearch s(g, 0, false);
    s.run();
    return s.encoding();
}

}  // namespace gcx
