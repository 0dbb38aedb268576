#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace gcx {

struct Basis {
    ComplexSpec spec;
    GradedSlice slice;
    std::vector<CanonicalGraph> elements;
    std::unordered_map<std::string, int> index;  // encoding -> position

    int size() const { return static_cast<int>(elements.size()); }
    int find(const std::string& encoding) const {
        auto it = index.find(encoding);
        return it == index.end() ? -1 : it->second;
    }
};

namespace detail {

inline std::size_t pair_index(int v, int a, int b) { return static_cast<std::size_t>(a * v + b); }

// All isomorphism classes of loopless graphs (multigraphs when multi) with v vertices and
// e edges, including classes that vanish in some flavor. Classes whose degree deficit with
// respect to min_degree cannot be repaired by the remaining edges are pruned.
inline std::vector<std::string> generate_classes(int v, int e, bool multi, int min_degree) {
    std::set<std::string> level;
    LabeledGraph empty;
    empty.v = v;
    level.insert(class_code(empty));
    for (int k = 0; k < e; ++k) {
        std::set<std::string> next;
        const int remaining = e - k - 1;
        for (const std::string& code : level) {
            const LabeledGraph g = decode(code);
            std::vector<int> mult(static_cast<std::size_t>(v * v), 0);
            for (const Edge& ed : g.edges) ++mult[pair_index(v, ed.tail, ed.head)];
            std::vector<int> deg = g.edge_degrees();
            for (int a = 0; a < v; ++a)
                for (int b = a + 1; b < v; ++b) {
                    if (!multi && mult[pair_index(v, a, b)] > 0) continue;
                    int deficit = 0;
                    for (int x = 0; x < v; ++x) {
                        const int d = deg[static_cast<std::size_t>(x)] + (x == a || x == b ? 1 : 0);
                        if (d < min_degree) deficit += min_degree - d;
                    }
                    if (deficit > 2 * remaining) continue;
                    LabeledGraph h = g;
                    h.edges.push_back({a, b});
                    next.insert(class_code(h));
                }
        }
        level.swap(next);
    }
    if (e == 0) {
        int deficit = v * min_degree;
        if (deficit > 0) level.clear();
    }
    return {level.begin(), level.end()};
}

inline const std::vector<std::string>& cached_classes(int v, int e, bool multi, int min_degree) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, bool, int>, std::unique_ptr<std::vector<std::string>>> memo;
    const auto key = std::make_tuple(v, e, multi, min_degree);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return *it->second;
    }
    auto classes = std::make_unique<std::vector<std::string>>(generate_classes(v, e, multi, min_degree));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.emplace(key, std::move(classes));
    return *it->second;
}

inline void distribute_hairs(const LabeledGraph& g, int h, const std::vector<int>& lo, int hi_per_vertex, int x,
                             std::vector<int>& counts, const std::function<void(const std::vector<int>&)>& emit) {
    if (x == g.v) {
        if (h == 0) emit(counts);
        return;
    }
    int rest_lo = 0;
    for (int y = x + 1; y < g.v; ++y) rest_lo += lo[static_cast<std::size_t>(y)];
    const int hi = std::min(hi_per_vertex, h - rest_lo);
    for (int k = lo[static_cast<std::size_t>(x)]; k <= hi; ++k) {
        counts[static_cast<std::size_t>(x)] = k;
        distribute_hairs(g, h - k, lo, hi_per_vertex, x + 1, counts, emit);
    }
    counts[static_cast<std::size_t>(x)] = 0;
}

}  // namespace detail

// Quick necessary conditions; false means the slice certainly has an empty basis.
inline bool slice_feasible(const ComplexSpec& spec, const GradedSlice& s) {
    if (s.v < 1 || s.e < 0 || s.h < 0) return false;
    if (spec.kind == Kind::plain && s.h != 0) return false;
    if (s.h < spec.min_hairs) return false;
    if (spec.min_valence * s.v > 2 * s.e + s.h) return false;
    if (spec.connectivity == Connectivity::connected && s.e < s.v - 1) return false;
    if (spec.n == 0 && s.e > s.v * (s.v - 1) / 2) return false;
    if (spec.n == 1 && spec.kind == Kind::hairy && s.h > s.v) return false;
    if (s.e > 0 && s.v < 2) return false;
    return true;
}

inline Basis enumerate_basis_uncached(const ComplexSpec& spec, const GradedSlice& s) {
    spec.validate();
    if (s.v < 0 || s.e < 0 || s.h < 0) throw std::invalid_argument("negative slice parameter");
    Basis basis;
    basis.spec = spec;
    basis.slice = s;
    if (!slice_feasible(spec, s)) return basis;

    const bool multi = spec.n == 1;
    const int max_hairs_per_vertex = spec.kind == Kind::plain ? 0 : (spec.n == 1 ? std::min(s.h, 1) : s.h);
    const int min_degree = std::max(0, spec.min_valence - max_hairs_per_vertex);
    const std::vector<std::string>& classes = detail::cached_classes(s.v, s.e, multi, min_degree);

    std::map<std::string, CanonicalGraph> found;
    const Kind kind = spec.kind;
    for (const std::string& code : classes) {
        const LabeledGraph g = decode(code);
        const std::vector<int> deg = g.edge_degrees();
        std::vector<int> lo(static_cast<std::size_t>(s.v), 0);
        int need = 0;
        bool possible = true;
        for (int x = 0; x < s.v; ++x) {
            lo[static_cast<std::size_t>(x)] = std::max(0, spec.min_valence - deg[static_cast<std::size_t>(x)]);
            if (lo[static_cast<std::size_t>(x)] > max_hairs_per_vertex) possible = false;
            need += lo[static_cast<std::size_t>(x)];
        }
        if (!possible || need > s.h) continue;
        std::vector<int> counts(static_cast<std::size_t>(s.v), 0);
        detail::distribute_hairs(g, s.h, lo, max_hairs_per_vertex, 0, counts, [&](const std::vector<int>& c) {
            LabeledGraph gh = g;
            for (int x = 0; x < s.v; ++x)
                for (int k = 0; k < c[static_cast<std::size_t>(x)]; ++k) gh.hairs.push_back(x);
            if (!constraint_filter(gh, spec)) return;
            CanonResult r = canonical_form(gh, spec.n, kind, true);
            if (r.zero) return;
            found.emplace(r.graph.encoding, std::move(r.graph));
        });
    }
    for (auto& [enc, cg] : found) {
        basis.index.emplace(enc, basis.size());
        basis.elements.push_back(std::move(cg));
    }
    return basis;
}

// Optional persistent store consulted before enumerating (installed by the cache layer).
struct BasisStore {
    std::function<std::optional<std::vector<std::string>>(const ComplexSpec&, const GradedSlice&)> load;
    std::function<void(const ComplexSpec&, const GradedSlice&, const std::vector<std::string>&)> save;
};

inline BasisStore& basis_store() {
    static BasisStore store;
    return store;
}

inline Basis basis_from_encodings(const ComplexSpec& spec, const GradedSlice& s, const std::vector<std::string>& encs) {
    Basis basis;
    basis.spec = spec;
    basis.slice = s;
    for (const std::string& enc : encs) {
        if (!(slice_of_encoding(enc) == s)) throw std::runtime_error("stored basis does not match its slice");
        basis.index.emplace(enc, basis.size());
        basis.elements.push_back(CanonicalGraph{enc, s, spec.flavor()});
    }
    return basis;
}

// Memoized per process; the result is immutable.
inline const Basis& enumerate_basis(const ComplexSpec& spec, const GradedSlice& s) {
    static std::mutex mu;
    static std::map<std::pair<std::string, GradedSlice>, std::unique_ptr<Basis>> memo;
    const auto key = std::make_pair(to_string(spec), s);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return *it->second;
    }
    std::unique_ptr<Basis> b;
    const BasisStore& store = basis_store();
    if (store.load) {
        if (auto encs = store.load(spec, s)) b = std::make_unique<Basis>(basis_from_encodings(spec, s, *encs));
    }
    if (!b) {
        b = std::make_unique<Basis>(enumerate_basis_uncached(spec, s));
        if (store.save) {
            std::vector<std::string> encs;
            encs.reserve(b->elements.size());
            for (const CanonicalGraph& g : b->elements) encs.push_back(g.encoding);
            store.save(spec, s, encs);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.emplace(key, std::move(b));
    return *it->second;
}

}  // namespace gcx
