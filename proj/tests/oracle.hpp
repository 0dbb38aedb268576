#pragma once

// Brute-force references for the property checks. Nothing here uses the canonical search:
// isomorphism classes come from orbits under all vertex permutations, and a graph is zero
// when one of its automorphisms reverses the orientation.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gcx/graph.hpp>
#include <gcx/rational.hpp>

namespace gcx::oracle {

// A graph up to element labels: edge pairs (a < b) as a sorted multiset, hairs per vertex.
struct Shape {
    int v = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> hairs;

    std::string key() const {
        std::string s(1, static_cast<char>(v));
        for (auto [a, b] : edges) {
            s += static_cast<char>(a);
            s += static_cast<char>(b);
        }
        s += '|';
        for (int h : hairs) s += static_cast<char>(h);
        return s;
    }

    Shape image(const std::vector<int>& p) const {
        Shape t;
        t.v = v;
        t.hairs.assign(static_cast<std::size_t>(v), 0);
        for (auto [a, b] : edges) {
            const int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
            t.edges.emplace_back(std::min(x, y), std::max(x, y));
        }
        std::sort(t.edges.begin(), t.edges.end());
        for (int i = 0; i < v; ++i) t.hairs[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = hairs[static_cast<std::size_t>(i)];
        return t;
    }

    LabeledGraph labeled() const {
        LabeledGraph g;
        g.v = v;
        for (auto [a, b] : edges) g.edges.push_back({a, b});
        for (int i = 0; i < v; ++i)
            for (int k = 0; k < hairs[static_cast<std::size_t>(i)]; ++k) g.hairs.push_back(i);
        return g;
    }
};

inline int inversion_sign(const std::vector<int>& xs) {
    int s = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j]) return 0;
            if (xs[i] > xs[j]) s = -s;
        }
    return s;
}

// Orientation sign of an automorphism p of s (p maps s onto itself).
inline int automorphism_sign(const Shape& s, const std::vector<int>& p, int n) {
    if (n == 0) {
        // edges odd: the induced permutation of the edge list; a double edge has an odd swap
        for (std::size_t i = 1; i < s.edges.size(); ++i)
            if (s.edges[i] == s.edges[i - 1]) return -1;
        std::vector<int> where;
        for (auto [a, b] : s.edges) {
            const int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
            const auto it = std::find(s.edges.begin(), s.edges.end(), std::make_pair(std::min(x, y), std::max(x, y)));
            where.push_back(static_cast<int>(it - s.edges.begin()));
        }
        return inversion_sign(where);
    }
    // vertices odd, edge reversal odd, hairs odd
    for (int h : s.hairs)
        if (h >= 2) return -1;
    int sign = inversion_sign(p);
    for (auto [a, b] : s.edges)
        if (p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)]) sign = -sign;
    std::vector<int> hair_images;
    for (int i = 0; i < s.v; ++i)
        if (s.hairs[static_cast<std::size_t>(i)]) hair_images.push_back(p[static_cast<std::size_t>(i)]);
    return sign * inversion_sign(hair_images);
}

inline bool is_zero(const Shape& s, int n) {
    std::vector<int> p(static_cast<std::size_t>(s.v));
    std::iota(p.begin(), p.end(), 0);
    const std::string k = s.key();
    do {
        if (s.image(p).key() == k && automorphism_sign(s, p, n) < 0) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// All labeled shapes with v vertices, e edges and h hairs. Multiple edges only when multi.
inline void for_each_shape(int v, int e, int h, bool multi, const std::function<void(const Shape&)>& emit) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
    Shape s;
    s.v = v;
    s.hairs.assign(static_cast<std::size_t>(v), 0);
    std::function<void(int, int)> hairs = [&](int x, int left) {
        if (x == v - 1) {
            s.hairs[static_cast<std::size_t>(x)] = left;
            emit(s);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            s.hairs[static_cast<std::size_t>(x)] = k;
            hairs(x + 1, left - k);
        }
    };
    std::function<void(std::size_t, int)> edges = [&](std::size_t from, int left) {
        if (left == 0) {
            if (v == 0) {
                if (h == 0) emit(s);
                return;
            }
            hairs(0, h);
            return;
        }
        for (std::size_t i = from; i < pairs.size(); ++i) {
            s.edges.push_back(pairs[i]);
            edges(multi ? i : i + 1, left - 1);
            s.edges.pop_back();
        }
    };
    edges(0, e);
}

// Number of nonzero isomorphism classes in a slice that satisfy the spec.
inline int basis_count(const ComplexSpec& spec, const GradedSlice& sl) {
    if (sl.v < 1 || sl.e < 0 || sl.h < 0) return 0;
    if (spec.kind == Kind::plain && sl.h > 0) return 0;
    std::set<std::string> seen;
    int count = 0;
    std::vector<int> p(static_cast<std::size_t>(sl.v));
    // multiple edges are always generated so that zero detection is exercised
    for_each_shape(sl.v, sl.e, sl.h, true, [&](const Shape& s) {
        if (seen.count(s.key())) return;
        bool zero = false;
        std::iota(p.begin(), p.end(), 0);
        const std::string k = s.key();
        do {
            const Shape t = s.image(p);
            const std::string tk = t.key();
            seen.insert(tk);
            if (tk == k && automorphism_sign(s, p, spec.n) < 0) zero = true;
        } while (std::next_permutation(p.begin(), p.end()));
        if (!zero && constraint_filter(s.labeled(), spec)) ++count;
    });
    return count;
}

// Rank over Q by dense Gaussian elimination.
inline int dense_rank(std::vector<std::vector<Rational>> a) {
    int r = 0;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(piv)]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] == 0) continue;
            const Rational f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] /
                               a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            for (int j = c; j < cols; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        ++r;
    }
    return r;
}

// A random relabeling of g together with the orientation sign it introduces: vertices
// permuted, edge list shuffled, some edges reversed, hair list shuffled.
struct Relabeled {
    LabeledGraph graph;
    int sign = 1;
};

inline Relabeled relabel(const LabeledGraph& g, int n, std::mt19937_64& rng) {
    std::vector<int> p(static_cast<std::size_t>(g.v));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<int> eo(g.edges.size()), ho(g.hairs.size());
    std::iota(eo.begin(), eo.end(), 0);
    std::iota(ho.begin(), ho.end(), 0);
    std::shuffle(eo.begin(), eo.end(), rng);
    std::shuffle(ho.begin(), ho.end(), rng);
    Relabeled out;
    out.graph.v = g.v;
    int flips = 0;
    for (int i : eo) {
        Edge ed = g.edges[static_cast<std::size_t>(i)];
        Edge mapped{p[static_cast<std::size_t>(ed.tail)], p[static_cast<std::size_t>(ed.head)]};
        if (rng() % 2) {
            std::swap(mapped.tail, mapped.head);
            ++flips;
        }
        out.graph.edges.push_back(mapped);
    }
    for (int i : ho) out.graph.hairs.push_back(p[static_cast<std::size_t>(g.hairs[static_cast<std::size_t>(i)])]);
    if (n == 0) {
        out.sign = inversion_sign(eo);
    } else {
        // new position of vertex i is p[i]; the sign of p equals that of its inverse
        out.sign = inversion_sign(p) * inversion_sign(ho) * (flips % 2 ? -1 : 1);
    }
    return out;
}

// A random loopless graph with v vertices, e edges and h hairs.
inline LabeledGraph random_graph(int v, int e, int h, std::mt19937_64& rng) {
    LabeledGraph g;
    g.v = v;
    if (v >= 2) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        for (int i = 0; i < e; ++i) {
            int a = pick(rng), b = pick(rng);
            while (b == a) b = pick(rng);
            g.edges.push_back({a, b});
        }
    }
    if (v >= 1) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        for (int i = 0; i < h; ++i) g.hairs.push_back(pick(rng));
    }
    return g;
}

}  // namespace gcx::oracle
