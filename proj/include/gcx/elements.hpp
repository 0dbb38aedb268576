#pragma once

// Distinguished graph vectors: stars, lambdas, rho_a, alpha, Sigma_j and the maps chi^d, pi_f.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"
#include "graph.hpp"
#include "vector.hpp"

namespace gcx {

// Gamma u Gamma': every element of the first graph comes first. In odd hairy graphs vertices
// and hairs share one numbering, so the hairs of the first graph also pass the vertices of the
// second one.
inline int union_sign(const LabeledGraph& a, const LabeledGraph& b, Flavor f) {
    if (f.n == 1 && f.kind == Kind::hairy && (a.h() * b.v) % 2) return -1;
    return 1;
}

inline GraphVector union_of(const GraphVector& x, const GraphVector& y) {
    if (x.empty() || y.empty()) return GraphVector(x.empty() ? y.flavor() : x.flavor());
    if (!(x.flavor() == y.flavor())) throw std::invalid_argument("union of vectors with different flavors");
    const Flavor f = x.flavor();
    GraphVector out(f);
    for (const auto& [g, c] : x.terms()) {
        const LabeledGraph a = decode(g);
        for (const auto& [h, d] : y.terms()) {
            const LabeledGraph b = decode(h);
            const Rational cd = c * d;
            out.add(a.disjoint_union(b), union_sign(a, b, f) > 0 ? cd : Rational(-cd));
        }
    }
    return out;
}

inline GraphVector union_power(const GraphVector& x, int k) {
    if (k < 1) throw std::invalid_argument("union power needs k >= 1");
    GraphVector r = x;
    for (int i = 1; i < k; ++i) r = union_of(r, x);
    return r;
}

inline Flavor hairy_flavor(int n) { return {n, Kind::hairy}; }

// One vertex with a hairs; zero in odd flavor for a >= 2.
inline GraphVector sigma(int a, int n) {
    if (a < 0) throw std::invalid_argument("sigma needs a >= 0");
    LabeledGraph g;
    g.v = 1;
    g.hairs.assign(static_cast<std::size_t>(a), 0);
    return single(g, a == 0 ? Flavor{n, Kind::plain} : hairy_flavor(n));
}

inline GraphVector sigma_hairy(int a, int n) {
    LabeledGraph g;
    g.v = 1;
    g.hairs.assign(static_cast<std::size_t>(a), 0);
    return single(g, hairy_flavor(n));
}

// Two vertices joined by an edge, a-1 hairs on one of them.
inline GraphVector lambda_hairy(int a, int n) {
    if (a < 1) throw std::invalid_argument("lambda needs a >= 1");
    LabeledGraph g;
    g.v = 2;
    g.edges.push_back({0, 1});
    g.hairs.assign(static_cast<std::size_t>(a - 1), 0);
    return single(g, hairy_flavor(n));
}

// rho_a = sum_{i=1}^{a-1} (-1)^i / (i! (a-1-i)!) sigma_i u lambda_{a-i}
inline GraphVector rho(int a, int n) {
    if (a < 2) throw std::invalid_argument("rho needs a >= 2");
    GraphVector out(hairy_flavor(n));
    for (int i = 1; i <= a - 1; ++i) {
        Rational c = Rational(i % 2 ? -1 : 1) / Rational(factorial(i) * factorial(a - 1 - i));
        GraphVector t = union_of(sigma_hairy(i, n), lambda_hairy(a - i, n));
        t *= c;
        out += t;
    }
    return out;
}

// alpha = sum_{k>=1} sigma_1^{u k} / k!, truncated to max_components components.
// In odd flavor the cocycle is sum_k (-1)^{k-1} sigma_1^{u k} / k! = 1 - e^{-sigma_1}: with
// the shared vertex and hair numbering delta and Delta meet with the opposite relative sign.
inline GraphVector alpha(int max_components, int n) {
    GraphVector out(hairy_flavor(n));
    GraphVector s1 = sigma_hairy(1, n);
    GraphVector p = s1;
    for (int k = 1; k <= max_components; ++k) {
        if (k > 1) p = union_of(p, s1);
        GraphVector t = p;
        t *= Rational(n == 1 && k % 2 == 0 ? -1 : 1) / Rational(factorial(k));
        out += t;
    }
    return out;
}

namespace detail {

// Multiplicity vectors k_i with sum_i i k_i = j.
inline void partitions(int j, int largest, std::vector<int>& k, const std::function<void(const std::vector<int>&)>& emit) {
    if (j == 0) {
        emit(k);
        return;
    }
    for (int i = std::min(j, largest); i >= 1; --i) {
        for (int m = 1; m * i <= j; ++m) {
            k[static_cast<std::size_t>(i)] = m;
            partitions(j - m * i, i - 1, k, emit);
        }
        k[static_cast<std::size_t>(i)] = 0;
    }
}

}  // namespace detail

// Sigma_j = sum over k_i >= 0 with sum_i i k_i = j of prod_i (-1)^{k_i} / (k_i! ((2i+1)!)^{k_i}) u_i sigma_{2i+1}^{u k_i}
// Even hairy flavor.
inline GraphVector Sigma(int j) {
    if (j < 1) throw std::invalid_argument("Sigma needs j >= 1");
    GraphVector out(hairy_flavor(0));
    std::vector<int> k(static_cast<std::size_t>(j + 1), 0);
    detail::partitions(j, j, k, [&](const std::vector<int>& ks) {
        Rational c = 1;
        GraphVector term;
        bool first = true;
        for (int i = 1; i <= j; ++i) {
            const int ki = ks[static_cast<std::size_t>(i)];
            if (ki == 0) continue;
            c *= Rational(ki % 2 ? -1 : 1) / Rational(factorial(ki));
            for (int r = 0; r < ki; ++r) c /= Rational(factorial(2 * i + 1));
            GraphVector part = union_power(sigma_hairy(2 * i + 1, 0), ki);
            term = first ? part : union_of(term, part);
            first = false;
        }
        term *= c;
        out += term;
    });
    return out;
}

// Regards plain graphs as hairless hairy graphs.
inline GraphVector as_hairy(const GraphVector& x) {
    GraphVector out(hairy_flavor(x.flavor().n));
    for (const auto& [g, c] : x.terms()) {
        CanonicalGraph h = g;
        h.flavor.kind = Kind::hairy;
        out.add(h, c);
    }
    return out;
}

// chi^d adds d hairs in all possible ways (multinomial weights); zero for d < 0.
inline GraphVector chi(int d, const GraphVector& x) {
    GraphVector cur = x.flavor().kind == Kind::plain ? as_hairy(x) : x;
    if (d < 0) return GraphVector(cur.flavor());
    for (int i = 0; i < d; ++i) cur = apply_named("chi1", cur);
    return cur;
}

// pi_f on B^{<f,par} fGC_0^{>=1}: every term needs b = e - v <= f with b = f mod 2.
// With the literal D the chain map property needs the D-term with a plus sign (the
// conjugation is by e^{-D}, see delta_tilde), and the sums run up to K = (f - b)/2 with
// Sigma_0 = 1. The top terms are connected for connected Gamma and so vanish in the
// disconnected quotient; for disconnected Gamma they are needed.
inline GraphVector pi(int f, const GraphVector& x) {
    if (x.flavor().n != 0 || x.flavor().kind != Kind::plain) throw std::invalid_argument("pi_f acts on even plain graphs");
    GraphVector out(hairy_flavor(0));
    for (const auto& [g, c] : x.terms()) {
        const int b = g.slice.e - g.slice.v;
        if (b > f || (f - b) % 2 != 0) throw std::invalid_argument("pi_f needs b <= f with the parity of f");
        const int K = (f - b) / 2;
        const GraphVector gamma = single(g, c);
        for (int i = 0; i <= K; ++i) {
            GraphVector t = i == K ? chi(2 * i, gamma) : union_of(chi(2 * i, gamma), Sigma(K - i));
            t *= Rational(1) / Rational(factorial(2 * i));
            out += t;
        }
        const GraphVector dg = apply_named("D", gamma);
        if (dg.empty()) continue;
        for (int i = 1; i <= K; ++i) {
            GraphVector t = i == K ? chi(2 * i - 1, dg) : union_of(chi(2 * i - 1, dg), Sigma(K - i));
            t *= Rational(1) / Rational(factorial(2 * i - 1));
            out += t;
        }
    }
    return out;
}

// Drops terms outside a complex (sub/quotient projection).
inline GraphVector project(const GraphVector& x, const ComplexSpec& spec) {
    GraphVector out(x.flavor());
    for (const auto& [g, c] : x.terms())
        if (constraint_filter(decode(g), spec)) out.add(g, c);
    return out;
}

inline int component_count(const CanonicalGraph& g) { return component_split(decode(g)).c; }

}  // namespace gcx
