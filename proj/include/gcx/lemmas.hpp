#pragma once

// Named elements and exact checks of the closed-form lemmas about them.

#include <stdexcept>
#include <string>
#include <vector>

#include "elements.hpp"

namespace gcx {

struct ElementSpec {
    std::string name;  // sigma, lambda, rho, alpha, Sigma, pi
    int param = 0;     // a, a, a, max components, j, f
    int n = 0;
    GraphVector input;  // pi only: an even plain graph vector
};

inline GraphVector build_element(const ElementSpec& es) {
    if (es.n != 0 && es.n != 1) throw std::invalid_argument("parity must be 0 or 1");
    if (es.name == "sigma") return sigma(es.param, es.n);
    if (es.name == "lambda") {
        if (es.param < 1) throw std::invalid_argument("lambda needs a >= 1");
        if (es.n == 1 && es.param > 2) throw std::invalid_argument("lambda_a with a > 2 does not exist in odd flavor");
        if (es.param == 1) {
            LabeledGraph g;
            g.v = 2;
            g.edges.push_back({0, 1});
            return single(g, Flavor{es.n, Kind::plain});
        }
        return lambda_hairy(es.param, es.n);
    }
    if (es.name == "rho") {
        if (es.n != 0) throw std::invalid_argument("rho is an even element");
        return rho(es.param, 0);
    }
    if (es.name == "alpha") {
        if (es.param < 1) throw std::invalid_argument("alpha needs at least one component");
        return alpha(es.param, es.n);
    }
    if (es.name == "Sigma") {
        if (es.n != 0) throw std::invalid_argument("Sigma is an even element");
        return Sigma(es.param);
    }
    if (es.name == "pi") {
        if (es.n != 0) throw std::invalid_argument("pi acts on even graphs");
        return pi(es.param, es.input);
    }
    throw std::invalid_argument("unknown element: " + es.name);
}

// Gamma u Sigma_j with Sigma_0 = 1.
inline GraphVector union_with_Sigma(const GraphVector& x, int j) {
    if (j < 0) throw std::invalid_argument("negative Sigma index");
    return j == 0 ? x : union_of(x, Sigma(j));
}

struct LemmaResult {
    std::string lemma;
    std::string instance;
    bool holds = false;
    std::string detail;  // nonzero residue when the check fails
};

namespace detail {

inline LemmaResult lemma_result(std::string lemma, std::string instance, const GraphVector& residue) {
    LemmaResult r{std::move(lemma), std::move(instance), residue.empty(), {}};
    if (!r.holds) {
        r.detail = describe(residue);
        if (r.detail.size() > 400) r.detail = r.detail.substr(0, 400) + "...";
    }
    return r;
}

inline GraphVector plain_graph(int v, const std::vector<std::pair<int, int>>& edges) {
    LabeledGraph g;
    g.v = v;
    for (auto [a, b] : edges) g.edges.push_back({a, b});
    return single(g, Flavor{0, Kind::plain});
}

}  // namespace detail

// Small even plain inputs: sigma_0, lambda_1, two points, the 5-cycle, the 5-cycle with an
// extra edge component, and K4 minus an edge.
inline std::vector<GraphVector> sample_plain_graphs() {
    using detail::plain_graph;
    return {plain_graph(1, {}),
            plain_graph(2, {{0, 1}}),
            plain_graph(2, {}),
            plain_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}),
            plain_graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}}),
            plain_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}})};
}

inline const OperatorExpr& total_differential() {
    static const OperatorExpr d = OperatorExpr::parse("delta + Delta");
    return d;
}

// (delta + Delta) Sigma_m = 0
inline std::vector<LemmaResult> check_sigma_closed(int mmax) {
    std::vector<LemmaResult> out;
    for (int m = 1; m <= mmax; ++m)
        out.push_back(detail::lemma_result("Sigma-closed", "m=" + std::to_string(m), total_differential().apply(Sigma(m))));
    return out;
}

// Delta rho_a = 0 and c rho_a = 0 for even a
inline std::vector<LemmaResult> check_rho(int amax) {
    std::vector<LemmaResult> out;
    for (int a = 2; a <= amax; a += 2) {
        const GraphVector r = rho(a, 0);
        out.push_back(detail::lemma_result("Delta-rho", "a=" + std::to_string(a), apply_named("Delta", r)));
        out.push_back(detail::lemma_result("c-rho", "a=" + std::to_string(a), apply_named("c", r)));
    }
    return out;
}

// (delta + Delta) alpha = 0 up to the truncation: terms with fewer than k components vanish.
inline std::vector<LemmaResult> check_alpha(int kmax) {
    std::vector<LemmaResult> out;
    for (int n = 0; n <= 1; ++n)
        for (int k = 1; k <= kmax; ++k) {
            const GraphVector img = total_differential().apply(alpha(k, n));
            GraphVector low(img.flavor());
            for (const auto& [g, c] : img.terms())
                if (component_count(g) < k) low.add(g, c);
            out.push_back(detail::lemma_result("alpha-closed", "n=" + std::to_string(n) + ",k=" + std::to_string(k), low));
        }
    return out;
}

// Codomain of pi_f: disconnected graphs of H^{>=1} fHGC^{ddagger}_{-1,0}, a quotient by the
// connected ones.
inline ComplexSpec pi_codomain() {
    ComplexSpec s;
    s.kind = Kind::hairy;
    s.n = 0;
    s.constraint = Constraint::ddagger;
    s.connectivity = Connectivity::disconnected_only;
    s.min_hairs = 1;
    return s;
}

// (delta + Delta) pi_f(Gamma) = pi_f delta~(Gamma) for f = b+2, b+4, ..., b+2*steps
inline std::vector<LemmaResult> check_pi(const std::vector<GraphVector>& gammas, int steps) {
    std::vector<LemmaResult> out;
    const ComplexSpec tgt = pi_codomain();
    for (const GraphVector& x : gammas)
        for (const auto& [g, c] : x.terms()) {
            const GraphVector gamma = single(g, c);
            const int b = g.slice.e - g.slice.v;
            const GraphVector dt = apply_named("delta_tilde", gamma);
            for (int f = b + 2; f <= b + 2 * steps; f += 2) {
                GraphVector lhs = project(total_differential().apply(pi(f, gamma)), tgt);
                lhs -= project(pi(f, dt), tgt);
                out.push_back(detail::lemma_result("pi-chain-map", describe(g) + " f=" + std::to_string(f), lhs));
            }
        }
    return out;
}

// Both equations of the Gamma u Sigma lemma for m = 1..mmax.
inline std::vector<LemmaResult> check_gamma_sigma(const std::vector<GraphVector>& gammas, int mmax) {
    std::vector<LemmaResult> out;
    for (const GraphVector& gamma : gammas)
        for (int m = 1; m <= mmax; ++m)
            for (int odd = 0; odd <= 1; ++odd) {
                GraphVector lhs(hairy_flavor(0)), rhs(hairy_flavor(0));
                for (int i = odd; i <= m - 1; ++i) {
                    const int k = odd ? 2 * i - 1 : 2 * i;
                    const GraphVector x = chi(k, gamma);
                    GraphVector t = apply_named("Delta", union_with_Sigma(x, m - i));
                    t -= union_with_Sigma(apply_named("Delta", x), m - i);
                    t -= union_of(x, apply_named("Delta", Sigma(m - i)));
                    t *= Rational(1) / factorial(k);
                    lhs += t;
                }
                for (int i = 1; i <= m; ++i) {
                    const int k = odd ? 2 * i - 1 : 2 * i;
                    GraphVector t = apply_named("delta", chi(k, gamma));
                    t -= chi(k, apply_named("delta", gamma));
                    t = union_with_Sigma(t, m - i);
                    t *= Rational(1) / factorial(k);
                    rhs -= t;
                }
                lhs -= rhs;
                std::string inst = describe(gamma) + " m=" + std::to_string(m) + (odd ? " odd" : " even");
                out.push_back(detail::lemma_result("Gamma-Sigma", std::move(inst), lhs));
            }
    return out;
}

struct LemmaRange {
    int sigma_mmax = 4;
    int rho_amax = 4;
    int alpha_kmax = 4;
    int pi_steps = 2;
    int gamma_sigma_mmax = 3;
};

inline const std::vector<std::string>& lemma_names() {
    static const std::vector<std::string> names = {"Sigma-closed", "rho", "alpha-closed", "pi-chain-map", "Gamma-Sigma"};
    return names;
}

inline std::vector<LemmaResult> check_lemma(const std::string& name, const LemmaRange& r) {
    if (name == "Sigma-closed") return check_sigma_closed(r.sigma_mmax);
    if (name == "rho") return check_rho(r.rho_amax);
    if (name == "alpha-closed") return check_alpha(r.alpha_kmax);
    if (name == "pi-chain-map") return check_pi(sample_plain_graphs(), r.pi_steps);
    if (name == "Gamma-Sigma") return check_gamma_sigma(sample_plain_graphs(), r.gamma_sigma_mmax);
    throw std::invalid_argument("unknown lemma: " + name);
}

inline std::vector<LemmaResult> check_element_lemmas(const LemmaRange& r = {}) {
    std::vector<LemmaResult> out;
    for (const std::string& name : lemma_names())
        for (LemmaResult& x : check_lemma(name, r)) out.push_back(std::move(x));
    return out;
}

}  // namespace gcx
