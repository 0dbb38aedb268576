#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcx {

enum class Kind : std::uint8_t { plain, hairy };

struct Flavor {
    int n = 0;  // parity representative, 0 or 1
    Kind kind = Kind::plain;
    bool operator==(const Flavor&) const = default;
};

inline bool is_even(const Flavor& f) { return f.n == 0; }

struct Edge {
    int tail = 0;
    int head = 0;
    bool operator==(const Edge&) const = default;
};

// A raw generator: ordered vertices, ordered directed edges, ordered hairs.
struct LabeledGraph {
    int v = 0;
    std::vector<Edge> edges;
    std::vector<int> hairs;  // vertex each hair is attached to

    int e() const { return static_cast<int>(edges.size()); }
    int h() const { return static_cast<int>(hairs.size()); }

    void validate() const {
        if (v < 0) throw std::invalid_argument("negative vertex count");
        for (const Edge& ed : edges) {
            if (ed.tail < 0 || ed.tail >= v || ed.head < 0 || ed.head >= v)
                throw std::invalid_argument("edge endpoint out of range");
            if (ed.tail == ed.head) throw std::invalid_argument("tadpole");
        }
        for (int x : hairs)
            if (x < 0 || x >= v) throw std::invalid_argument("hair vertex out of range");
    }

    std::vector<int> edge_degrees() const {
        std::vector<int> d(static_cast<std::size_t>(v), 0);
        for (const Edge& ed : edges) {
            ++d[static_cast<std::size_t>(ed.tail)];
            ++d[static_cast<std::size_t>(ed.head)];
        }
        return d;
    }

    std::vector<int> hair_counts() const {
        std::vector<int> c(static_cast<std::size_t>(v), 0);
        for (int x : hairs) ++c[static_cast<std::size_t>(x)];
        return c;
    }

    // valence counts edge ends and hairs
    std::vector<int> valences() const {
        std::vector<int> d = edge_degrees();
        for (int x : hairs) ++d[static_cast<std::size_t>(x)];
        return d;
    }

    // Disjoint union: every element of *this comes before those of other.
    LabeledGraph disjoint_union(const LabeledGraph& other) const {
        LabeledGraph u = *this;
        for (const Edge& ed : other.edges) u.edges.push_back({ed.tail + v, ed.head + v});
        for (int x : other.hairs) u.hairs.push_back(x + v);
        u.v = v + other.v;
        return u;
    }
};

struct GradedSlice {
    int v = 0;
    int e = 0;
    int h = 0;

    int b() const { return e - v; }
    int a() const { return e + h; }
    int f() const { return e + h - v; }
    bool operator==(const GradedSlice&) const = default;
    auto operator<=>(const GradedSlice&) const = default;
};

inline std::string to_string(const GradedSlice& s) {
    std::ostringstream os;
    os << "(v=" << s.v << ",e=" << s.e << ",h=" << s.h << ")";
    return os.str();
}

inline GradedSlice slice_of(const LabeledGraph& g) { return {g.v, g.e(), g.h()}; }

enum class Constraint : std::uint8_t { none, dagger, ddagger, dagger_ddagger, star };
enum class Connectivity : std::uint8_t { all, connected, disconnected_only };
enum class QuotientMode : std::uint8_t { none, must_contain_forbidden };

struct ComplexSpec {
    Kind kind = Kind::plain;
    int n = 0;
    int min_valence = 0;
    Constraint constraint = Constraint::none;
    Connectivity connectivity = Connectivity::all;
    QuotientMode quotient = QuotientMode::none;
    bool all_components_forbidden = false;  // the unbounded remainder
    int min_hairs = 0;                       // H^{>=k} prefix
    int max_components = 0;                  // 0 means unlimited

    Flavor flavor() const { return {n, kind}; }
    bool operator==(const ComplexSpec&) const = default;

    void validate() const {
        if (n != 0 && n != 1) throw std::invalid_argument("parity must be 0 or 1");
        if (min_valence < 0 || min_valence > 3) throw std::invalid_argument("min_valence must be in 0..3");
        if (constraint == Constraint::star && min_valence < 2)
            throw std::invalid_argument("star constraint needs min_valence >= 2");
        if (kind == Kind::plain && min_hairs > 0) throw std::invalid_argument("plain complex with hairs");
        if (min_hairs < 0 || max_components < 0) throw std::invalid_argument("negative bound in complex spec");
    }
};

inline const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::none: return "none";
        case Constraint::dagger: return "dagger";
        case Constraint::ddagger: return "ddagger";
        case Constraint::dagger_ddagger: return "dagger_ddagger";
        case Constraint::star: return "star";
    }
    return "?";
}

inline const char* to_string(Connectivity c) {
    switch (c) {
        case Connectivity::all: return "all";
        case Connectivity::connected: return "connected";
        case Connectivity::disconnected_only: return "disconnected_only";
    }
    return "?";
}

// Canonical serialization; also the cache key source.
inline std::string to_string(const ComplexSpec& s) {
    std::ostringstream os;
    os << (s.kind == Kind::plain ? "plain" : "hairy") << ":n=" << s.n << ":minval=" << s.min_valence
       << ":constraint=" << to_string(s.constraint) << ":conn=" << to_string(s.connectivity)
       << ":quot=" << (s.quotient == QuotientMode::none ? "none" : "must_contain_forbidden")
       << ":ur=" << (s.all_components_forbidden ? 1 : 0) << ":minhairs=" << s.min_hairs;
    if (s.max_components > 0) os << ":maxcomp=" << s.max_components;
    return os.str();
}

// Degree per parity and kind, with m = -1 for hairy complexes.
inline int degree(Kind kind, int n, const GradedSlice& s) {
    if (kind == Kind::plain) return n == 0 ? s.e : s.v - 1;
    return n == 0 ? s.e + 1 : s.v + 1 - s.h;
}

inline int degree(const ComplexSpec& spec, const GradedSlice& s) { return degree(spec.kind, spec.n, s); }

enum class ComponentTag : std::uint8_t { sigma0, sigma1, lambda1, lambda2, other };

inline const char* to_string(ComponentTag t) {
    switch (t) {
        case ComponentTag::sigma0: return "sigma0";
        case ComponentTag::sigma1: return "sigma1";
        case ComponentTag::lambda1: return "lambda1";
        case ComponentTag::lambda2: return "lambda2";
        case ComponentTag::other: return "other";
    }
    return "?";
}

struct Component {
    std::vector<int> vertices;
    int e = 0;
    int h = 0;
    ComponentTag tag = ComponentTag::other;
};

struct ComponentSplit {
    std::vector<Component> components;
    int c = 0;  // number of components
    int p = 0;  // components carrying at least one hair
};

inline ComponentTag tag_of(int v, int e, int h) {
    if (v == 1 && e == 0 && h == 0) return ComponentTag::sigma0;
    if (v == 1 && e == 0 && h == 1) return ComponentTag::sigma1;
    if (v == 2 && e == 1 && h == 0) return ComponentTag::lambda1;
    if (v == 2 && e == 1 && h == 1) return ComponentTag::lambda2;
    return ComponentTag::other;
}

inline ComponentSplit component_split(const LabeledGraph& g) {
    std::vector<int> parent(static_cast<std::size_t>(g.v));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const Edge& ed : g.edges) {
        int a = find(ed.tail), b = find(ed.head);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<int> comp_of(static_cast<std::size_t>(g.v), -1);
    ComponentSplit out;
    for (int x = 0; x < g.v; ++x) {
        int r = find(x);
        if (comp_of[static_cast<std::size_t>(r)] < 0) {
            comp_of[static_cast<std::size_t>(r)] = static_cast<int>(out.components.size());
            out.components.emplace_back();
        }
        comp_of[static_cast<std::size_t>(x)] = comp_of[static_cast<std::size_t>(r)];
        out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(x)])].vertices.push_back(x);
    }
    for (const Edge& ed : g.edges) ++out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(ed.tail)])].e;
    for (int x : g.hairs) ++out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(x)])].h;
    for (Component& c : out.components) {
        c.tag = tag_of(static_cast<int>(c.vertices.size()), c.e, c.h);
        if (c.h > 0) ++out.p;
    }
    out.c = static_cast<int>(out.components.size());
    return out;
}

inline bool constraint_filter(const LabeledGraph& g, const ComplexSpec& spec) {
    if (spec.kind == Kind::plain && g.h() > 0) return false;
    if (g.h() < spec.min_hairs) return false;
    const std::vector<int> val = g.valences();
    const std::vector<int> hc = g.hair_counts();
    for (int x = 0; x < g.v; ++x) {
        if (val[static_cast<std::size_t>(x)] < spec.min_valence) return false;
        if (spec.constraint == Constraint::star && hc[static_cast<std::size_t>(x)] > 0 && val[static_cast<std::size_t>(x)] == 2)
            return false;
    }
    const bool need_components = spec.constraint != Constraint::none || spec.connectivity != Connectivity::all ||
                                 spec.quotient != QuotientMode::none || spec.all_components_forbidden ||
                                 spec.max_components > 0;
    if (!need_components) return true;
    const ComponentSplit cs = component_split(g);
    if (spec.max_components > 0 && cs.c > spec.max_components) return false;
    if (spec.connectivity == Connectivity::connected && cs.c != 1) return false;
    if (spec.connectivity == Connectivity::disconnected_only && cs.c < 2) return false;
    bool has_forbidden = false;
    bool all_forbidden = true;
    for (const Component& c : cs.components) {
        const bool lam1 = c.tag == ComponentTag::lambda1;
        const bool sig1_lam2 = c.tag == ComponentTag::sigma1 || c.tag == ComponentTag::lambda2;
        if (lam1 && (spec.constraint == Constraint::dagger || spec.constraint == Constraint::dagger_ddagger)) return false;
        if (sig1_lam2 && (spec.constraint == Constraint::ddagger || spec.constraint == Constraint::dagger_ddagger))
            return false;
        has_forbidden = has_forbidden || sig1_lam2;
        all_forbidden = all_forbidden && sig1_lam2;
    }
    if (spec.quotient == QuotientMode::must_contain_forbidden && !has_forbidden) return false;
    if (spec.all_components_forbidden && !all_forbidden) return false;
    return true;
}

}  // namespace gcx
