#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "canonical.hpp"
#include "rational.hpp"

namespace gcx {

// Finite linear combination of canonical graphs of one flavor; zero terms are never stored.
class GraphVector {
public:
    GraphVector() = default;
    explicit GraphVector(Flavor f) : flavor_(f) {}

    const Flavor& flavor() const { return flavor_; }
    const std::map<CanonicalGraph, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const CanonicalGraph& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const CanonicalGraph& g, const Rational& c) {
        if (c == 0) return;
        if (!(g.flavor == flavor_)) throw std::invalid_argument("flavor mismatch in GraphVector");
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Adds c times the class of a labeled graph, with its orientation sign.
    void add(const LabeledGraph& g, const Rational& c) {
        if (c == 0) return;
        auto r = canonicalize(g, flavor_.n, flavor_.kind);
        if (!r) return;
        add(r->first, r->second > 0 ? c : Rational(-c));
    }

    GraphVector& operator+=(const GraphVector& o) {
        if (o.empty()) return *this;
        if (empty() && terms_.empty()) flavor_ = o.flavor_;
        for (const auto& [g, c] : o.terms_) add(g, c);
        return *this;
    }
    GraphVector& operator-=(const GraphVector& o) {
        if (o.empty()) return *this;
        if (empty()) flavor_ = o.flavor_;
        for (const auto& [g, c] : o.terms_) add(g, -c);
        return *this;
    }
    GraphVector& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [g, c] : terms_) c *= s;
        return *this;
    }

    friend GraphVector operator+(GraphVector a, const GraphVector& b) { return a += b; }
    friend GraphVector operator-(GraphVector a, const GraphVector& b) { return a -= b; }
    friend GraphVector operator*(const Rational& s, GraphVector a) { return a *= s; }

    // Equality as vectors; empty vectors are equal regardless of flavor.
    bool operator==(const GraphVector& o) const {
        if (empty() && o.empty()) return true;
        return flavor_ == o.flavor_ && terms_ == o.terms_;
    }

private:
    Flavor flavor_;
    std::map<CanonicalGraph, Rational> terms_;
};

inline GraphVector single(const LabeledGraph& g, Flavor f, const Rational& c = 1) {
    GraphVector v(f);
    v.add(g, c);
    return v;
}

inline GraphVector single(const CanonicalGraph& g, const Rational& c = 1) {
    GraphVector v(g.flavor);
    v.add(g, c);
    return v;
}

// Human-readable rendering of a labeled graph: "v=3 e=[0-1,1-2] h=[0]".
inline std::string describe(const LabeledGraph& g) {
    std::ostringstream os;
    os << "v=" << g.v << " e=[";
    for (std::size_t i = 0; i < g.edges.size(); ++i) os << (i ? "," : "") << g.edges[i].tail << "-" << g.edges[i].head;
    os << "] h=[";
    for (std::size_t i = 0; i < g.hairs.size(); ++i) os << (i ? "," : "") << g.hairs[i];
    os << "]";
    return os.str();
}

inline std::string describe(const CanonicalGraph& g) { return describe(decode(g)); }

inline std::string describe(const GraphVector& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : v.terms()) {
        os << (first ? "" : " + ") << c.get_str() << "*{" << describe(g) << "}";
        first = false;
    }
    return os.str();
}

// Element of fHGC_{-1,n} (+) fGC_n[-3]; the second summand holds plain graphs.
struct AugmentedVector {
    GraphVector hairy_part;
    GraphVector extra_part;

    AugmentedVector() = default;
    explicit AugmentedVector(int n) : hairy_part(Flavor{n, Kind::hairy}), extra_part(Flavor{n, Kind::plain}) {}
    AugmentedVector(GraphVector h, GraphVector x) : hairy_part(std::move(h)), extra_part(std::move(x)) {}

    bool empty() const { return hairy_part.empty() && extra_part.empty(); }
    AugmentedVector& operator+=(const AugmentedVector& o) {
        hairy_part += o.hairy_part;
        extra_part += o.extra_part;
        return *this;
    }
    AugmentedVector& operator-=(const AugmentedVector& o) {
        hairy_part -= o.hairy_part;
        extra_part -= o.extra_part;
        return *this;
    }
    AugmentedVector& operator*=(const Rational& s) {
        hairy_part *= s;
        extra_part *= s;
        return *this;
    }
    bool operator==(const AugmentedVector& o) const {
        return hairy_part == o.hairy_part && extra_part == o.extra_part;
    }
};

}  // namespace gcx
