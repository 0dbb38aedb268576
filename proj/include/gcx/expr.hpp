#pragma once

#include <cctype>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "operators.hpp"
#include "vector.hpp"

namespace gcx {

inline const std::vector<std::string>& operator_names() {
    static const std::vector<std::string> names = {"delta", "nabla", "Delta", "D",           "D1",          "Dp",
                                                   "D2",    "c",     "chi1",  "delta_tilde", "delta_prime", "identity"};
    return names;
}

inline std::set<Shift> named_signatures(const std::string& name) {
    if (name == "delta") return {{1, 1, 0}};
    if (name == "nabla") return {{0, 1, 0}};
    if (name == "Delta") return {{0, 1, -1}};
    if (name == "D") return {{-1, 0, 0}};
    if (name == "D1") return {{-1, 0, -1}};
    if (name == "Dp") return {{-1, -1, 0}};
    if (name == "D2") return {{-2, -1, -2}};
    if (name == "c") return {{1, 1, -1}};
    if (name == "chi1") return {{0, 0, 1}};
    if (name == "delta_tilde") return {{1, 1, 0}, {-1, 1, 0}};
    if (name == "delta_prime") return {{1, 1, 0}, {0, 0, 0}};
    if (name == "identity") return {{0, 0, 0}};
    throw std::invalid_argument("unknown operator: " + name);
}

// Operators that have a plain-to-plain action; the others vanish on plain graphs.
inline bool acts_on_plain(const std::string& name, int n) {
    return name == "delta" || name == "D" || name == "delta_tilde" || (name == "nabla" && n == 0);
}

inline Flavor output_flavor(const std::string& name, Flavor in) {
    if (name == "D1" || name == "D2") return {in.n, Kind::plain};
    return in;
}

namespace detail {

inline void apply_named_into(const std::string& name, const LabeledGraph& g, const Rational& c, GraphVector& out) {
    if (name == "delta") delta_into(g, c, out);
    else if (name == "nabla") nabla_into(g, c, out);
    else if (name == "Delta") Delta_into(g, c, out);
    else if (name == "D") D_into(g, c, out);
    else if (name == "D1") D1_into(g, c, out);
    else if (name == "Dp") Dp_into(g, c, out);
    else if (name == "D2") D2_into(g, c, out);
    else if (name == "c") c_into(g, c, out);
    else if (name == "chi1") chi1_into(g, c, out);
    else if (name == "delta_tilde") {
        delta_into(g, c, out);
        GraphVector nab(out.flavor());
        nabla_into(g, 1, nab);
        // e^{-D}(delta + nabla)e^{D} = delta - D nabla for the literal D
        for (const auto& [h, coef] : nab.terms()) D_into(decode(h), -c * coef, out);
    } else if (name == "identity") out.add(g, c);
    else if (name == "delta_prime") throw std::invalid_argument("delta_prime acts on augmented vectors");
    else throw std::invalid_argument("unknown operator: " + name);
}

struct OpCache {
    std::mutex mu;
    std::unordered_map<std::string, std::shared_ptr<const GraphVector>> images;
};

inline OpCache& op_cache() {
    static OpCache cache;
    return cache;
}

// Image of one basis graph under a named operator, memoized.
inline std::shared_ptr<const GraphVector> named_image(const std::string& name, const CanonicalGraph& g) {
    std::string key = name;
    key += '|';
    key += static_cast<char>('0' + g.flavor.n);
    key += g.flavor.kind == Kind::plain ? 'p' : 'h';
    key += '|';
    key += g.encoding;
    OpCache& cache = op_cache();
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.images.find(key);
        if (it != cache.images.end()) return it->second;
    }
    auto img = std::make_shared<GraphVector>(output_flavor(name, g.flavor));
    apply_named_into(name, decode(g), 1, *img);
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.images.emplace(key, img);
    return img;
}

}  // namespace detail

inline void clear_operator_cache() {
    std::lock_guard<std::mutex> lock(detail::op_cache().mu);
    detail::op_cache().images.clear();
}

inline GraphVector apply_named(const std::string& name, const GraphVector& x) {
    GraphVector out(output_flavor(name, x.flavor()));
    for (const auto& [g, c] : x.terms()) {
        auto img = detail::named_image(name, g);
        for (const auto& [h, d] : img->terms()) out.add(h, c * d);
    }
    return out;
}

// delta'(G, g) = (delta G, H^0 G - delta g)
inline AugmentedVector delta_prime(const AugmentedVector& x) {
    const int n = x.hairy_part.flavor().n;
    AugmentedVector out(n);
    out.hairy_part = apply_named("delta", x.hairy_part);
    GraphVector extra(Flavor{n, Kind::plain});
    for (const auto& [g, c] : x.hairy_part.terms()) {
        if (g.slice.h != 0) continue;
        CanonicalGraph p = g;
        p.flavor.kind = Kind::plain;
        extra.add(p, c);
    }
    extra -= apply_named("delta", x.extra_part);
    out.extra_part = std::move(extra);
    return out;
}

class OperatorExpr {
public:
    enum class Node { named, compose, sum, scale };

    OperatorExpr() : OperatorExpr(named("identity")) {}

    static OperatorExpr named(const std::string& name) {
        named_signatures(name);  // validates
        OperatorExpr e(Node::named);
        e.name_ = name;
        return e;
    }
    static OperatorExpr identity() { return named("identity"); }
    static OperatorExpr zero() { return Rational(0) * identity(); }

    // (a * b)(x) = a(b(x))
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
        OperatorExpr e(Node::compose);
        e.children_ = {a, b};
        return e;
    }
    friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
        OperatorExpr e(Node::sum);
        e.children_ = {a, b};
        return e;
    }
    friend OperatorExpr operator*(const Rational& s, const OperatorExpr& a) {
        OperatorExpr e(Node::scale);
        e.scalar_ = s;
        e.children_ = {a};
        return e;
    }
    friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + Rational(-1) * b; }

    Node node() const { return node_; }
    const std::string& name() const { return name_; }

    std::set<Shift> signatures() const {
        switch (node_) {
            case Node::named: return named_signatures(name_);
            case Node::scale: return scalar_ == 0 ? std::set<Shift>{} : children_[0].signatures();
            case Node::sum: {
                std::set<Shift> s = children_[0].signatures();
                for (const Shift& t : children_[1].signatures()) s.insert(t);
                return s;
            }
            case Node::compose: {
                std::set<Shift> s;
                for (const Shift& a : children_[0].signatures())
                    for (const Shift& b : children_[1].signatures()) s.insert(a + b);
                return s;
            }
        }
        return {};
    }

    GraphVector apply(const GraphVector& x) const {
        switch (node_) {
            case Node::named: return apply_named(name_, x);
            case Node::scale: {
                GraphVector r = children_[0].apply(x);
                r *= scalar_;
                return r;
            }
            case Node::sum: {
                GraphVector a = children_[0].apply(x);
                GraphVector b = children_[1].apply(x);
                if (!a.empty() && !b.empty() && !(a.flavor() == b.flavor()))
                    throw std::invalid_argument("sum of operators with different target flavors");
                return a += b;
            }
            case Node::compose: return children_[0].apply(children_[1].apply(x));
        }
        return GraphVector(x.flavor());
    }

    // On fHGC (+) fGC[-3]: named operators act on the hairy part, plain-valued ones
    // (D1, D2) land in the extra part, and delta, D, nabla also act on the extra part.
    // delta_prime acts by its own formula.
    AugmentedVector apply(const AugmentedVector& x) const {
        switch (node_) {
            case Node::named: {
                const int n = x.hairy_part.flavor().n;
                if (name_ == "delta_prime") return delta_prime(x);
                if (name_ == "identity") return x;
                AugmentedVector out(n);
                GraphVector r = apply_named(name_, x.hairy_part);
                if (r.flavor().kind == Kind::plain) out.extra_part += r;
                else out.hairy_part += r;
                if (acts_on_plain(name_, n) && !x.extra_part.empty()) out.extra_part += apply_named(name_, x.extra_part);
                return out;
            }
            case Node::scale: {
                AugmentedVector r = children_[0].apply(x);
                r *= scalar_;
                return r;
            }
            case Node::sum: {
                AugmentedVector a = children_[0].apply(x);
                a += children_[1].apply(x);
                return a;
            }
            case Node::compose: return children_[0].apply(children_[1].apply(x));
        }
        return x;
    }

    std::string to_string() const {
        switch (node_) {
            case Node::named: return name_;
            case Node::scale: return scalar_.get_str() + "*(" + children_[0].to_string() + ")";
            case Node::sum: return "(" + children_[0].to_string() + " + " + children_[1].to_string() + ")";
            case Node::compose: return children_[0].to_string() + "*" + children_[1].to_string();
        }
        return "?";
    }

    // Grammar: expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    // factor := integer ['/' integer] | name | '(' expr ')'. Products compose right to left.
    static OperatorExpr parse(const std::string& text) {
        Parser p{text, 0};
        OperatorExpr e = p.expr();
        p.skip();
        if (p.pos != text.size()) throw std::invalid_argument("trailing input in operator expression: " + text);
        return e;
    }

private:
    explicit OperatorExpr(Node n) : node_(n) {}

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        OperatorExpr expr() {
            bool neg = eat('-');
            OperatorExpr e = term();
            if (neg) e = Rational(-1) * e;
            while (true) {
                if (eat('+')) e = e + term();
                else if (eat('-')) e = e - term();
                else return e;
            }
        }
        OperatorExpr term() {
            OperatorExpr e = factor();
            while (eat('*')) e = e * factor();
            return e;
        }
        OperatorExpr factor() {
            skip();
            if (eat('(')) {
                OperatorExpr e = expr();
                if (!eat(')')) throw std::invalid_argument("missing ')' in operator expression");
                return e;
            }
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t start = pos;
                while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
                Rational q = parse_rational(s.substr(start, pos - start));
                // a bare number is a multiple of the identity; "2*x" composes with it
                return q * identity();
            }
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            if (start == pos) throw std::invalid_argument("expected operator name in: " + s);
            return named(s.substr(start, pos - start));
        }
    };

    Node node_;
    std::string name_;
    Rational scalar_ = 1;
    std::vector<OperatorExpr> children_;
};

}  // namespace gcx
