#pragma once

// Per-graph operators. Each takes a labeled graph in some orientation and adds
// coefficient * (its image) to an output vector; signs come from canonicalize.
// New vertices, edges and hairs get the next free number; a new edge points to the
// new vertex. Deleting an element first moves it to the last position of its kind.
// In odd hairy graphs vertices and hairs share one numbering, vertices first, so a new
// vertex is also moved past every hair and a deleted vertex is moved past them first.

#include <functional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "vector.hpp"

namespace gcx {

// Signature (dv, de, dh) of each operator on slices.
struct Shift {
    int dv = 0, de = 0, dh = 0;
    bool operator==(const Shift&) const = default;
    auto operator<=>(const Shift&) const = default;
    Shift operator+(const Shift& o) const { return {dv + o.dv, de + o.de, dh + o.dh}; }
};

inline GradedSlice apply_shift(const GradedSlice& s, const Shift& d) { return {s.v + d.dv, s.e + d.de, s.h + d.dh}; }

namespace detail {

inline int sign_of_parity(int k) { return k % 2 == 0 ? 1 : -1; }

// Deleting hair j after moving it to the end; only odd flavors order hairs.
inline int remove_hair(LabeledGraph& g, int j, int n) {
    const int after = g.h() - 1 - j;
    g.hairs.erase(g.hairs.begin() + j);
    return n == 1 ? sign_of_parity(after) : 1;
}

// Deleting edge j after moving it to the end; only even flavors order edges.
inline int remove_edge(LabeledGraph& g, int j, int n) {
    const int after = g.e() - 1 - j;
    g.edges.erase(g.edges.begin() + j);
    return n == 0 ? sign_of_parity(after) : 1;
}

// Deleting an unreferenced vertex x after moving it to the end; only odd flavors order vertices.
// trailing counts the odd hairs it also has to pass.
inline int remove_vertex(LabeledGraph& g, int x, int n, int trailing = 0) {
    for (Edge& ed : g.edges) {
        if (ed.tail == x || ed.head == x) throw std::logic_error("removing a vertex that still has edges");
        if (ed.tail > x) --ed.tail;
        if (ed.head > x) --ed.head;
    }
    for (int& y : g.hairs) {
        if (y == x) throw std::logic_error("removing a vertex that still has hairs");
        if (y > x) --y;
    }
    const int after = g.v - 1 - x + trailing;
    --g.v;
    return n == 1 ? sign_of_parity(after) : 1;
}

// Moves every edge end at x to another vertex, in all ways avoiding tadpoles and the
// excluded vertices. Edge labels and directions are kept.
inline void reconnect(const LabeledGraph& g, int x, const std::vector<int>& excluded,
                      const std::function<void(LabeledGraph&)>& emit) {
    std::vector<int> ends;
    for (int j = 0; j < g.e(); ++j)
        if (g.edges[static_cast<std::size_t>(j)].tail == x || g.edges[static_cast<std::size_t>(j)].head == x)
            ends.push_back(j);
    std::vector<char> allowed(static_cast<std::size_t>(g.v), 1);
    allowed[static_cast<std::size_t>(x)] = 0;
    for (int y : excluded) allowed[static_cast<std::size_t>(y)] = 0;
    LabeledGraph work = g;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == ends.size()) {
            LabeledGraph copy = work;
            emit(copy);
            return;
        }
        const int j = ends[k];
        Edge& ed = work.edges[static_cast<std::size_t>(j)];
        const bool tail_side = g.edges[static_cast<std::size_t>(j)].tail == x;
        const int other = tail_side ? g.edges[static_cast<std::size_t>(j)].head : g.edges[static_cast<std::size_t>(j)].tail;
        for (int w = 0; w < g.v; ++w) {
            if (!allowed[static_cast<std::size_t>(w)] || w == other) continue;
            if (tail_side) ed.tail = w; else ed.head = w;
            rec(k + 1);
        }
        if (tail_side) ed.tail = x; else ed.head = x;
    };
    rec(0);
}

inline std::vector<int> items_at(const std::vector<Edge>& edges, int x, std::vector<int>& end_is_tail) {
    std::vector<int> out;
    end_is_tail.clear();
    for (int j = 0; j < static_cast<int>(edges.size()); ++j) {
        if (edges[static_cast<std::size_t>(j)].tail == x) {
            out.push_back(j);
            end_is_tail.push_back(1);
        } else if (edges[static_cast<std::size_t>(j)].head == x) {
            out.push_back(j);
            end_is_tail.push_back(0);
        }
    }
    return out;
}

}  // namespace detail

// delta = sum_x 1/2 s_x - a_x - h(x) e_x
inline void delta_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    const Rational cv = out.flavor().n == 1 && out.flavor().kind == Kind::hairy && g.h() % 2 ? Rational(-c) : c;
    const Rational half = cv / 2;
    std::vector<int> tails;
    for (int x = 0; x < g.v; ++x) {
        const std::vector<int> ends = detail::items_at(g.edges, x, tails);
        std::vector<int> hair_ids;
        for (int j = 0; j < g.h(); ++j)
            if (g.hairs[static_cast<std::size_t>(j)] == x) hair_ids.push_back(j);
        const int items = static_cast<int>(ends.size() + hair_ids.size());
        const int z = g.v;
        for (long mask = 0; mask < (1L << items); ++mask) {
            LabeledGraph s = g;
            s.v = g.v + 1;
            for (int i = 0; i < items; ++i) {
                if (!(mask >> i & 1)) continue;
                if (i < static_cast<int>(ends.size())) {
                    Edge& ed = s.edges[static_cast<std::size_t>(ends[static_cast<std::size_t>(i)])];
                    if (tails[static_cast<std::size_t>(i)]) ed.tail = z; else ed.head = z;
                } else {
                    s.hairs[static_cast<std::size_t>(hair_ids[static_cast<std::size_t>(i) - ends.size()])] = z;
                }
            }
            s.edges.push_back({x, z});
            out.add(s, half);
        }
        LabeledGraph a = g;
        a.v = g.v + 1;
        a.edges.push_back({x, z});
        out.add(a, -cv);
        for (int j : hair_ids) {
            LabeledGraph ex = g;
            ex.v = g.v + 1;
            ex.hairs[static_cast<std::size_t>(j)] = z;
            ex.edges.push_back({x, z});
            out.add(ex, -cv);
        }
    }
}

inline void nabla_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    if (out.flavor().n != 0 || out.flavor().kind != Kind::plain)
        throw std::invalid_argument("nabla is defined on the even plain flavor");
    for (int x = 0; x < g.v; ++x)
        for (int y = 0; y < g.v; ++y) {
            if (x == y) continue;
            LabeledGraph s = g;
            s.edges.push_back({x, y});
            out.add(s, c);
        }
}

inline void Delta_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    const int n = out.flavor().n;
    for (int j = 0; j < g.h(); ++j) {
        const int x = g.hairs[static_cast<std::size_t>(j)];
        LabeledGraph base = g;
        const int sgn = detail::remove_hair(base, j, n);
        for (int y = 0; y < g.v; ++y) {
            if (y == x) continue;
            LabeledGraph s = base;
            s.edges.push_back({x, y});
            out.add(s, sgn > 0 ? c : Rational(-c));
        }
    }
}

// D = sum_x (-1)^{v(x)} (delete x, reconnect its edges)
inline void D_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    if (g.h() > 0) throw std::invalid_argument("D is defined on plain graphs");
    const int n = out.flavor().n;
    const std::vector<int> val = g.valences();
    for (int x = 0; x < g.v; ++x) {
        if (g.v == 1) break;
        const Rational cx = val[static_cast<std::size_t>(x)] % 2 ? Rational(-c) : c;
        detail::reconnect(g, x, {}, [&](LabeledGraph& r) {
            const int s = detail::remove_vertex(r, x, n);
            out.add(r, s > 0 ? cx : Rational(-cx));
        });
    }
}

// One-hair graphs only; other terms map to zero. Output is plain.
inline void D1_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    if (g.h() != 1 || g.v < 2) return;
    const int n = out.flavor().n;
    const int x = g.hairs[0];
    const int val = g.valences()[static_cast<std::size_t>(x)];
    LabeledGraph base = g;
    detail::remove_hair(base, 0, n);
    const Rational cx = val % 2 ? Rational(-c) : c;
    detail::reconnect(base, x, {}, [&](LabeledGraph& r) {
        const int s = detail::remove_vertex(r, x, n, 1);
        out.add(r, s > 0 ? cx : Rational(-cx));
    });
}

// Pushing the hair: one-hair graphs whose hairy vertex has an edge.
inline void Dp_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    if (g.h() != 1) return;
    const int n = out.flavor().n;
    const int x = g.hairs[0];
    const int val = g.valences()[static_cast<std::size_t>(x)];
    if (val < 2) throw std::domain_error("pushing the hair needs a hairy vertex of valence at least 2");
    Rational cx = c / (val - 1);
    if (val % 2) cx = -cx;
    for (int j = 0; j < g.e(); ++j) {
        const Edge ed = g.edges[static_cast<std::size_t>(j)];
        if (ed.tail != x && ed.head != x) continue;
        const int y = ed.tail == x ? ed.head : ed.tail;
        LabeledGraph base = g;
        detail::remove_hair(base, 0, n);
        int sgn = 1;
        if (n == 1 && ed.tail == x) sgn = -sgn;  // orient the removed edge towards x
        sgn *= detail::remove_edge(base, j, n);
        detail::reconnect(base, x, {}, [&](LabeledGraph& r) {
            const int s = sgn * detail::remove_vertex(r, x, n, 1);
            r.hairs.push_back(y > x ? y - 1 : y);
            out.add(r, s > 0 ? cx : Rational(-cx));
        });
    }
}

// Flower deletion, even flavor: both hairs on a 3-valent vertex y joined to x.
inline void D2_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    const int n = out.flavor().n;
    if (n != 0) throw std::invalid_argument("D2 is defined on the even hairy flavor");
    if (g.h() != 2 || g.hairs[0] != g.hairs[1]) return;
    const int y = g.hairs[0];
    const std::vector<int> deg = g.edge_degrees();
    if (deg[static_cast<std::size_t>(y)] != 1) return;
    int j = 0;
    while (g.edges[static_cast<std::size_t>(j)].tail != y && g.edges[static_cast<std::size_t>(j)].head != y) ++j;
    const Edge ed = g.edges[static_cast<std::size_t>(j)];
    const int x = ed.tail == y ? ed.head : ed.tail;
    const int val = g.valences()[static_cast<std::size_t>(x)];
    LabeledGraph base = g;
    base.hairs.clear();
    const int sgn = detail::remove_edge(base, j, n);
    const int total = (val % 2 ? -1 : 1) * sgn;
    const Rational cx = total > 0 ? c : Rational(-c);
    detail::reconnect(base, x, {y}, [&](LabeledGraph& r) {
        detail::remove_vertex(r, std::max(x, y), n);
        detail::remove_vertex(r, std::min(x, y), n);
        out.add(r, cx);
    });
}

// c = sum_x h(x) c_x: a hair becomes an antenna.
inline void c_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    const int n = out.flavor().n;
    for (int j = 0; j < g.h(); ++j) {
        const int x = g.hairs[static_cast<std::size_t>(j)];
        LabeledGraph s = g;
        int sgn = detail::remove_hair(s, j, n);
        if (n == 1 && s.h() % 2) sgn = -sgn;
        s.v = g.v + 1;
        s.edges.push_back({x, g.v});
        out.add(s, sgn > 0 ? c : Rational(-c));
    }
}

inline void chi1_into(const LabeledGraph& g, const Rational& c, GraphVector& out) {
    for (int x = 0; x < g.v; ++x) {
        LabeledGraph s = g;
        s.hairs.push_back(x);
        out.add(s, c);
    }
}

}  // namespace gcx
