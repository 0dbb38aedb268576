#pragma once

// Gradings, graded pieces, cohomology dimensions, identity checks and Euler checks.
//
// A complex is a list of summands. A basis summand is spanned by the graphs of one
// ComplexSpec; an image summand is op(source) inside an ambient spec, slice by slice (the
// HL pieces of the H-flat complexes). Plain summands inside a hairy complex carry a degree
// shift, as in fHGC (+) fGC[-3].
//
// Differentials raise the degree by one. The piece at degree d under a grading is a finite
// sum of slices; combinations with infinitely many slices are rejected.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "assemble.hpp"
#include "elements.hpp"

namespace gcx {

enum class GradingKind { b, v, f, va, hb, bpar };

inline const char* to_string(GradingKind k) {
    switch (k) {
        case GradingKind::b: return "b";
        case GradingKind::v: return "v";
        case GradingKind::f: return "f";
        case GradingKind::va: return "va";
        case GradingKind::hb: return "hb";
        case GradingKind::bpar: return "bpar";
    }
    return "?";
}

struct Grading {
    GradingKind kind = GradingKind::b;
    int b = 0, v = 0, f = 0, a = 0, h = 0;
    // Keep only slices with at most vmax vertices. Valid as a quotient complex when the
    // differential never lowers v; checked by cohomology().
    std::optional<int> vmax;

    static Grading by_b(int b) {
        Grading g;
        g.b = b;
        return g;
    }
    static Grading by_v(int v) {
        Grading g;
        g.kind = GradingKind::v;
        g.v = v;
        return g;
    }
    static Grading by_f(int f, std::optional<int> vmax = std::nullopt) {
        Grading g;
        g.kind = GradingKind::f;
        g.f = f;
        g.vmax = vmax;
        return g;
    }
    static Grading by_va(int v, int a) {
        Grading g;
        g.kind = GradingKind::va;
        g.v = v;
        g.a = a;
        return g;
    }
    static Grading by_hb(int h, int b) {
        Grading g;
        g.kind = GradingKind::hb;
        g.h = h;
        g.b = b;
        return g;
    }
    static Grading by_bpar(int b_mod_2, std::optional<int> vmax = std::nullopt) {
        Grading g;
        g.kind = GradingKind::bpar;
        g.b = ((b_mod_2 % 2) + 2) % 2;
        g.vmax = vmax;
        return g;
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case GradingKind::b: os << "b=" << b; break;
            case GradingKind::v: os << "v=" << v; break;
            case GradingKind::f: os << "f=" << f; break;
            case GradingKind::va: os << "v=" << v << ",a=" << a; break;
            case GradingKind::hb: os << "h=" << h << ",b=" << b; break;
            case GradingKind::bpar: os << "b%2=" << b; break;
        }
        if (vmax) os << ",vmax=" << *vmax;
        return os.str();
    }

    // Whether a signature keeps the graded quantity fixed.
    bool preserved_by(const Shift& s) const {
        switch (kind) {
            case GradingKind::b: return s.de - s.dv == 0;
            case GradingKind::v: return s.dv == 0;
            case GradingKind::f: return s.de + s.dh - s.dv == 0;
            case GradingKind::va: return s.dv == 0 && s.de + s.dh == 0;
            case GradingKind::hb: return s.dh == 0 && s.de - s.dv == 0;
            case GradingKind::bpar: return (s.de - s.dv) % 2 == 0;
        }
        return false;
    }
};

struct Summand {
    ComplexSpec spec;
    int degree_shift = 0;   // plain summands inside a hairy complex, and plain parts of images
    int fixed_hairs = -1;   // H^k prefix when >= 0
    // image summands: op(source) at degree d is spanned by op of the source piece at d - 1;
    // hairy terms lie in spec, plain terms in plain_ambient
    bool image = false;
    ComplexSpec source;
    int source_hairs = -1;
    OperatorExpr op;
    std::optional<ComplexSpec> plain_ambient;

    static Summand basis(const ComplexSpec& s, int shift = 0) {
        Summand m;
        m.spec = s;
        m.degree_shift = shift;
        return m;
    }
    static Summand image_of(const OperatorExpr& op, const ComplexSpec& source, int source_hairs,
                            const ComplexSpec& ambient, std::optional<ComplexSpec> plain_ambient = std::nullopt,
                            int plain_shift = 0) {
        Summand m;
        m.spec = ambient;
        m.image = true;
        m.source = source;
        m.source_hairs = source_hairs;
        m.op = op;
        m.plain_ambient = std::move(plain_ambient);
        m.degree_shift = plain_shift;
        return m;
    }
};

struct ComplexDef {
    std::string name;
    std::vector<Summand> summands;

    static ComplexDef of(const ComplexSpec& s, std::string name = {}) {
        ComplexDef c;
        c.name = name.empty() ? to_string(s) : std::move(name);
        c.summands.push_back(Summand::basis(s));
        return c;
    }
    int parity() const {
        if (summands.empty()) throw std::invalid_argument("complex without summands");
        return summands.front().spec.n;
    }
};

inline int summand_degree(const Summand& m, const GradedSlice& s) {
    return degree(m.spec, s) + (m.spec.kind == Kind::plain ? m.degree_shift : 0);
}

// Largest vertex count that can occur at fixed e (and fixed alpha = h - v for hairy
// specs), from connectivity, valence and the forbidden components; nullopt when unbounded.
inline std::optional<int> natural_vertex_bound(const ComplexSpec& spec, int e, std::optional<int> alpha) {
    std::optional<int> best;
    auto take = [&](long x) {
        const int y = static_cast<int>(std::max(0L, x));
        if (!best || y < *best) best = y;
    };
    if (spec.connectivity == Connectivity::connected) take(e + 1);
    if (spec.kind == Kind::plain) {
        if (spec.min_valence >= 1) take(2L * e);
        return best;
    }
    if (spec.max_components > 0 && spec.all_components_forbidden) take(2L * spec.max_components);
    if (!alpha) return best;
    // sum of valences 2e + h >= mv * v
    if (spec.min_valence >= 2) take((2L * e + *alpha) / (spec.min_valence - 1));
    // without sigma_1 and lambda_2 components: components with edges have h_c - v_c >= -2 e_c,
    // edgeless ones are stars with >= 2 hairs, so #stars <= alpha + 2e and v <= 4e + alpha
    const bool no_small = spec.constraint == Constraint::ddagger || spec.constraint == Constraint::dagger_ddagger;
    if (no_small && spec.min_valence >= 1) take(4L * e + *alpha);
    return best;
}

namespace detail {

inline void push_slice(std::vector<GradedSlice>& out, const ComplexSpec& spec, GradedSlice s) {
    if (s.v < 1 || s.e < 0 || s.h < 0) return;
    if (spec.kind == Kind::plain && s.h != 0) return;
    out.push_back(s);
}

[[noreturn]] inline void infinite(const ComplexSpec& spec, const Grading& g) {
    throw std::invalid_argument("grading " + g.describe() + " on " + to_string(spec) +
                                " has infinitely many slices per degree; add a vertex bound or constraint");
}

}  // namespace detail

// Slices of one basis summand at degree d.
inline std::vector<GradedSlice> slices_at(const Summand& m, const Grading& g, int d) {
    const ComplexSpec& spec = m.spec;
    const int n = spec.n;
    const int dd = d - (spec.kind == Kind::plain ? m.degree_shift : 0);
    std::vector<GradedSlice> out;
    auto vrange = [&](int e, std::optional<int> alpha, const std::function<void(int)>& each) {
        std::optional<int> bound = natural_vertex_bound(spec, e, alpha);
        if (g.vmax) bound = bound ? std::min(*bound, *g.vmax) : *g.vmax;
        if (!bound) detail::infinite(spec, g);
        for (int v = 1; v <= *bound; ++v) each(v);
    };
    if (spec.kind == Kind::plain) {
        switch (g.kind) {
            case GradingKind::b:
            case GradingKind::f:
            case GradingKind::hb: {
                if (g.kind == GradingKind::hb && g.h != 0) break;
                const int b = g.kind == GradingKind::f ? g.f : g.b;
                if (n == 0) detail::push_slice(out, spec, {dd - b, dd, 0});
                else detail::push_slice(out, spec, {dd + 1, dd + 1 + b, 0});
                break;
            }
            case GradingKind::v:
                if (n == 1) detail::infinite(spec, g);
                detail::push_slice(out, spec, {g.v, dd, 0});
                break;
            case GradingKind::va:
                if (degree(spec, {g.v, g.a, 0}) == dd) detail::push_slice(out, spec, {g.v, g.a, 0});
                break;
            case GradingKind::bpar:
                if (n != 0) throw std::invalid_argument("the b-parity grading is for even plain graphs");
                vrange(dd, std::nullopt, [&](int v) {
                    if (((dd - v - g.b) % 2 + 2) % 2 == 0) detail::push_slice(out, spec, {v, dd, 0});
                });
                break;
        }
    } else {
        switch (g.kind) {
            case GradingKind::f: {
                const int e = n == 0 ? dd - 1 : g.f + dd - 1;
                const int alpha = n == 0 ? g.f - e : 1 - dd;
                if (e < 0) break;
                if (m.fixed_hairs >= 0) detail::push_slice(out, spec, {m.fixed_hairs - alpha, e, m.fixed_hairs});
                else vrange(e, alpha, [&](int v) { detail::push_slice(out, spec, {v, e, v + alpha}); });
                break;
            }
            case GradingKind::va:
                if (n == 0) detail::push_slice(out, spec, {g.v, dd - 1, g.a - (dd - 1)});
                else {
                    const int h = g.v + 1 - dd;
                    detail::push_slice(out, spec, {g.v, g.a - h, h});
                }
                break;
            case GradingKind::hb:
                if (n == 0) detail::push_slice(out, spec, {dd - 1 - g.b, dd - 1, g.h});
                else {
                    const int v = dd - 1 + g.h;
                    detail::push_slice(out, spec, {v, v + g.b, g.h});
                }
                break;
            case GradingKind::b:
            case GradingKind::v:
            case GradingKind::bpar: detail::infinite(spec, g);
        }
    }
    std::vector<GradedSlice> kept;
    for (const GradedSlice& s : out) {
        if (g.vmax && s.v > *g.vmax) continue;
        if (m.fixed_hairs >= 0 && s.h != m.fixed_hairs) continue;
        if (summand_degree(m, s) != d) throw std::logic_error("slice degree mismatch in grading");
        if (slice_feasible(spec, s)) kept.push_back(s);
    }
    return kept;
}

namespace detail {

inline Summand source_summand(const Summand& m) {
    Summand src = Summand::basis(m.source);
    src.fixed_hairs = m.source_hairs;
    return src;
}

// Image block of an image summand at degree d: op applied to the source piece at d - 1,
// projected to the ambient specs, reduced to an independent set.
inline std::optional<Block> image_block(const Summand& m, const Grading& g, int d) {
    Spot src;
    for (const GradedSlice& s : slices_at(source_summand(m), g, d - 1))
        for (Block& b : basis_spot(m.source, s)) src.push_back(std::move(b));
    if (src.empty()) return std::nullopt;
    const int n = m.spec.n;
    const int cols = spot_dim(src);
    std::vector<AugmentedVector> imgs(static_cast<std::size_t>(cols));
    std::map<std::pair<Kind, std::string>, int> rows;
    std::vector<Triplet> entries;
    for (int j = 0; j < cols; ++j) {
        const AugmentedVector y = m.op.apply(spot_column(src, j, n));
        AugmentedVector z(n);
        for (const auto& [t, c] : y.hairy_part.terms())
            if (constraint_filter(decode(t), m.spec)) z.hairy_part.add(t, c);
        if (m.plain_ambient)
            for (const auto& [t, c] : y.extra_part.terms())
                if (constraint_filter(decode(t), *m.plain_ambient)) z.extra_part.add(t, c);
        for (const GraphVector* part : {&z.hairy_part, &z.extra_part})
            for (const auto& [t, c] : part->terms()) {
                const int deg = t.flavor.kind == Kind::plain ? degree(*m.plain_ambient, t.slice) + m.degree_shift
                                                             : degree(m.spec, t.slice);
                if (deg != d) throw std::logic_error("image summand term of the wrong degree");
                auto [it, inserted] = rows.try_emplace({t.flavor.kind, t.encoding}, static_cast<int>(rows.size()));
                entries.push_back({it->second, j, c});
            }
        imgs[static_cast<std::size_t>(j)] = std::move(z);
    }
    SparseMatrix mat(static_cast<int>(rows.size()), cols);
    for (const Triplet& t : entries) mat.add(t.row, t.col, t.value);
    mat.normalize();
    const RankResult r = rank_details(mat);
    if (r.rank == 0) return std::nullopt;
    Block blk;
    blk.spec = m.spec;
    blk.image = true;
    if (m.plain_ambient) blk.plain_spec = *m.plain_ambient;
    std::set<std::pair<int, GradedSlice>> parts;
    for (int j : r.pivot_columns) {
        const AugmentedVector& z = imgs[static_cast<std::size_t>(j)];
        for (const GraphVector* part : {&z.hairy_part, &z.extra_part})
            for (const auto& [t, c] : part->terms()) parts.insert({static_cast<int>(t.flavor.kind), t.slice});
        blk.vectors.push_back(z);
    }
    for (const auto& [k, sl] : parts) blk.parts.emplace_back(static_cast<Kind>(k), sl);
    return blk;
}

}  // namespace detail

inline Spot spot_at(const ComplexDef& c, const Grading& g, int d) {
    Spot spot;
    for (const Summand& m : c.summands) {
        if (m.image) {
            if (auto blk = detail::image_block(m, g, d)) spot.push_back(std::move(*blk));
            continue;
        }
        for (const GradedSlice& s : slices_at(m, g, d)) {
            for (Block& b : basis_spot(m.spec, s)) spot.push_back(std::move(b));
        }
    }
    return spot;
}

struct CohomologyOptions {
    RankOptions rank;
    AssembleOptions assemble;
    long max_basis = 2'000'000;
};

struct CohomologyReport {
    std::string complex;
    std::string grading;
    std::string differential;
    int degree = 0;
    int dim = 0;
    int rank_in = 0;
    int rank_out = 0;
    int H = 0;
};

// Checks that every term of the differential raises the degree by one and keeps the
// grading; a vertex cap additionally needs a differential that never lowers v.
inline void check_differential(const ComplexDef& c, const OperatorExpr& diff, const Grading& g) {
    const std::set<Shift> sig = diff.signatures();
    // kind-changing terms (H^0 into the plain summand) are not visible per summand
    bool mixed = false;
    for (const Summand& m : c.summands)
        mixed = mixed || m.spec.kind != c.summands.front().spec.kind || m.plain_ambient.has_value();
    for (const Shift& s : sig) {
        if (!g.preserved_by(s))
            throw std::invalid_argument("differential " + diff.to_string() + " does not preserve grading " + g.describe());
        if (g.vmax && s.dv < 0)
            throw std::invalid_argument("vertex cap needs a differential that never lowers v; " + diff.to_string() +
                                        " does");
        if (mixed) continue;
        for (const Summand& m : c.summands) {
            const GradedSlice base{6, 6, m.spec.kind == Kind::plain ? 0 : 6};
            const GradedSlice next = apply_shift(base, s);
            if (m.spec.kind == Kind::plain && s.dh != 0) continue;
            if (summand_degree(m, next) != summand_degree(m, base) + 1)
                throw std::invalid_argument("differential " + diff.to_string() + " does not raise the degree of " +
                                            to_string(m.spec) + " by one");
        }
    }
}

namespace detail {

inline void guard_size(const Spot& s, const CohomologyOptions& opt) {
    if (spot_dim(s) > opt.max_basis)
        throw std::runtime_error("graded piece of dimension " + std::to_string(spot_dim(s)) + " exceeds the limit " +
                                 std::to_string(opt.max_basis));
}

}  // namespace detail

inline int differential_rank(const OperatorExpr& diff, const Spot& a, const Spot& b, const CohomologyOptions& opt) {
    if (spot_dim(a) == 0 || spot_dim(b) == 0) return 0;
    return rank(assemble_matrix(diff, a, b, opt.assemble), opt.rank);
}

inline CohomologyReport cohomology(const ComplexDef& c, const OperatorExpr& diff, const Grading& g, int d,
                                   const CohomologyOptions& opt = {}) {
    check_differential(c, diff, g);
    const Spot prev = spot_at(c, g, d - 1);
    const Spot here = spot_at(c, g, d);
    CohomologyReport r{c.name, g.describe(), diff.to_string(), d, spot_dim(here), 0, 0, 0};
    if (r.dim == 0) return r;
    const Spot next = spot_at(c, g, d + 1);
    detail::guard_size(prev, opt);
    detail::guard_size(here, opt);
    detail::guard_size(next, opt);
    r.rank_in = differential_rank(diff, prev, here, opt);
    r.rank_out = differential_rank(diff, here, next, opt);
    r.H = r.dim - r.rank_in - r.rank_out;
    if (r.H < 0) throw std::logic_error("negative cohomology; the operator is not a differential here");
    return r;
}

// Cohomology of the chain truncated to degrees lo..hi, with the Euler characteristic compared
// on both sides.
struct EulerReport {
    bool ok = true;
    long chi_dims = 0;
    long chi_H = 0;
    std::vector<CohomologyReport> degrees;
};

inline EulerReport euler_check(const ComplexDef& c, const OperatorExpr& diff, const Grading& g, int lo, int hi,
                               const CohomologyOptions& opt = {}) {
    check_differential(c, diff, g);
    EulerReport rep;
    std::vector<Spot> spots;
    for (int d = lo; d <= hi; ++d) {
        spots.push_back(spot_at(c, g, d));
        detail::guard_size(spots.back(), opt);
    }
    std::vector<int> ranks;
    for (int d = lo; d < hi; ++d)
        ranks.push_back(differential_rank(diff, spots[static_cast<std::size_t>(d - lo)],
                                          spots[static_cast<std::size_t>(d - lo + 1)], opt));
    for (int d = lo; d <= hi; ++d) {
        const std::size_t i = static_cast<std::size_t>(d - lo);
        CohomologyReport r{c.name, g.describe(), diff.to_string(), d, spot_dim(spots[i]), 0, 0, 0};
        r.rank_in = d > lo ? ranks[i - 1] : 0;
        r.rank_out = d < hi ? ranks[i] : 0;
        r.H = r.dim - r.rank_in - r.rank_out;
        const long sign = (d % 2 == 0) ? 1 : -1;
        rep.chi_dims += sign * r.dim;
        rep.chi_H += sign * r.H;
        if (r.H < 0 || r.rank_in > r.dim || r.rank_out > r.dim) rep.ok = false;
        rep.degrees.push_back(r);
    }
    rep.ok = rep.ok && rep.chi_dims == rep.chi_H;
    return rep;
}

// ---- identities ----

struct Witness {
    GradedSlice slice;
    std::string graph;
    std::string lhs;
    std::string rhs;
};

struct IdentityReport {
    std::string lhs;
    std::string rhs;
    std::string domain;
    int checked = 0;
    bool verified = true;
    std::optional<Witness> witness;
};

struct VerifyOptions {
    // Terms outside this spec are dropped from both sides (plain terms are checked against
    // the plain version of it).
    std::optional<ComplexSpec> project_to;
    // Hairless hairy terms are identified with plain graphs before comparing.
    bool identify_hairless = false;
    bool parallel = true;
};

namespace detail {

inline GraphVector project_terms(const GraphVector& x, const ComplexSpec& spec) {
    GraphVector out(x.flavor());
    ComplexSpec s = spec;
    s.kind = x.flavor().kind;
    if (s.kind == Kind::plain) s.min_hairs = 0;
    for (const auto& [g, c] : x.terms())
        if (constraint_filter(decode(g), s)) out.add(g, c);
    return out;
}

inline AugmentedVector normalize_sides(AugmentedVector x, const VerifyOptions& opt) {
    if (opt.identify_hairless) {
        GraphVector hairy(x.hairy_part.flavor());
        for (const auto& [g, c] : x.hairy_part.terms()) {
            if (g.slice.h == 0) {
                CanonicalGraph p = g;
                p.flavor.kind = Kind::plain;
                x.extra_part.add(p, c);
            } else {
                hairy.add(g, c);
            }
        }
        x.hairy_part = std::move(hairy);
    }
    if (opt.project_to) {
        x.hairy_part = project_terms(x.hairy_part, *opt.project_to);
        x.extra_part = project_terms(x.extra_part, *opt.project_to);
    }
    return x;
}

inline std::string describe(const AugmentedVector& x) {
    if (x.extra_part.empty()) return gcx::describe(x.hairy_part);
    if (x.hairy_part.empty()) return "plain: " + gcx::describe(x.extra_part);
    return gcx::describe(x.hairy_part) + " | plain: " + gcx::describe(x.extra_part);
}

}  // namespace detail

// Compares both sides on every basis element of the given slices of domain.
inline IdentityReport verify_identity(const OperatorExpr& lhs, const OperatorExpr& rhs, const ComplexSpec& domain,
                                      const std::vector<GradedSlice>& slices, const VerifyOptions& opt = {}) {
    const std::set<Shift> sl = lhs.signatures(), sr = rhs.signatures();
    if (!sl.empty() && !sr.empty() && sl != sr)
        throw std::invalid_argument("identity sides have different signatures: " + lhs.to_string() + " vs " +
                                    rhs.to_string());
    IdentityReport rep{lhs.to_string(), rhs.to_string(), to_string(domain), 0, true, std::nullopt};
    for (const GradedSlice& s : slices) {
        const Basis& basis = enumerate_basis(domain, s);
        const int m = basis.size();
        std::vector<char> bad(static_cast<std::size_t>(m), 0);
        std::vector<std::pair<AugmentedVector, AugmentedVector>> sides(static_cast<std::size_t>(m));
        auto work = [&](int j) {
            AugmentedVector x(domain.n);
            if (domain.kind == Kind::plain) x.extra_part = single(basis.elements[static_cast<std::size_t>(j)]);
            else x.hairy_part = single(basis.elements[static_cast<std::size_t>(j)]);
            AugmentedVector a = detail::normalize_sides(lhs.apply(x), opt);
            AugmentedVector b = detail::normalize_sides(rhs.apply(x), opt);
            if (!(a == b)) {
                bad[static_cast<std::size_t>(j)] = 1;
                sides[static_cast<std::size_t>(j)] = {std::move(a), std::move(b)};
            }
        };
        if (opt.parallel && m > 1) tbb::parallel_for(0, m, work);
        else
            for (int j = 0; j < m; ++j) work(j);
        rep.checked += m;
        for (int j = 0; j < m; ++j) {
            if (!bad[static_cast<std::size_t>(j)]) continue;
            rep.verified = false;
            rep.witness = Witness{s, describe(basis.elements[static_cast<std::size_t>(j)]),
                                  detail::describe(sides[static_cast<std::size_t>(j)].first),
                                  detail::describe(sides[static_cast<std::size_t>(j)].second)};
            return rep;
        }
    }
    return rep;
}

// All slices of a spec with e <= emax, h <= hmax (0 for plain), v <= vmax and a nonempty basis.
inline std::vector<GradedSlice> nonempty_slices(const ComplexSpec& spec, int emax, int hmax, int vmax) {
    std::vector<GradedSlice> out;
    const int hm = spec.kind == Kind::plain ? 0 : hmax;
    for (int e = 0; e <= emax; ++e)
        for (int v = 1; v <= vmax; ++v)
            for (int h = 0; h <= hm; ++h) {
                const GradedSlice s{v, e, h};
                if (slice_feasible(spec, s) && enumerate_basis(spec, s).size() > 0) out.push_back(s);
            }
    return out;
}

// ---- report formats ----

inline std::string csv_header() { return "complex,grading,differential,degree,dim,rank_in,rank_out,H"; }

inline std::string csv_row(const CohomologyReport& r) {
    std::ostringstream os;
    os << '"' << r.complex << "\",\"" << r.grading << "\",\"" << r.differential << "\"," << r.degree << ',' << r.dim
       << ',' << r.rank_in << ',' << r.rank_out << ',' << r.H;
    return os.str();
}

}  // namespace gcx
