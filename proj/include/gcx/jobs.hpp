#pragma once

// Batch jobs behind the command line: each cmd_* writes a report to a stream and returns
// the exit code (0 ok, 1 mathematical discrepancy). Usage and resource errors are thrown
// as JobError and mapped to 2 by the caller.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "identities.hpp"
#include "io.hpp"
#include "lemmas.hpp"

namespace gcx {

struct JobError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntRange {
    int lo = 0;
    int hi = 0;
    bool contains(int x) const { return lo <= x && x <= hi; }
};

// "3" or "lo:hi"
inline IntRange parse_range(const std::string& text) {
    try {
        const auto colon = text.find(':');
        std::size_t used = 0;
        if (colon == std::string::npos) {
            const int x = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {x, x};
        }
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        IntRange r{std::stoi(a, &used), 0};
        if (used != a.size()) throw std::invalid_argument(text);
        r.hi = std::stoi(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        if (r.hi < r.lo) throw JobError("empty range: " + text);
        return r;
    } catch (const JobError&) {
        throw;
    } catch (const std::exception&) {
        throw JobError("bad integer or range: " + text);
    }
}

struct JobConfig {
    std::string verb;

    // complex: a preset, then overrides
    std::string complex = "fGC";
    std::optional<std::string> kind;
    std::optional<int> n;
    std::optional<int> m;
    std::optional<int> minval;
    std::optional<std::string> constraint;
    bool connected = false;
    bool disconnected = false;
    std::optional<int> min_hairs;
    std::optional<int> max_components;

    // slices and gradings; each accepts "k" or "lo:hi"
    std::optional<std::string> v, e, h, b, f, a;
    std::optional<int> emax, hmax, vmax;
    std::optional<int> dmin, dmax;
    std::optional<int> vertex_cap;
    std::string grading;  // b|v|f|va|hb, empty to infer

    std::string diff = "delta";
    std::string op;
    bool target_plain = false;
    bool list = false;

    std::string suite;
    std::string identity;

    std::string lemma;
    std::string element;
    int param = 0;
    std::optional<int> mmax, amax, kmax, steps;

    std::string action = "stats";
    std::optional<int> expect_total;

    std::string format = "csv";
    std::string cache_dir;
    std::uint64_t seed = 0x5eed;
    int threads = 0;
    long max_basis = 2'000'000;
    long max_nonzeros = 50'000'000;
    int max_edges = 12;
};

// ---- complex presets ----

inline ComplexSpec preset_spec(const std::string& name) {
    ComplexSpec s;
    if (name == "fGC") return s;
    if (name == "fGCc") {
        s.connectivity = Connectivity::connected;
        return s;
    }
    s.kind = Kind::hairy;
    s.min_valence = 1;
    if (name == "fHGC") return s;
    if (name == "HGC") {
        s.min_valence = 3;
        s.connectivity = Connectivity::connected;
        s.min_hairs = 1;
        return s;
    }
    if (name == "UR") {
        s.all_components_forbidden = true;
        return s;
    }
    if (name == "bHGCc") {
        s.connectivity = Connectivity::connected;
        s.constraint = Constraint::ddagger;
        s.min_hairs = 1;
        return s;
    }
    throw JobError("unknown complex preset: " + name + " (fGC, fGCc, fHGC, HGC, UR, bHGCc)");
}

inline Constraint parse_constraint(const std::string& s) {
    for (Constraint c : {Constraint::none, Constraint::dagger, Constraint::ddagger, Constraint::dagger_ddagger,
                         Constraint::star})
        if (s == to_string(c)) return c;
    throw JobError("unknown constraint: " + s);
}

inline ComplexSpec job_spec(const JobConfig& cfg) {
    ComplexSpec s = preset_spec(cfg.complex);
    if (cfg.kind) {
        if (*cfg.kind == "plain") {
            s.kind = Kind::plain;
            s.min_hairs = 0;
        } else if (*cfg.kind == "hairy") {
            s.kind = Kind::hairy;
        } else {
            throw JobError("kind must be plain or hairy");
        }
    }
    if (cfg.n) s.n = ((*cfg.n % 2) + 2) % 2;
    if (cfg.m && s.kind == Kind::hairy && *cfg.m != -1) throw JobError("only m = -1 is implemented for hairy complexes");
    if (cfg.minval) s.min_valence = *cfg.minval;
    if (cfg.constraint) s.constraint = parse_constraint(*cfg.constraint);
    if (cfg.connected && cfg.disconnected) throw JobError("--connected and --disconnected exclude each other");
    if (cfg.connected) s.connectivity = Connectivity::connected;
    if (cfg.disconnected) s.connectivity = Connectivity::disconnected_only;
    if (cfg.min_hairs) s.min_hairs = *cfg.min_hairs;
    if (cfg.max_components) s.max_components = *cfg.max_components;
    try {
        s.validate();
    } catch (const std::invalid_argument& ex) {
        throw JobError(ex.what());
    }
    return s;
}

namespace detail {

inline void check_emax(const JobConfig& cfg, int emax) {
    if (emax > cfg.max_edges)
        throw JobError("edge bound " + std::to_string(emax) + " exceeds --max-edges " + std::to_string(cfg.max_edges));
}

inline CohomologyOptions job_options(const JobConfig& cfg) {
    CohomologyOptions o;
    o.rank.seed = cfg.seed;
    o.max_basis = cfg.max_basis;
    o.assemble.max_nonzeros = cfg.max_nonzeros;
    return o;
}

inline OperatorExpr parse_operator(const std::string& text) {
    try {
        return OperatorExpr::parse(text);
    } catch (const std::invalid_argument& ex) {
        throw JobError(ex.what());
    }
}

// Degree of the slices with e edges in a grading piece, when e alone determines it.
inline std::optional<int> degree_for_e(const ComplexSpec& spec, const Grading& g, int e) {
    if (spec.kind == Kind::plain) {
        std::optional<int> v;
        if (g.kind == GradingKind::b || g.kind == GradingKind::hb) v = e - g.b;
        if (g.kind == GradingKind::v || g.kind == GradingKind::va) v = g.v;
        if (g.kind == GradingKind::f) v = e - g.f;
        if (spec.n == 0) return e;
        if (!v) return std::nullopt;
        return *v - 1;
    }
    if (spec.n == 0) return e + 1;
    switch (g.kind) {
        case GradingKind::f: return e - g.f + 1;
        case GradingKind::va: return g.v + 1 - g.a + e;
        case GradingKind::hb: return e - g.b + 1 - g.h;
        default: return std::nullopt;
    }
}

inline void write_csv_or_json(std::ostream& out, const JobConfig& cfg, const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows, nlohmann::json extra = {}) {
    if (cfg.format == "json") {
        nlohmann::json j = std::move(extra);
        if (j.is_null()) j = nlohmann::json::object();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json o = nlohmann::json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                const std::string& x = r[i];
                const bool numeric = !x.empty() && (std::isdigit(static_cast<unsigned char>(x[0])) ||
                                                    (x[0] == '-' && x.size() > 1)) &&
                                     x.find_first_not_of("-0123456789") == std::string::npos;
                if (numeric) o[header[i]] = std::stol(x);
                else if (x == "true" || x == "false") o[header[i]] = x == "true";
                else o[header[i]] = x;
            }
            arr.push_back(std::move(o));
        }
        j["rows"] = std::move(arr);
        out << j.dump(2) << '\n';
        return;
    }
    if (cfg.format != "csv") throw JobError("format must be csv or json");
    auto quote = [](const std::string& x) {
        if (x.find_first_of(",\"") == std::string::npos) return x;
        std::string q = "\"";
        for (char c : x) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << quote(r[i]);
        out << '\n';
    }
}

}  // namespace detail

// ---- basis ----

inline int cmd_basis(const JobConfig& cfg, std::ostream& out) {
    const ComplexSpec spec = job_spec(cfg);
    const bool hairy = spec.kind == Kind::hairy;
    std::vector<GradedSlice> slices;
    if (cfg.v && cfg.e) {
        const IntRange vr = parse_range(*cfg.v), er = parse_range(*cfg.e);
        const IntRange hr = hairy ? parse_range(cfg.h.value_or("0")) : IntRange{0, 0};
        if (!hairy && cfg.h && parse_range(*cfg.h).hi > 0) throw JobError("plain complexes have no hairs");
        detail::check_emax(cfg, er.hi);
        for (int e = er.lo; e <= er.hi; ++e)
            for (int v = vr.lo; v <= vr.hi; ++v)
                for (int h = hr.lo; h <= hr.hi; ++h) slices.push_back({v, e, h});
    } else if (cfg.emax) {
        detail::check_emax(cfg, *cfg.emax);
        const int hmax = hairy ? cfg.hmax.value_or(0) : 0;
        const int vmax = cfg.vmax.value_or(identity_vmax(spec, *cfg.emax, hmax));
        slices = nonempty_slices(spec, *cfg.emax, hmax, vmax);
    } else {
        throw JobError("basis needs --v and --e, or --emax");
    }
    std::vector<std::vector<std::string>> rows;
    nlohmann::json listing = nlohmann::json::object();
    for (const GradedSlice& s : slices) {
        const bool feasible = s.v >= 0 && s.e >= 0 && s.h >= 0 && slice_feasible(spec, s);
        const int dim = feasible ? enumerate_basis(spec, s).size() : 0;
        if (dim > cfg.max_basis) throw JobError("basis of " + to_string(s) + " exceeds --max-basis");
        rows.push_back({std::to_string(s.v), std::to_string(s.e), std::to_string(s.h),
                        std::to_string(degree(spec, s)), std::to_string(dim)});
        if (cfg.list && dim > 0) {
            nlohmann::json arr = nlohmann::json::array();
            for (const CanonicalGraph& g : enumerate_basis(spec, s).elements) arr.push_back(describe(g));
            listing[to_string(s)] = std::move(arr);
        }
    }
    if (cfg.format == "csv") {
        detail::write_csv_or_json(out, cfg, {"v", "e", "h", "degree", "dim"}, rows);
        if (cfg.list)
            for (const auto& [slice, arr] : listing.items())
                for (const auto& g : arr) out << "# " << slice << ' ' << g.get<std::string>() << '\n';
        return 0;
    }
    nlohmann::json extra{{"complex", to_string(spec)}};
    if (cfg.list) extra["graphs"] = std::move(listing);
    detail::write_csv_or_json(out, cfg, {"v", "e", "h", "degree", "dim"}, rows, std::move(extra));
    return 0;
}

// ---- matrix ----

inline int cmd_matrix(const JobConfig& cfg, std::ostream& out) {
    const ComplexSpec spec = job_spec(cfg);
    if (cfg.op.empty()) throw JobError("matrix needs --op");
    if (!cfg.v || !cfg.e) throw JobError("matrix needs --v and --e");
    const OperatorExpr op = detail::parse_operator(cfg.op);
    const IntRange vr = parse_range(*cfg.v), er = parse_range(*cfg.e), hr = parse_range(cfg.h.value_or("0"));
    if (vr.lo != vr.hi || er.lo != er.hi || hr.lo != hr.hi) throw JobError("matrix needs a single source slice");
    detail::check_emax(cfg, er.hi + 1);
    const GradedSlice src{vr.lo, er.lo, spec.kind == Kind::plain ? 0 : hr.lo};
    const std::set<Shift> sig = op.signatures();
    if (sig.size() != 1) throw JobError("operator " + op.to_string() + " does not have a single slice shift");
    const GradedSlice tgt = apply_shift(src, *sig.begin());
    ComplexSpec tspec = spec;
    if (cfg.target_plain) {
        tspec.kind = Kind::plain;
        tspec.min_hairs = 0;
    }
    const Spot a = basis_spot(spec, src);
    const Spot b = slice_feasible(tspec, tgt) ? basis_spot(tspec, tgt) : Spot{};
    AssembleOptions ao;
    ao.max_nonzeros = cfg.max_nonzeros;
    const SparseMatrix mat = (spot_dim(a) && spot_dim(b)) ? assemble_matrix(op, a, b, ao)
                                                          : SparseMatrix(spot_dim(b), spot_dim(a));
    RankOptions ro;
    ro.seed = cfg.seed;
    const int r = rank(mat, ro);
    const std::string sname = to_string(spec) + to_string(src), tname = to_string(tspec) + to_string(tgt);
    if (cfg.format == "json") {
        nlohmann::json j = matrix_to_json(mat, sname, tname);
        j["operator"] = op.to_string();
        j["rank"] = r;
        out << j.dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    SparseMatrix m = mat;
    m.normalize();
    for (const Triplet& t : m.entries()) rows.push_back({std::to_string(t.row), std::to_string(t.col), t.value.get_str()});
    out << "# " << op.to_string() << ": " << sname << " -> " << tname << " size " << m.rows() << 'x' << m.cols()
        << " rank " << r << '\n';
    detail::write_csv_or_json(out, cfg, {"row", "col", "value"}, rows);
    return 0;
}

// ---- cohomology ----

struct CohomologyJob {
    ComplexDef complex;
    OperatorExpr diff;
    std::vector<Grading> gradings;
    IntRange degrees;
    std::optional<int> emax;  // when set, degrees are derived per grading
};

inline CohomologyJob plan_cohomology(const JobConfig& cfg) {
    const ComplexSpec spec = job_spec(cfg);
    CohomologyJob job{ComplexDef::of(spec, cfg.complex), detail::parse_operator(cfg.diff), {}, {0, 0}, cfg.emax};
    std::string kind = cfg.grading;
    if (kind.empty()) {
        if (cfg.a) kind = "va";
        else if (cfg.f) kind = "f";
        else if (cfg.b && cfg.h) kind = "hb";
        else if (cfg.b) kind = "b";
        else if (cfg.v || cfg.vmax) kind = "v";
        else {
            for (const char* k : {"b", "f", "v"}) {
                Grading g;
                g.kind = std::string(k) == "b" ? GradingKind::b : std::string(k) == "f" ? GradingKind::f : GradingKind::v;
                bool ok = true;
                for (const Shift& s : job.diff.signatures()) ok = ok && g.preserved_by(s);
                if (ok && !(spec.kind == Kind::hairy && g.kind == GradingKind::b)) {
                    kind = k;
                    break;
                }
            }
        }
        if (kind.empty()) throw JobError("cannot infer a grading for " + job.diff.to_string() + "; pass --grading");
    }
    auto need = [&](const std::optional<std::string>& x, const char* name) {
        if (!x) throw JobError(std::string("grading ") + kind + " needs --" + name);
        return parse_range(*x);
    };
    if (kind == "b") {
        const IntRange r = cfg.b ? parse_range(*cfg.b) : IntRange{-1, cfg.emax.value_or(0) - 1};
        if (!cfg.b && !cfg.emax) throw JobError("grading b needs --b or --emax");
        for (int b = r.lo; b <= r.hi; ++b) job.gradings.push_back(Grading::by_b(b));
    } else if (kind == "v") {
        const IntRange r = cfg.v ? parse_range(*cfg.v) : IntRange{1, cfg.vmax.value_or(0)};
        if (!cfg.v && !cfg.vmax) throw JobError("grading v needs --v or --vmax");
        for (int v = r.lo; v <= r.hi; ++v) job.gradings.push_back(Grading::by_v(v));
    } else if (kind == "f") {
        const IntRange r = need(cfg.f, "f");
        for (int f = r.lo; f <= r.hi; ++f) job.gradings.push_back(Grading::by_f(f, cfg.vertex_cap));
    } else if (kind == "va") {
        const IntRange rv = need(cfg.v, "v"), ra = need(cfg.a, "a");
        for (int v = rv.lo; v <= rv.hi; ++v)
            for (int a = ra.lo; a <= ra.hi; ++a) job.gradings.push_back(Grading::by_va(v, a));
    } else if (kind == "hb") {
        const IntRange rh = need(cfg.h, "h"), rb = need(cfg.b, "b");
        for (int h = rh.lo; h <= rh.hi; ++h)
            for (int b = rb.lo; b <= rb.hi; ++b) job.gradings.push_back(Grading::by_hb(h, b));
    } else {
        throw JobError("grading must be one of b, v, f, va, hb");
    }
    if (cfg.vertex_cap && kind != "f") throw JobError("--vertex-cap applies to the f grading only");
    if (cfg.dmin || cfg.dmax) {
        if (!cfg.dmax) throw JobError("--dmin needs --dmax");
        job.degrees = {cfg.dmin.value_or(spec.kind == Kind::hairy && spec.n == 0 ? 1 : 0), *cfg.dmax};
        if (!cfg.dmin) {
            // lowest degree of an edgeless slice, when the grading fixes it
            if (auto d = detail::degree_for_e(spec, job.gradings.front(), 0)) job.degrees.lo = std::min(*d, *cfg.dmax);
        }
        job.emax.reset();
    } else if (!job.emax) {
        if (kind == "v" && spec.n == 0) {
            int vtop = 0;
            for (const Grading& g : job.gradings) vtop = std::max(vtop, g.v);
            job.emax = vtop * (vtop - 1) / 2;
        } else {
            throw JobError("cohomology needs --emax or --dmax");
        }
    }
    if (job.emax) detail::check_emax(cfg, *job.emax);
    return job;
}

inline int cmd_cohomology(const JobConfig& cfg, std::ostream& out) {
    const CohomologyJob job = plan_cohomology(cfg);
    const ComplexSpec& spec = job.complex.summands.front().spec;
    const CohomologyOptions opt = detail::job_options(cfg);
    std::vector<CohomologyReport> reports;
    for (const Grading& g : job.gradings) {
        IntRange d = job.degrees;
        if (job.emax) {
            const auto lo = detail::degree_for_e(spec, g, 0), hi = detail::degree_for_e(spec, g, *job.emax);
            if (!lo || !hi) throw JobError("grading " + g.describe() + " does not fix the degree by e; pass --dmax");
            d = {*lo, *hi};
        }
        for (int k = d.lo; k <= d.hi; ++k) {
            try {
                reports.push_back(cohomology(job.complex, job.diff, g, k, opt));
            } catch (const std::invalid_argument& ex) {
                throw JobError(ex.what());
            } catch (const std::runtime_error& ex) {
                throw JobError(ex.what());
            }
        }
    }
    long total = 0;
    std::vector<std::vector<std::string>> rows;
    for (const CohomologyReport& r : reports) {
        total += r.H;
        rows.push_back({r.complex, r.grading, r.differential, std::to_string(r.degree), std::to_string(r.dim),
                        std::to_string(r.rank_in), std::to_string(r.rank_out), std::to_string(r.H)});
    }
    detail::write_csv_or_json(out, cfg, {"complex", "grading", "differential", "degree", "dim", "rank_in", "rank_out", "H"},
                              rows, nlohmann::json{{"complex", to_string(spec)}, {"total_H", total}});
    if (cfg.expect_total && *cfg.expect_total != total) return 1;
    return 0;
}

// ---- verify ----

inline std::vector<IdentityCase> select_identities(const JobConfig& cfg) {
    std::vector<IdentityCase> all = identity_suite();
    std::vector<IdentityCase> out;
    for (IdentityCase& c : all) {
        if (!cfg.suite.empty() && cfg.suite != "all" && c.suite != cfg.suite) continue;
        if (!cfg.identity.empty() && c.id != cfg.identity && c.id.rfind(cfg.identity + "-", 0) != 0) continue;
        const bool disc = c.id.find("disconnected") != std::string::npos;
        const bool conn = !disc && c.id.find("connected") != std::string::npos;
        if (cfg.connected && !conn) continue;
        if (cfg.disconnected && !disc) continue;
        if (cfg.emax) c.emax = *cfg.emax;
        if (cfg.hmax) c.hmax = std::max(c.hmin, *cfg.hmax);
        out.push_back(std::move(c));
    }
    if (out.empty()) throw JobError("no identity matches the selection");
    return out;
}

// pass: holds as stated; expected-failure: a documented false statement with its witness;
// no-witness: a documented false statement that holds on the checked range; FAIL otherwise.
inline std::string identity_status(const IdentityCase& c, const IdentityReport& r) {
    if (c.expected) return r.verified ? "pass" : "FAIL";
    return r.verified ? "no-witness" : "expected-failure";
}

inline int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    if (cfg.suite.empty() && cfg.identity.empty()) throw JobError("verify needs --suite or --identity");
    const std::vector<IdentityCase> cases = select_identities(cfg);
    for (const IdentityCase& c : cases) detail::check_emax(cfg, c.emax);
    int code = 0;
    std::vector<std::vector<std::string>> rows;
    for (const IdentityCase& c : cases) {
        const IdentityReport r = run_identity(c);
        const std::string status = identity_status(c, r);
        if (status == "FAIL") code = 1;
        std::string witness;
        if (r.witness) witness = r.witness->graph + " => " + r.witness->lhs + " vs " + r.witness->rhs;
        rows.push_back({c.id, c.suite, c.lhs + " = " + c.rhs, to_string(c.domain), std::to_string(c.emax),
                        std::to_string(r.checked), c.expected ? "true" : "false", r.verified ? "true" : "false", status,
                        c.note, witness});
    }
    detail::write_csv_or_json(out, cfg,
                              {"id", "suite", "identity", "domain", "emax", "checked", "expected", "verified", "status",
                               "note", "witness"},
                              rows);
    return code;
}

// ---- special elements ----

inline int cmd_special(const JobConfig& cfg, std::ostream& out) {
    if (!cfg.element.empty()) {
        ElementSpec es{cfg.element, cfg.param, cfg.n.value_or(0), {}};
        if (es.name == "pi") es.input = single(parse_graph(cfg.op.empty() ? "v=1" : cfg.op), Flavor{0, Kind::plain});
        GraphVector x(Flavor{es.n, Kind::hairy});
        try {
            x = build_element(es);
        } catch (const std::invalid_argument& ex) {
            throw JobError(ex.what());
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& [g, c] : x.terms()) rows.push_back({describe(g), c.get_str()});
        std::sort(rows.begin(), rows.end());
        detail::write_csv_or_json(out, cfg, {"graph", "coefficient"}, rows,
                                  nlohmann::json{{"element", es.name}, {"param", es.param}, {"n", es.n}});
        return 0;
    }
    LemmaRange range;
    if (cfg.mmax) range.sigma_mmax = range.gamma_sigma_mmax = *cfg.mmax;
    if (cfg.amax) range.rho_amax = *cfg.amax;
    if (cfg.kmax) range.alpha_kmax = *cfg.kmax;
    if (cfg.steps) range.pi_steps = *cfg.steps;
    std::vector<LemmaResult> results;
    try {
        if (cfg.lemma.empty() || cfg.lemma == "all") results = check_element_lemmas(range);
        else results = check_lemma(cfg.lemma, range);
    } catch (const std::invalid_argument& ex) {
        throw JobError(ex.what());
    }
    int code = 0;
    std::vector<std::vector<std::string>> rows;
    for (const LemmaResult& r : results) {
        if (!r.holds) code = 1;
        rows.push_back({r.lemma, r.instance, r.holds ? "pass" : "FAIL", r.detail});
    }
    detail::write_csv_or_json(out, cfg, {"lemma", "instance", "status", "residue"}, rows);
    return code;
}

// ---- cache ----

inline int cmd_cache(const JobConfig& cfg, std::ostream& out, const std::optional<std::filesystem::path>& dir) {
    if (!dir) throw JobError(std::string("cache needs --cache-dir or ") + kCacheEnv);
    const Cache cache(*dir);
    if (cfg.action == "stats") {
        const CacheStats st = cache.stats();
        detail::write_csv_or_json(out, cfg, {"basis_files", "matrix_files", "temp_files", "other_files", "bytes"},
                                  {{std::to_string(st.basis_files), std::to_string(st.matrix_files),
                                    std::to_string(st.temp_files), std::to_string(st.other_files),
                                    std::to_string(st.bytes)}});
    } else if (cfg.action == "gc" || cfg.action == "clear") {
        const long n = cfg.action == "gc" ? cache.gc() : cache.clear();
        detail::write_csv_or_json(out, cfg, {"action", "removed"}, {{cfg.action, std::to_string(n)}});
    } else {
        throw JobError("cache action must be stats, gc or clear");
    }
    return 0;
}

// ---- config files ----

// Plain "key = value" lines; '#' starts a comment; "true" turns a key into a bare flag.
// The key "verb" names the command. Keys are the long option names without dashes.
inline std::vector<std::string> config_arguments(std::istream& in, std::string& verb) {
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw JobError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw JobError("config line " + std::to_string(lineno) + ": empty key");
        if (key == "verb") {
            verb = value;
            continue;
        }
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace gcx
