#pragma once

// The operator identity suite: each case is an exact equality checked on every basis
// element of a range of slices.
//
// Two stated identities are false with the literal operators (the sign of the right side
// is off). Both the literal and the corrected form are listed; the literal one is expected
// to fail and carries a note.

#include <string>
#include <vector>

#include "homology.hpp"

namespace gcx {

struct IdentityCase {
    std::string id;
    std::string suite;
    std::string lhs;
    std::string rhs;
    ComplexSpec domain;
    int emax = 0;
    int hmin = 0;
    int hmax = 0;
    VerifyOptions options;
    bool expected = true;
    std::string note;
};

// Vertex bound per edge count used for identity ranges; beyond it a slice is empty or,
// for valence 0, only adds isolated vertices.
inline int identity_vmax(const ComplexSpec& spec, int e, int h) {
    if (spec.connectivity == Connectivity::connected) return e + 1;
    if (spec.min_valence >= 1) return std::max(1, 2 * e + h);
    return e + h + 2;
}

inline std::vector<GradedSlice> identity_slices(const ComplexSpec& spec, int emax, int hmin, int hmax) {
    std::vector<GradedSlice> out;
    const int h0 = spec.kind == Kind::plain ? 0 : hmin;
    const int h1 = spec.kind == Kind::plain ? 0 : hmax;
    for (int e = 0; e <= emax; ++e)
        for (int h = h0; h <= h1; ++h)
            for (int v = 1; v <= identity_vmax(spec, e, h); ++v) {
                const GradedSlice s{v, e, h};
                if (slice_feasible(spec, s)) out.push_back(s);
            }
    return out;
}

namespace detail {

inline ComplexSpec plain_spec(int n, int mv) {
    ComplexSpec s;
    s.n = n;
    s.min_valence = mv;
    return s;
}

inline ComplexSpec hairy_spec(int n, int mv) {
    ComplexSpec s;
    s.kind = Kind::hairy;
    s.n = n;
    s.min_valence = mv;
    return s;
}

}  // namespace detail

inline std::vector<IdentityCase> identity_suite(int emax_plain = 6, int emax_hairy = 4, int hmax = 4) {
    using detail::hairy_spec;
    using detail::plain_spec;
    std::vector<IdentityCase> out;
    auto add = [&](IdentityCase c) { out.push_back(std::move(c)); };
    VerifyOptions flat;
    flat.identify_hairless = true;

    add({"d2-delta-even", "d-squared", "delta*delta", "0", plain_spec(0, 0), emax_plain, 0, 0, {}, true, {}});
    add({"d2-delta-odd", "d-squared", "delta*delta", "0", plain_spec(1, 0), emax_plain, 0, 0, {}, true, {}});
    add({"d2-delta-tilde", "d-squared", "delta_tilde*delta_tilde", "0", plain_spec(0, 1), emax_plain, 0, 0, {},
         true, {}});
    for (int n = 0; n <= 1; ++n) {
        const std::string p = n == 0 ? "even" : "odd";
        add({"d2-hairy-delta-" + p, "d-squared", "delta*delta", "0", hairy_spec(n, 1), emax_hairy, 0, hmax, {},
             true, {}});
        add({"d2-Delta-" + p, "d-squared", "Delta*Delta", "0", hairy_spec(n, 1), emax_hairy, 0, hmax, {}, true, {}});
        add({"anticommute-delta-Delta-" + p, "d-squared", "delta*Delta + Delta*delta", "0", hairy_spec(n, 1),
             emax_hairy, 0, hmax, {}, true, {}});
    }

    add({"even-D2", "even-D", "D*D", "0", plain_spec(0, 2), emax_plain, 0, 0, {}, true, {}});
    add({"even-D4", "even-D", "D*D*D*D", "0", plain_spec(0, 1), emax_plain, 0, 0, {}, true, {}});
    add({"even-dD-Dd", "even-D", "delta*D - D*delta", "nabla", plain_spec(0, 0), emax_plain, 0, 0, {}, false,
         "sign: the literal operators give -nabla"});
    add({"even-dD-Dd-corrected", "even-D", "delta*D - D*delta", "-nabla", plain_spec(0, 0), emax_plain, 0, 0, {},
         true, {}});
    add({"even-Dnabla", "even-D", "D*nabla + nabla*D", "0", plain_spec(0, 1), emax_plain, 0, 0, {}, true, {}});
    add({"even-nablaD2", "even-D", "nabla*D*D", "0", plain_spec(0, 1), emax_plain, 0, 0, {}, true, {}});

    add({"odd-D2", "odd-D", "D*D", "0", plain_spec(1, 1), emax_plain, 0, 0, {}, true, {}});
    add({"odd-dD+Dd", "odd-D", "delta*D + D*delta", "0", plain_spec(1, 0), emax_plain, 0, 0, {}, true, {}});

    for (int n = 0; n <= 1; ++n) {
        const std::string p = n == 0 ? "even" : "odd";
        add({"D1-Delta-Dp-" + p, "hairy-D1", "D1", "Delta*Dp", hairy_spec(n, 2), emax_hairy, 1, 1, flat, true, {}});
        add({"dD1-D1d-" + p, "hairy-D1", "delta*D1 - D1*delta", "Delta", hairy_spec(n, 1), emax_hairy, 1, 1, flat,
             true, {}});
    }
    {
        ComplexSpec star = hairy_spec(0, 2);
        star.constraint = Constraint::star;
        add({"D1-Dp-star", "hairy-D1", "D1*Dp", "0", star, emax_hairy, 1, 1, flat, true, {}});
    }

    ComplexSpec conn = hairy_spec(0, 1);
    conn.connectivity = Connectivity::connected;
    // one edge past the hairy range: the first sign witness of the literal form has e = 5
    const int emax_d2 = emax_hairy + 1;
    add({"prop-D2-connected", "prop-D2", "D1*Delta", "2*nabla*(delta*D2 + D2*delta)", conn, emax_d2, 2, 2, flat, false,
         "sign: the literal operators give -2"});
    add({"prop-D2-connected-corrected", "prop-D2", "D1*Delta", "-2*nabla*(delta*D2 + D2*delta)", conn, emax_d2, 2, 2,
         flat, true, {}});
    add({"prop-D2-disconnected", "prop-D2", "D1*Delta", "-2*nabla*(delta*D2 + D2*delta)", hairy_spec(0, 1), emax_hairy,
         2, 2, flat, false, "fails on Gamma u sigma_2 with hairless Gamma"});
    add({"prop-D2-odd", "prop-D2", "D1*Delta", "0", hairy_spec(1, 1), emax_hairy, 2, 2, flat, true, {}});
    add({"prop-D3-connected", "prop-D2", "nabla*D2*Delta", "0", conn, emax_d2, 3, 3, flat, true, {}});
    return out;
}

inline std::vector<std::string> identity_suites() {
    return {"d-squared", "even-D", "odd-D", "hairy-D1", "prop-D2"};
}

inline OperatorExpr parse_side(const std::string& s) { return s == "0" ? OperatorExpr::zero() : OperatorExpr::parse(s); }

inline IdentityReport run_identity(const IdentityCase& c) {
    return verify_identity(parse_side(c.lhs), parse_side(c.rhs), c.domain,
                           identity_slices(c.domain, c.emax, c.hmin, c.hmax), c.options);
}

}  // namespace gcx
