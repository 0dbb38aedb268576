// Operators, identities, named elements and small cohomology computations.

#include <gtest/gtest.h>

#include <gcx/homology.hpp>
#include <gcx/identities.hpp>
#include <gcx/io.hpp>
#include <gcx/lemmas.hpp>

using namespace gcx;

namespace {

LabeledGraph graph(int v, std::vector<std::pair<int, int>> edges, std::vector<int> hairs = {}) {
    LabeledGraph g;
    g.v = v;
    for (auto [a, b] : edges) g.edges.push_back({a, b});
    g.hairs = std::move(hairs);
    return g;
}

GraphVector plain_vec(int n, const LabeledGraph& g) { return single(g, Flavor{n, Kind::plain}); }
GraphVector hairy_vec(int n, const LabeledGraph& g) { return single(g, Flavor{n, Kind::hairy}); }

GraphVector op(const std::string& name, const GraphVector& x) { return apply_named(name, x); }

const LabeledGraph kPoint = graph(1, {});
const LabeledGraph kEdge = graph(2, {{0, 1}});
const LabeledGraph kTwoPoints = graph(2, {});

ComplexSpec hairy(int n, int mv) {
    ComplexSpec s;
    s.kind = Kind::hairy;
    s.n = n;
    s.min_valence = mv;
    return s;
}

}  // namespace

// ---- single operators on small graphs ----

TEST(Operators, SplitOnPlainGraphs) {
    for (int n = 0; n <= 1; ++n) EXPECT_TRUE(op("delta", plain_vec(n, kEdge)).empty()) << n;
    EXPECT_EQ(op("delta", plain_vec(0, kPoint)), Rational(-1, 2) * plain_vec(0, kEdge));
}

TEST(Operators, DeltaOnHairyStars) {
    for (int n = 0; n <= 1; ++n) {
        EXPECT_TRUE(op("delta", sigma(3, n)).empty()) << n;
        EXPECT_TRUE(op("Delta", sigma(1, n)).empty()) << n;
    }
}

TEST(Operators, NablaJoinsComponents) {
    EXPECT_TRUE(op("nabla", plain_vec(0, kPoint)).empty());
    EXPECT_EQ(op("nabla", plain_vec(0, kTwoPoints)), 2 * plain_vec(0, kEdge));
    EXPECT_TRUE(op("nabla", plain_vec(0, kEdge)).empty());
}

TEST(Operators, BigDeltaJoinsHairyComponents) {
    const GraphVector two_stars = hairy_vec(0, graph(2, {}, {0, 1}));
    EXPECT_EQ(op("Delta", two_stars), 2 * lambda_hairy(2, 0));
    EXPECT_TRUE(op("Delta", rho(2, 0)).empty());
    EXPECT_TRUE(op("Delta", rho(4, 0)).empty());
}

TEST(Operators, ContractionsVanishOnSmallGraphs) {
    EXPECT_TRUE(op("D", plain_vec(0, kPoint)).empty());
    EXPECT_TRUE(op("D", plain_vec(0, kEdge)).empty());
    for (int n = 0; n <= 1; ++n) {
        EXPECT_TRUE(op("D1", sigma(1, n)).empty()) << n;
        EXPECT_TRUE(op("D1", lambda_hairy(2, n)).empty()) << n;
    }
    EXPECT_TRUE(op("D2", sigma(2, 0)).empty());
    EXPECT_TRUE(op("D2", hairy_vec(0, graph(2, {{0, 1}}, {0, 1}))).empty());
}

TEST(Operators, HairOperators) {
    for (int a = 1; a <= 3; ++a) EXPECT_TRUE(op("c", lambda_hairy(a, 0)).empty()) << a;
    EXPECT_EQ(op("chi1", as_hairy(plain_vec(0, kPoint))), sigma(1, 0));
}

TEST(Operators, DeltaTildeKeepsParityOfLoopOrder) {
    for (const Shift& s : OperatorExpr::named("delta_tilde").signatures()) EXPECT_EQ((s.de - s.dv) % 2, 0);
}

TEST(Operators, DeltaPrimeOnExtraPart) {
    const GraphVector g = plain_vec(0, graph(3, {{0, 1}, {1, 2}}));
    AugmentedVector x(0);
    x.extra_part = g;
    const AugmentedVector y = delta_prime(x);
    EXPECT_TRUE(y.hairy_part.empty());
    EXPECT_EQ(y.extra_part, Rational(-1) * op("delta", g));
}

TEST(Operators, DeltaPrimeCopiesHairlessPart) {
    AugmentedVector x(0);
    x.hairy_part = hairy_vec(0, kEdge);
    const AugmentedVector y = delta_prime(x);
    EXPECT_EQ(y.extra_part, plain_vec(0, kEdge));
}

TEST(Operators, ExpressionParsing) {
    const OperatorExpr e = OperatorExpr::parse("delta*D - D*delta");
    const GraphVector x = plain_vec(0, graph(3, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(e.apply(x), op("delta", op("D", x)) - op("D", op("delta", x)));
    EXPECT_THROW(OperatorExpr::parse("delta +"), std::invalid_argument);
    EXPECT_THROW(OperatorExpr::named("nope"), std::invalid_argument);
}

TEST(Operators, MatrixColumnsMatchDirectApplication) {
    const ComplexSpec s = hairy(1, 1);
    const GradedSlice src{3, 2, 2};
    const Spot a = basis_spot(s, src);
    const Spot b = basis_spot(s, {3, 3, 1});
    const SparseMatrix m = assemble_matrix(OperatorExpr::named("Delta"), a, b);
    const Basis& in = enumerate_basis(s, src);
    const Basis& out = enumerate_basis(s, {3, 3, 1});
    ASSERT_EQ(m.cols(), in.size());
    ASSERT_EQ(m.rows(), out.size());
    for (int j = 0; j < in.size(); ++j) {
        const GraphVector img = op("Delta", single(in.elements[static_cast<std::size_t>(j)]));
        for (int i = 0; i < out.size(); ++i)
            EXPECT_EQ(m.at(i, j), img.coefficient(out.elements[static_cast<std::size_t>(i)]));
    }
}

// ---- identities ----

class IdentitySuite : public ::testing::TestWithParam<IdentityCase> {};

TEST_P(IdentitySuite, HoldsOrFailsAsDocumented) {
    const IdentityCase& c = GetParam();
    const IdentityReport r = run_identity(c);
    EXPECT_GT(r.checked, 0);
    if (c.expected) {
        EXPECT_TRUE(r.verified) << (r.witness ? r.witness->graph + ": " + r.witness->lhs + " vs " + r.witness->rhs : "");
    } else {
        EXPECT_FALSE(r.verified);
        EXPECT_TRUE(r.witness.has_value());
    }
}

INSTANTIATE_TEST_SUITE_P(All, IdentitySuite, ::testing::ValuesIn(identity_suite()),
                         [](const ::testing::TestParamInfo<IdentityCase>& info) {
                             std::string name;
                             for (char ch : info.param.id) name += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                             return name;
                         });

TEST(Identities, SignOfCommutatorOnSinglePoint) {
    // on one vertex both sides vanish; the first nonzero case is two points
    const GraphVector p = plain_vec(0, kPoint);
    const OperatorExpr lhs = OperatorExpr::parse("delta*D - D*delta");
    EXPECT_TRUE(lhs.apply(p).empty());
    EXPECT_TRUE(op("nabla", p).empty());
    const GraphVector two = plain_vec(0, kTwoPoints);
    EXPECT_FALSE(lhs.apply(two).empty());
    EXPECT_EQ(lhs.apply(two), Rational(-1) * op("nabla", two));
}

TEST(Identities, DisconnectedWitnessContainsHairlessComponent) {
    for (const IdentityCase& c : identity_suite()) {
        if (c.id != "prop-D2-disconnected") continue;
        const IdentityReport r = run_identity(c);
        ASSERT_TRUE(r.witness);
        const ComponentSplit cs = component_split(parse_graph(r.witness->graph));
        EXPECT_GE(cs.c, 2);
        bool hairless = false;
        for (const Component& k : cs.components) hairless = hairless || k.h == 0;
        EXPECT_TRUE(hairless) << r.witness->graph;
    }
}

// ---- named elements ----

TEST(Elements, AllLemmasHold) {
    for (const LemmaResult& r : check_element_lemmas()) EXPECT_TRUE(r.holds) << r.lemma << " " << r.instance << ": " << r.detail;
}

TEST(Elements, SigmaCoefficients) {
    const GraphVector s3 = Sigma(3);
    const GraphVector s7 = sigma_hairy(7, 0);
    const GraphVector s5s3 = union_of(sigma_hairy(5, 0), sigma_hairy(3, 0));
    const GraphVector s3cubed = union_power(sigma_hairy(3, 0), 3);
    ASSERT_EQ(s3.size(), 3u);
    EXPECT_EQ(s3.coefficient(s7.terms().begin()->first), Rational(-1, 5040));
    EXPECT_EQ(s3.coefficient(s5s3.terms().begin()->first), Rational(1, 720));
    EXPECT_EQ(s3.coefficient(s3cubed.terms().begin()->first), Rational(-1, 1296));
}

TEST(Elements, StarsByFlavor) {
    EXPECT_TRUE(sigma(2, 1).empty());
    const GraphVector s = sigma(3, 0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.terms().begin()->second, 1);
}

TEST(Elements, SigmaAvoidsForbiddenComponents) {
    ComplexSpec dd = hairy(0, 1);
    dd.constraint = Constraint::ddagger;
    for (int j = 1; j <= 4; ++j) {
        const GraphVector s = Sigma(j);
        for (const auto& [g, c] : s.terms()) EXPECT_TRUE(constraint_filter(decode(g), dd)) << describe(g);
    }
}

TEST(Elements, PiTermsHaveTheRequestedLoopOrder) {
    const GraphVector gamma = plain_vec(0, graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    for (int f = 0; f <= 4; f += 2) {
        const GraphVector x = pi(f, gamma);
        EXPECT_FALSE(x.empty());
        for (const auto& [g, c] : x.terms()) EXPECT_EQ(g.slice.f(), f) << describe(g);
    }
    EXPECT_THROW(pi(1, gamma), std::invalid_argument);
}

TEST(Elements, BuildElementValidation) {
    EXPECT_THROW(build_element({"lambda", 3, 1, {}}), std::invalid_argument);
    EXPECT_THROW(build_element({"rho", 2, 1, {}}), std::invalid_argument);
    EXPECT_THROW(build_element({"unknown", 1, 0, {}}), std::invalid_argument);
    EXPECT_EQ(build_element({"lambda", 1, 0, {}}), plain_vec(0, kEdge));
}

// ---- cohomology ----

TEST(Homology, PlainEvenLowLoopOrder) {
    const ComplexDef c = ComplexDef::of(ComplexSpec{}, "fGC0");
    const OperatorExpr d = OperatorExpr::named("delta");
    EXPECT_EQ(cohomology(c, d, Grading::by_b(0), 5).H, 1);
    EXPECT_EQ(cohomology(c, d, Grading::by_b(2), 6).H, 1);
    EXPECT_EQ(cohomology(c, d, Grading::by_b(0), 4).H, 0);
    EXPECT_EQ(cohomology(c, d, Grading::by_b(1), 6).H, 0);
}

TEST(Homology, SingleVertexOddHairy) {
    const ComplexDef c = ComplexDef::of(hairy(1, 1), "fHGC1");
    const OperatorExpr d = OperatorExpr::named("Delta");
    int total = 0;
    for (int a = 0; a <= 4; ++a)
        for (int deg = -3; deg <= 2; ++deg) total += cohomology(c, d, Grading::by_va(1, a), deg).H;
    EXPECT_EQ(total, 1);
}

TEST(Homology, ImageSummandQuotient) {
    ComplexSpec h = hairy(0, 1);
    ComplexSpec h1 = h;
    h1.min_hairs = 1;
    ComplexDef c;
    c.name = "Hflat fHGC0";
    c.summands.push_back(Summand::basis(h1));
    c.summands.push_back(Summand::image_of(OperatorExpr::named("Delta"), h, 1, h));
    const OperatorExpr d = OperatorExpr::named("Delta");
    for (int a = 1; a <= 3; ++a) {
        int total = 0;
        for (int v = 1; v <= 2 * a; ++v)
            for (int deg = 0; deg <= a + 1; ++deg) total += cohomology(c, d, Grading::by_va(v, a), deg).H;
        EXPECT_EQ(total, a == 1 ? 1 : 2) << a;
    }
}

TEST(Homology, EulerCharacteristics) {
    const ComplexDef fgc = ComplexDef::of(ComplexSpec{}, "fGC0");
    EXPECT_TRUE(euler_check(fgc, OperatorExpr::named("delta"), Grading::by_b(0), 0, 6).ok);
    EXPECT_TRUE(euler_check(fgc, OperatorExpr::zero(), Grading::by_b(1), 0, 5).ok);
    ComplexSpec hgc = hairy(0, 3);
    hgc.connectivity = Connectivity::connected;
    hgc.min_hairs = 1;
    EXPECT_TRUE(euler_check(ComplexDef::of(hgc, "HGC0"), OperatorExpr::parse("delta + Delta"), Grading::by_f(2), 1, 5).ok);
}

TEST(Homology, ZeroDifferentialGivesDimensions) {
    const ComplexDef c = ComplexDef::of(ComplexSpec{}, "fGC0");
    for (int e = 0; e <= 5; ++e) {
        const CohomologyReport r = cohomology(c, OperatorExpr::zero(), Grading::by_b(0), e);
        EXPECT_EQ(r.H, r.dim);
    }
}

TEST(Homology, RejectsNonDifferentials) {
    const ComplexDef c = ComplexDef::of(ComplexSpec{}, "fGC0");
    EXPECT_THROW(cohomology(c, OperatorExpr::named("D"), Grading::by_b(0), 3), std::invalid_argument);
}
