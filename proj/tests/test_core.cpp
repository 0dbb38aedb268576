// Graphs, canonical forms, bases, sparse rank and the on-disk cache.

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <gcx/homology.hpp>
#include <gcx/io.hpp>

#include "oracle.hpp"

using namespace gcx;

namespace {

LabeledGraph graph(int v, std::vector<std::pair<int, int>> edges, std::vector<int> hairs = {}) {
    LabeledGraph g;
    g.v = v;
    for (auto [a, b] : edges) g.edges.push_back({a, b});
    g.hairs = std::move(hairs);
    return g;
}

ComplexSpec plain(int n, int mv) {
    ComplexSpec s;
    s.n = n;
    s.min_valence = mv;
    return s;
}

ComplexSpec hairy(int n, int mv) {
    ComplexSpec s = plain(n, mv);
    s.kind = Kind::hairy;
    return s;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("gcx-test-" + std::to_string(std::random_device{}()) + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

// ---- degrees and components ----

TEST(Degree, FormulaPerFlavor) {
    EXPECT_EQ(degree(Kind::plain, 0, {5, 5, 0}), 5);
    EXPECT_EQ(degree(Kind::plain, 1, {3, 3, 0}), 2);
    EXPECT_EQ(degree(Kind::hairy, 1, {4, 5, 2}), 3);
    EXPECT_EQ(degree(Kind::hairy, 0, {4, 5, 2}), 6);
}

TEST(Components, SplitAndTags) {
    ComponentSplit two_stars = component_split(graph(2, {}, {0, 1}));
    EXPECT_EQ(two_stars.c, 2);
    EXPECT_EQ(two_stars.p, 2);
    EXPECT_EQ(two_stars.components[0].tag, ComponentTag::sigma1);
    EXPECT_EQ(two_stars.components[1].tag, ComponentTag::sigma1);

    ComponentSplit l2 = component_split(graph(2, {{0, 1}}, {1}));
    EXPECT_EQ(l2.c, 1);
    EXPECT_EQ(l2.p, 1);
    EXPECT_EQ(l2.components[0].tag, ComponentTag::lambda2);

    ComponentSplit tri = component_split(graph(4, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(tri.c, 2);
    EXPECT_EQ(tri.p, 0);
    std::multiset<ComponentTag> tags;
    for (const Component& c : tri.components) tags.insert(c.tag);
    EXPECT_EQ(tags, (std::multiset<ComponentTag>{ComponentTag::sigma0, ComponentTag::other}));
}

TEST(Constraints, ForbiddenComponents) {
    ComplexSpec dd = hairy(0, 0);
    dd.constraint = Constraint::ddagger;
    EXPECT_FALSE(constraint_filter(graph(1, {}, {0}), dd));
    ComplexSpec dg = plain(0, 0);
    dg.constraint = Constraint::dagger;
    EXPECT_FALSE(constraint_filter(graph(2, {{0, 1}}), dg));
    ComplexSpec star = hairy(0, 2);
    star.constraint = Constraint::star;
    // triangle with a hair on a vertex that is 2-valent in edges: valence 3, allowed
    EXPECT_TRUE(constraint_filter(graph(3, {{0, 1}, {1, 2}, {2, 0}}, {0}), star));
    EXPECT_FALSE(constraint_filter(graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}, {3}), star));
}

TEST(Constraints, StarRejectsTwoValentHairyVertex) {
    ComplexSpec star = hairy(0, 2);
    star.constraint = Constraint::star;
    // vertex 3 has one edge and one hair: valence 2 with a hair
    const LabeledGraph g = graph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}}, {3});
    EXPECT_EQ(g.valences()[3], 2);
    EXPECT_FALSE(constraint_filter(g, star));
}

// ---- canonical forms ----

TEST(Canonical, EvenDoubleEdgeIsZero) {
    EXPECT_FALSE(canonicalize(graph(2, {{0, 1}, {0, 1}}), 0, Kind::plain).has_value());
}

TEST(Canonical, EvenEdgeBothLabelings) {
    const auto a = canonicalize(graph(2, {{0, 1}}), 0, Kind::plain);
    const auto b = canonicalize(graph(2, {{1, 0}}), 0, Kind::plain);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->first.encoding, b->first.encoding);
    EXPECT_EQ(a->second, 1);
    EXPECT_EQ(b->second, 1);
}

TEST(Canonical, OddTriangleVertexSwap) {
    const LabeledGraph t = graph(3, {{0, 1}, {1, 2}, {2, 0}});
    const LabeledGraph s = graph(3, {{1, 0}, {0, 2}, {2, 1}});  // vertices 0 and 1 swapped
    const auto a = canonicalize(t, 1, Kind::plain);
    const auto b = canonicalize(s, 1, Kind::plain);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->first.encoding, b->first.encoding);
    // a transposition with the edge order and directions carried along
    EXPECT_EQ(a->second * b->second, -1);
}

TEST(Canonical, OddTwoHairsOnOneVertexIsZero) {
    EXPECT_FALSE(canonicalize(graph(1, {}, {0, 0}), 1, Kind::hairy).has_value());
    EXPECT_TRUE(canonicalize(graph(1, {}, {0, 0}), 0, Kind::hairy).has_value());
}

TEST(Canonical, RelabelingInvarianceAgainstOracle) {
    std::mt19937_64 rng(11);
    int nonzero = 0;
    for (int it = 0; it < 1500; ++it) {
        const int n = it % 2;
        const Kind kind = (it / 2) % 2 ? Kind::hairy : Kind::plain;
        const int v = 1 + static_cast<int>(rng() % 6);
        const int e = v < 2 ? 0 : static_cast<int>(rng() % 8);
        const int h = kind == Kind::hairy ? static_cast<int>(rng() % 4) : 0;
        const LabeledGraph g = oracle::random_graph(v, e, h, rng);
        const auto c = canonicalize(g, n, kind);
        if (!c) continue;
        ++nonzero;
        for (int k = 0; k < 3; ++k) {
            const oracle::Relabeled r = oracle::relabel(g, n, rng);
            const auto c2 = canonicalize(r.graph, n, kind);
            ASSERT_TRUE(c2) << describe(g);
            EXPECT_EQ(c2->first.encoding, c->first.encoding) << describe(g);
            EXPECT_EQ(c2->second * c->second, r.sign) << describe(g) << " n=" << n;
        }
    }
    EXPECT_GT(nonzero, 300);
}

TEST(Canonical, ZeroDetectionMatchesOracle) {
    std::mt19937_64 rng(12);
    int zeros = 0;
    for (int it = 0; it < 2000; ++it) {
        const int n = it % 2;
        const Kind kind = (it / 2) % 2 ? Kind::hairy : Kind::plain;
        const int v = 1 + static_cast<int>(rng() % 6);
        const int e = v < 2 ? 0 : static_cast<int>(rng() % 8);
        const int h = kind == Kind::hairy ? static_cast<int>(rng() % 4) : 0;
        const LabeledGraph g = oracle::random_graph(v, e, h, rng);
        oracle::Shape sh;
        sh.v = g.v;
        for (const Edge& ed : g.edges) sh.edges.emplace_back(std::min(ed.tail, ed.head), std::max(ed.tail, ed.head));
        std::sort(sh.edges.begin(), sh.edges.end());
        sh.hairs = g.hair_counts();
        const bool z = oracle::is_zero(sh, n);
        zeros += z;
        EXPECT_EQ(z, !canonicalize(g, n, kind).has_value()) << describe(g) << " n=" << n;
    }
    EXPECT_GT(zeros, 100);
}

TEST(Canonical, DecodeRoundTrip) {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 300; ++it) {
        const LabeledGraph g = oracle::random_graph(2 + static_cast<int>(rng() % 5), static_cast<int>(rng() % 7),
                                                    static_cast<int>(rng() % 3), rng);
        const auto c = canonicalize(g, 1, Kind::hairy);
        if (!c) continue;
        const auto again = canonicalize(decode(c->first), 1, Kind::hairy);
        ASSERT_TRUE(again);
        EXPECT_EQ(again->first.encoding, c->first.encoding);
        EXPECT_EQ(again->second, 1);
    }
}

// ---- bases ----

TEST(Basis, SpecExamples) {
    EXPECT_EQ(enumerate_basis(hairy(1, 1), {1, 0, 1}).size(), 1);
    EXPECT_EQ(enumerate_basis(plain(0, 0), {3, 3, 0}).size(), 0);
    EXPECT_EQ(enumerate_basis(hairy(1, 0), {1, 0, 2}).size(), 0);
    ComplexSpec theta = plain(1, 3);
    theta.connectivity = Connectivity::connected;
    EXPECT_EQ(enumerate_basis(theta, {2, 3, 0}).size(), oracle::basis_count(theta, {2, 3, 0}));
    EXPECT_EQ(enumerate_basis(theta, {2, 3, 0}).size(), 1);
}

TEST(Basis, PlainCountsMatchOracle) {
    for (int n = 0; n <= 1; ++n)
        for (int mv = 0; mv <= 3; ++mv)
            for (int e = 0; e <= 7; ++e)
                for (int v = 1; v <= 6; ++v) {
                    const ComplexSpec s = plain(n, mv);
                    EXPECT_EQ(enumerate_basis(s, {v, e, 0}).size(), oracle::basis_count(s, {v, e, 0}))
                        << to_string(s) << to_string(GradedSlice{v, e, 0});
                }
}

TEST(Basis, HairyCountsMatchOracle) {
    for (int n = 0; n <= 1; ++n)
        for (int mv = 1; mv <= 3; ++mv)
            for (int e = 0; e <= 7; ++e)
                for (int h = 0; e + h <= 7; ++h)
                    for (int v = 1; v <= 5; ++v) {
                        const ComplexSpec s = hairy(n, mv);
                        EXPECT_EQ(enumerate_basis(s, {v, e, h}).size(), oracle::basis_count(s, {v, e, h}))
                            << to_string(s) << to_string(GradedSlice{v, e, h});
                    }
}

TEST(Basis, ConstrainedCountsMatchOracle) {
    std::vector<ComplexSpec> specs;
    for (int n = 0; n <= 1; ++n) {
        ComplexSpec c = hairy(n, 1);
        c.connectivity = Connectivity::connected;
        specs.push_back(c);
        ComplexSpec d = hairy(n, 1);
        d.constraint = Constraint::dagger_ddagger;
        specs.push_back(d);
        ComplexSpec u = hairy(n, 1);
        u.all_components_forbidden = true;
        specs.push_back(u);
        ComplexSpec q = hairy(n, 1);
        q.quotient = QuotientMode::must_contain_forbidden;
        specs.push_back(q);
        ComplexSpec st = hairy(n, 2);
        st.constraint = Constraint::star;
        specs.push_back(st);
    }
    for (const ComplexSpec& s : specs)
        for (int e = 0; e <= 5; ++e)
            for (int h = 0; e + h <= 6; ++h)
                for (int v = 1; v <= 5; ++v)
                    EXPECT_EQ(enumerate_basis(s, {v, e, h}).size(), oracle::basis_count(s, {v, e, h}))
                        << to_string(s) << to_string(GradedSlice{v, e, h});
}

TEST(Basis, ElementsSatisfySpec) {
    ComplexSpec s = hairy(0, 1);
    s.constraint = Constraint::ddagger;
    s.connectivity = Connectivity::connected;
    for (const CanonicalGraph& g : enumerate_basis(s, {4, 3, 3}).elements) EXPECT_TRUE(constraint_filter(decode(g), s));
}

// ---- sparse rank ----

TEST(Rank, TrivialMatrices) {
    EXPECT_EQ(rank(SparseMatrix(4, 3)), 0);
    SparseMatrix id(5, 5);
    for (int i = 0; i < 5; ++i) id.add(i, i, 1);
    EXPECT_EQ(rank(id), 5);
    EXPECT_TRUE(image_basis(SparseMatrix(3, 3)).empty());
}

TEST(Rank, RandomMatricesMatchDenseElimination) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 200; ++it) {
        const int r = 1 + static_cast<int>(rng() % 9), c = 1 + static_cast<int>(rng() % 9);
        SparseMatrix m(r, c);
        std::vector<std::vector<Rational>> dense(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(c)));
        // low-rank products make dependencies common
        const int k = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<int>> a(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(k)));
        std::vector<std::vector<int>> b(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(c)));
        for (auto& row : a)
            for (int& x : row) x = static_cast<int>(rng() % 5) - 2;
        for (auto& row : b)
            for (int& x : row) x = static_cast<int>(rng() % 5) - 2;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                Rational s = 0;
                for (int t = 0; t < k; ++t) s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                s /= Rational(1 + static_cast<int>(rng() % 3));
                dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
                m.add(i, j, s);
            }
        const int want = oracle::dense_rank(dense);
        EXPECT_EQ(rank(m), want);
        RankOptions exact;
        exact.force_exact = true;
        EXPECT_EQ(rank(m, exact), want);
    }
}

TEST(Rank, TwoPrimesAgreeOnDifferentials) {
    const OperatorExpr delta = OperatorExpr::named("delta");
    const ComplexSpec s = plain(0, 0);
    for (int e = 3; e <= 6; ++e)
        for (int v = 2; v <= e; ++v) {
            const Spot a = basis_spot(s, {v, e, 0}), b = basis_spot(s, {v + 1, e + 1, 0});
            if (!spot_dim(a) || !spot_dim(b)) continue;
            const SparseMatrix m = assemble_matrix(delta, a, b);
            const RankResult r = rank_details(m);
            if (m.nnz() == 0) continue;
            EXPECT_FALSE(r.escalated);
            ASSERT_GE(r.primes.size(), 2u);
            EXPECT_EQ(r.modular_ranks[0], r.modular_ranks[1]);
            RankOptions exact;
            exact.force_exact = true;
            EXPECT_EQ(r.rank, rank(m, exact));
        }
}

TEST(Rank, BadPrimeEscalatesToExact) {
    const Spot a = basis_spot(plain(0, 0), {5, 6, 0}), b = basis_spot(plain(0, 0), {6, 7, 0});
    const SparseMatrix m = assemble_matrix(OperatorExpr::named("delta"), a, b);
    RankOptions bad;
    bad.simulate_bad_prime = true;
    const RankResult r = rank_details(m, bad);
    EXPECT_TRUE(r.escalated);
    EXPECT_EQ(r.rank, rank(m));
}

TEST(Rank, DeltaMatrixSmallSlice) {
    const Spot a = basis_spot(plain(0, 0), {2, 1, 0}), b = basis_spot(plain(0, 0), {3, 2, 0});
    const SparseMatrix m = assemble_matrix(OperatorExpr::named("delta"), a, b);
    EXPECT_EQ(m.cols(), 1);
    EXPECT_EQ(m.rows(), spot_dim(b));
    std::vector<std::vector<Rational>> dense(static_cast<std::size_t>(m.rows()), std::vector<Rational>(static_cast<std::size_t>(m.cols())));
    for (const Triplet& t : m.entries()) dense[static_cast<std::size_t>(t.row)][static_cast<std::size_t>(t.col)] = t.value;
    EXPECT_EQ(rank(m), oracle::dense_rank(dense));
    // delta(lambda_1) = 0
    EXPECT_EQ(m.nnz(), 0u);
}

TEST(Rank, SeedDoesNotChangeRank) {
    const Spot a = basis_spot(plain(0, 0), {5, 7, 0}), b = basis_spot(plain(0, 0), {6, 8, 0});
    const SparseMatrix m = assemble_matrix(OperatorExpr::named("delta"), a, b);
    RankOptions o1, o2;
    o1.seed = 1;
    o2.seed = 987654321;
    EXPECT_EQ(rank(m, o1), rank(m, o2));
}

// ---- cache and files ----

TEST(Io, MatrixBinaryAndJsonRoundTrip) {
    SparseMatrix m(3, 4);
    m.add(0, 1, make_rational(-3, 7));
    m.add(2, 3, Rational(mpz_class("123456789012345678901234567890")));
    m.add(1, 0, 1);
    m.normalize();
    const auto [back, key] = matrix_from_binary(matrix_to_binary(m, "k"));
    EXPECT_EQ(key, "k");
    EXPECT_TRUE(back == m);
    EXPECT_TRUE(matrix_from_json(matrix_to_json(m, "a", "b")) == m);
}

TEST(Io, ParseGraph) {
    const LabeledGraph g = parse_graph("v=3 e=[0-1,1-2] h=[0]");
    EXPECT_EQ(g.v, 3);
    ASSERT_EQ(g.e(), 2);
    EXPECT_EQ(g.edges[1].tail, 1);
    EXPECT_EQ(g.edges[1].head, 2);
    EXPECT_EQ(g.hairs, std::vector<int>{0});
    EXPECT_EQ(describe(g), "v=3 e=[0-1,1-2] h=[0]");
}

TEST(Cache, BasisRoundTripAndCorruption) {
    TempDir dir;
    const Cache cache(dir.path);
    const ComplexSpec s = plain(1, 3);
    const GradedSlice sl{4, 6, 0};
    const Basis& b = enumerate_basis(s, sl);
    std::vector<std::string> encs;
    for (const CanonicalGraph& g : b.elements) encs.push_back(g.encoding);
    cache.save_basis(s, sl, encs);
    const auto loaded = cache.load_basis(s, sl);
    ASSERT_TRUE(loaded);
    EXPECT_EQ(*loaded, encs);
    EXPECT_FALSE(cache.load_basis(plain(0, 3), sl));
    {
        std::ofstream out(cache.basis_path(s, sl), std::ios::binary | std::ios::trunc);
        out << "GCXB garbage";
    }
    EXPECT_FALSE(cache.load_basis(s, sl));
    { std::ofstream(dir.path / "basis-x.bin.tmp") << "partial"; }
    EXPECT_EQ(cache.stats().temp_files, 1);
    EXPECT_EQ(cache.gc(), 2);  // the temp file and the corrupt basis file
    EXPECT_EQ(cache.stats().basis_files, 0);
}

TEST(Cache, WarmEqualsCold) {
    TempDir dir;
    ComplexSpec s;
    const ComplexDef c = ComplexDef::of(s, "fGC0");
    const OperatorExpr delta = OperatorExpr::named("delta");
    std::vector<int> cold;
    for (int e = 4; e <= 7; ++e) cold.push_back(cohomology(c, delta, Grading::by_b(1), e).H);

    install_cache(Cache(dir.path));
    std::vector<int> first, second;
    for (int e = 4; e <= 7; ++e) first.push_back(cohomology(c, delta, Grading::by_b(1), e).H);
    const CacheStats st = Cache(dir.path).stats();
    EXPECT_GT(st.matrix_files, 0);
    for (int e = 4; e <= 7; ++e) second.push_back(cohomology(c, delta, Grading::by_b(1), e).H);
    uninstall_cache();
    EXPECT_EQ(cold, first);
    EXPECT_EQ(cold, second);
    EXPECT_EQ(Cache(dir.path).clear(), st.basis_files + st.matrix_files);
}

TEST(Cache, StoredMatrixIsReused) {
    TempDir dir;
    const Cache cache(dir.path);
    SparseMatrix m(2, 2);
    m.add(0, 0, 5);
    cache.save_matrix("some key", m);
    const auto back = cache.load_matrix("some key");
    ASSERT_TRUE(back);
    EXPECT_TRUE(*back == m);
    EXPECT_FALSE(cache.load_matrix("other key"));
}
