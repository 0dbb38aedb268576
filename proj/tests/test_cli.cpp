// Command-line jobs, both in process and through the gcx binary.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include <gcx/jobs.hpp>

using namespace gcx;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun gcx_run(const std::string& args, const std::string& env = "env -u GCX_CACHE_DIR") {
    const std::string cmd = env + " " + GCX_BINARY + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(GCX_SAMPLES) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

// ---- parsing ----

TEST(Parse, Ranges) {
    EXPECT_EQ(parse_range("3").lo, 3);
    EXPECT_EQ(parse_range("3").hi, 3);
    EXPECT_EQ(parse_range("-1:4").lo, -1);
    EXPECT_EQ(parse_range("-1:4").hi, 4);
    EXPECT_THROW(parse_range("4:1"), JobError);
    EXPECT_THROW(parse_range("x"), JobError);
    EXPECT_THROW(parse_range("1:"), JobError);
}

TEST(Parse, ConfigLines) {
    std::istringstream in("# comment\nverb = cohomology\ncomplex = fGC  # trailing\n\nconnected = true\nlist = false\nemax = 6\n");
    std::string verb;
    const std::vector<std::string> args = config_arguments(in, verb);
    EXPECT_EQ(verb, "cohomology");
    EXPECT_EQ(args, (std::vector<std::string>{"--complex", "fGC", "--connected", "--emax", "6"}));
    std::istringstream bad("emax 6\n");
    EXPECT_THROW(config_arguments(bad, verb), JobError);
}

TEST(Parse, Presets) {
    const ComplexSpec hgc = preset_spec("HGC");
    EXPECT_EQ(hgc.kind, Kind::hairy);
    EXPECT_EQ(hgc.min_valence, 3);
    EXPECT_EQ(hgc.connectivity, Connectivity::connected);
    EXPECT_EQ(hgc.min_hairs, 1);
    EXPECT_TRUE(preset_spec("UR").all_components_forbidden);
    EXPECT_THROW(preset_spec("nope"), JobError);
    JobConfig cfg;
    cfg.complex = "fHGC";
    cfg.m = 0;
    EXPECT_THROW(job_spec(cfg), JobError);
}

// ---- jobs in process ----

TEST(Jobs, BasisDimensions) {
    JobConfig cfg;
    cfg.complex = "fHGC";
    cfg.n = 1;
    cfg.v = "1";
    cfg.e = "0";
    cfg.h = "1";
    std::ostringstream out;
    EXPECT_EQ(cmd_basis(cfg, out), 0);
    EXPECT_EQ(lines(out.str()), (std::vector<std::string>{"v,e,h,degree,dim", "1,0,1,1,1"}));

    JobConfig theta;
    theta.complex = "fGCc";
    theta.n = 1;
    theta.minval = 3;
    theta.v = "2";
    theta.e = "3";
    std::ostringstream t;
    cmd_basis(theta, t);
    EXPECT_EQ(lines(t.str()).back(), "2,3,0,1,1");
}

TEST(Jobs, CohomologyHairyLoopOrderTwo) {
    JobConfig cfg;
    cfg.complex = "HGC";
    cfg.n = 0;
    cfg.diff = "delta+Delta";
    cfg.f = "2";
    cfg.emax = 5;
    cfg.format = "json";
    std::ostringstream out;
    EXPECT_EQ(cmd_cohomology(cfg, out), 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j.at("total_H").get<int>(), 1);
    int at1 = -1;
    for (const auto& row : j.at("rows"))
        if (row.at("degree").get<int>() == 1) at1 = row.at("H").get<int>();
    EXPECT_EQ(at1, 1);
}

TEST(Jobs, ExpectTotalMismatchIsDiscrepancy) {
    JobConfig cfg;
    cfg.b = "0";
    cfg.emax = 6;
    cfg.expect_total = 1;
    std::ostringstream ok;
    EXPECT_EQ(cmd_cohomology(cfg, ok), 0);
    cfg.expect_total = 2;
    std::ostringstream bad;
    EXPECT_EQ(cmd_cohomology(cfg, bad), 1);
}

TEST(Jobs, VerifyMarksDocumentedFailures) {
    JobConfig cfg;
    cfg.suite = "even-D";
    cfg.emax = 4;
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(cfg, out), 0);
    const std::string s = out.str();
    EXPECT_NE(s.find("even-dD-Dd,"), std::string::npos);
    EXPECT_NE(s.find("expected-failure"), std::string::npos);
    EXPECT_EQ(s.find("FAIL,"), std::string::npos);
}

TEST(Jobs, VerifyConnectivityFilters) {
    JobConfig conn;
    conn.suite = "prop-D2";
    conn.connected = true;
    conn.emax = 4;
    std::ostringstream a;
    EXPECT_EQ(cmd_verify(conn, a), 0);
    EXPECT_EQ(a.str().find("disconnected"), std::string::npos);

    JobConfig disc;
    disc.suite = "prop-D2";
    disc.disconnected = true;
    std::ostringstream b;
    EXPECT_EQ(cmd_verify(disc, b), 0);
    EXPECT_NE(b.str().find("prop-D2-disconnected"), std::string::npos);
    EXPECT_NE(b.str().find("expected-failure"), std::string::npos);
}

TEST(Jobs, SpecialElementTerms) {
    JobConfig cfg;
    cfg.element = "Sigma";
    cfg.param = 3;
    std::ostringstream out;
    EXPECT_EQ(cmd_special(cfg, out), 0);
    const std::string s = out.str();
    EXPECT_NE(s.find("-1/5040"), std::string::npos);
    EXPECT_NE(s.find("1/720"), std::string::npos);
    EXPECT_NE(s.find("-1/1296"), std::string::npos);
}

TEST(Jobs, SpecialLemmas) {
    JobConfig cfg;
    cfg.lemma = "Sigma-closed";
    cfg.mmax = 3;
    std::ostringstream out;
    EXPECT_EQ(cmd_special(cfg, out), 0);
    EXPECT_EQ(lines(out.str()).size(), 4u);
    cfg.lemma = "nope";
    std::ostringstream bad;
    EXPECT_THROW(cmd_special(cfg, bad), JobError);
}

TEST(Jobs, MatrixNeedsOneSlice) {
    JobConfig cfg;
    cfg.op = "delta";
    cfg.v = "1:2";
    cfg.e = "1";
    std::ostringstream out;
    EXPECT_THROW(cmd_matrix(cfg, out), JobError);
}

TEST(Jobs, EdgeCap) {
    JobConfig cfg;
    cfg.b = "0";
    cfg.emax = 40;
    std::ostringstream out;
    EXPECT_THROW(cmd_cohomology(cfg, out), JobError);
}

// ---- the binary ----

TEST(Binary, ExitCodes) {
    EXPECT_EQ(gcx_run("basis --complex fHGC --n 1 --v 1 --e 0 --h 1").code, 0);
    EXPECT_EQ(gcx_run("cohomology --b 0 --emax 6 --expect-total 2").code, 1);
    EXPECT_EQ(gcx_run("basis --bogus").code, 2);
    EXPECT_EQ(gcx_run("").code, 2);
    EXPECT_EQ(gcx_run("cohomology --b 0 --emax 20").code, 2);
    EXPECT_EQ(gcx_run("basis --complex nope --v 1 --e 0").code, 2);
    EXPECT_EQ(gcx_run("cache stats").code, 2);
}

TEST(Binary, DeterministicAcrossThreadCounts) {
    const std::string args = "cohomology --complex HGC --n 1 --diff delta+Delta --f 1:2 --emax 6";
    const CliRun a = gcx_run(args);
    const CliRun b = gcx_run(args);
    const CliRun c = gcx_run(args + " --threads 1");
    ASSERT_EQ(a.code, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(Binary, CacheWarmEqualsCold) {
    const auto dir = std::filesystem::temp_directory_path() / ("gcx-cli-cache-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const std::string args = "cohomology --b 1 --emax 7 --cache-dir " + dir.string();
    const CliRun cold = gcx_run(args);
    const CliRun warm = gcx_run(args);
    const CliRun none = gcx_run("cohomology --b 1 --emax 7");
    const CliRun from_env = gcx_run("cohomology --b 1 --emax 7", "env GCX_CACHE_DIR=" + dir.string());
    EXPECT_EQ(cold.out, from_env.out);
    EXPECT_EQ(cold.code, 0);
    EXPECT_EQ(cold.out, warm.out);
    EXPECT_EQ(cold.out, none.out);
    const CliRun stats = gcx_run("cache stats --cache-dir " + dir.string());
    EXPECT_EQ(stats.code, 0);
    EXPECT_EQ(lines(stats.out).size(), 2u);
    EXPECT_EQ(gcx_run("cache clear --cache-dir " + dir.string()).code, 0);
    std::filesystem::remove_all(dir);
}

TEST(Binary, CommandLineOverridesConfig) {
    const CliRun r = gcx_run("--config " + sample("table.cfg") + " --emax 5");
    EXPECT_EQ(r.code, 0);
    for (const std::string& line : lines(r.out)) {
        if (line.empty() || line[0] == 'c') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');) cols.push_back(x);
        ASSERT_GE(cols.size(), 4u);
        EXPECT_LE(std::stoi(cols[3]), 5) << line;
    }
}

class Samples : public ::testing::TestWithParam<std::string> {};

TEST_P(Samples, RunCleanly) {
    const CliRun r = gcx_run("--config " + sample(GetParam()));
    EXPECT_EQ(r.code, 0) << GetParam();
    EXPECT_FALSE(r.out.empty());
}

INSTANTIATE_TEST_SUITE_P(Configs, Samples,
                         ::testing::Values("table.cfg", "hairy_main.cfg", "nabla.cfg", "unbounded_remainder.cfg",
                                           "verify_even_D.cfg", "lemmas.cfg", "theta.cfg"),
                         [](const ::testing::TestParamInfo<std::string>& info) {
                             std::string name = info.param.substr(0, info.param.find('.'));
                             for (char& ch : name)
                                 if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                             return name;
                         });
