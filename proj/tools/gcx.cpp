// gcx: batch front-end for the graph complex library.
//
//   gcx basis --complex fHGC --n 1 --v 1 --e 0 --h 1
//   gcx cohomology --complex fGC --n 0 --diff delta --emax 8
//   gcx verify --suite even-D --emax 5
//   gcx special --lemma Sigma-closed --mmax 4
//   gcx cache stats --cache-dir /tmp/gcx
//   gcx --config job.cfg
//
// Exit codes: 0 all checks pass, 1 mathematical discrepancy, 2 usage or resource error.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <tbb/global_control.h>

#include <gcx/jobs.hpp>

namespace {

void add_common(CLI::App* sub, gcx::JobConfig& cfg) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--cache-dir", cfg.cache_dir, std::string("cache directory (default: $") + gcx::kCacheEnv + ")");
    sub->add_option("--seed", cfg.seed, "seed for the rank primes");
    sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    sub->add_option("--max-basis", cfg.max_basis, "largest graded piece accepted");
    sub->add_option("--max-nonzeros", cfg.max_nonzeros, "largest matrix accepted");
    sub->add_option("--max-edges", cfg.max_edges, "largest edge bound accepted");
}

void add_spec(CLI::App* sub, gcx::JobConfig& cfg) {
    sub->add_option("--complex", cfg.complex, "preset: fGC fGCc fHGC HGC UR bHGCc");
    sub->add_option("--kind", cfg.kind, "plain or hairy");
    sub->add_option("--n", cfg.n, "parity of n");
    sub->add_option("--m", cfg.m, "hair parameter (hairy: -1)");
    sub->add_option("--minval", cfg.minval, "minimal valence 0..3");
    sub->add_option("--constraint", cfg.constraint, "none dagger ddagger dagger_ddagger star");
    sub->add_flag("--connected", cfg.connected, "connected graphs only");
    sub->add_flag("--disconnected", cfg.disconnected, "disconnected graphs only");
    sub->add_option("--min-hairs", cfg.min_hairs, "at least this many hairs");
    sub->add_option("--max-components", cfg.max_components, "at most this many components");
}

void add_slices(CLI::App* sub, gcx::JobConfig& cfg) {
    sub->add_option("--v", cfg.v, "vertices (k or lo:hi)");
    sub->add_option("--e", cfg.e, "edges (k or lo:hi)");
    sub->add_option("--h", cfg.h, "hairs (k or lo:hi)");
    sub->add_option("--emax", cfg.emax, "edge bound");
    sub->add_option("--hmax", cfg.hmax, "hair bound");
    sub->add_option("--vmax", cfg.vmax, "vertex bound");
}

// Splices "--config FILE" into the argument list: the verb (unless given on the command
// line) first, then the file's options, then the remaining command-line arguments.
std::vector<std::string> expand_config(int argc, char** argv, const std::set<std::string>& verbs) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw gcx::JobError("--config needs a file");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    std::ifstream in(path);
    if (!in) throw gcx::JobError("cannot read config file " + path);
    std::string verb;
    std::vector<std::string> extra = gcx::config_arguments(in, verb);
    std::vector<std::string> out;
    auto cmd = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return verbs.count(a) > 0; });
    if (cmd != args.end()) {
        verb = *cmd;
        args.erase(cmd);
    }
    if (verb.empty()) throw gcx::JobError("no verb on the command line or in " + path);
    out.push_back(verb);
    out.insert(out.end(), extra.begin(), extra.end());
    out.insert(out.end(), args.begin(), args.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    gcx::JobConfig cfg;
    CLI::App app{"Graph complex bases, matrices, cohomology and identity checks"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CLI::App* basis = app.add_subcommand("basis", "dimensions (and graphs) of graded pieces");
    add_spec(basis, cfg);
    add_slices(basis, cfg);
    basis->add_flag("--list", cfg.list, "print the basis graphs");

    CLI::App* matrix = app.add_subcommand("matrix", "matrix of an operator on one slice");
    add_spec(matrix, cfg);
    add_slices(matrix, cfg);
    matrix->add_option("--op", cfg.op, "operator expression, e.g. delta or D1*Delta")->required();
    matrix->add_flag("--target-plain", cfg.target_plain, "the operator lands in plain graphs");

    CLI::App* coh = app.add_subcommand("cohomology", "cohomology table");
    add_spec(coh, cfg);
    add_slices(coh, cfg);
    coh->add_option("--diff", cfg.diff, "differential expression, e.g. delta+Delta");
    coh->add_option("--grading", cfg.grading, "b v f va hb (inferred when omitted)");
    coh->add_option("--b", cfg.b, "b = e - v (k or lo:hi)");
    coh->add_option("--f", cfg.f, "f = e + h - v (k or lo:hi)");
    coh->add_option("--a", cfg.a, "a = e + h (k or lo:hi)");
    coh->add_option("--dmin", cfg.dmin, "lowest degree");
    coh->add_option("--dmax", cfg.dmax, "highest degree");
    coh->add_option("--vertex-cap", cfg.vertex_cap, "quotient by graphs with more vertices (f grading)");
    coh->add_option("--expect-total", cfg.expect_total, "exit 1 unless the total dimension matches");

    CLI::App* verify = app.add_subcommand("verify", "operator identity suite");
    add_spec(verify, cfg);
    verify->add_option("--suite", cfg.suite, "d-squared even-D odd-D hairy-D1 prop-D2 all");
    verify->add_option("--identity", cfg.identity, "identity id or id prefix");
    verify->add_option("--emax", cfg.emax, "edge bound for every selected case");
    verify->add_option("--hmax", cfg.hmax, "hair bound for every selected case");

    CLI::App* special = app.add_subcommand("special", "named elements and their lemmas");
    special->add_option("--lemma", cfg.lemma, "Sigma-closed rho alpha-closed pi-chain-map Gamma-Sigma all");
    special->add_option("--element", cfg.element, "sigma lambda rho alpha Sigma pi");
    special->add_option("--param", cfg.param, "element parameter");
    special->add_option("--n", cfg.n, "parity of n");
    special->add_option("--graph", cfg.op, "input graph of pi, e.g. \"v=2 e=[0-1]\"");
    special->add_option("--mmax", cfg.mmax, "largest m for Sigma_m");
    special->add_option("--amax", cfg.amax, "largest a for rho_a");
    special->add_option("--kmax", cfg.kmax, "alpha truncation");
    special->add_option("--steps", cfg.steps, "values of f per graph for pi_f");

    CLI::App* cache = app.add_subcommand("cache", "cache maintenance");
    cache->add_option("action", cfg.action, "stats gc clear")->check(CLI::IsMember({"stats", "gc", "clear"}));

    for (CLI::App* sub : {basis, matrix, coh, verify, special, cache}) add_common(sub, cfg);

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv, {"basis", "matrix", "cohomology", "verify", "special", "cache"});
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gcx::JobError& e) {
        std::cerr << "gcx: " << e.what() << '\n';
        return 2;
    }

    std::unique_ptr<tbb::global_control> threads;
    if (cfg.threads > 0)
        threads = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                        static_cast<std::size_t>(cfg.threads));

    try {
        std::optional<std::filesystem::path> dir;
        if (!cfg.cache_dir.empty()) dir = cfg.cache_dir;
        else dir = gcx::Cache::dir_from_env();
        if (dir && !cache->parsed()) gcx::install_cache(gcx::Cache(*dir));

        if (basis->parsed()) return gcx::cmd_basis(cfg, std::cout);
        if (matrix->parsed()) return gcx::cmd_matrix(cfg, std::cout);
        if (coh->parsed()) return gcx::cmd_cohomology(cfg, std::cout);
        if (verify->parsed()) return gcx::cmd_verify(cfg, std::cout);
        if (special->parsed()) return gcx::cmd_special(cfg, std::cout);
        if (cache->parsed()) return gcx::cmd_cache(cfg, std::cout, dir);
    } catch (const gcx::JobError& e) {
        std::cerr << "gcx: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gcx: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
