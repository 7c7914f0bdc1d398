// interchange-lab command-line tool: instance generation, exact analysis,
// Monte Carlo estimation, and the inequality verification harness.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "iplab/generators.hpp"
#include "iplab/json_io.hpp"

namespace fs = std::filesystem;
using namespace iplab;

namespace {

struct CommonOpts {
    std::string instance_path;
    std::string generator;
    int n = 5, d = 2, m = 3, s = 3;
    double rate = 1.0;
    std::string law = "default";
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    std::int64_t budget_states = default_budgets().max_states;
    double tol_override = -1;
};

void add_instance_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--instance", o.instance_path, "hypergraph JSON file");
    cmd->add_option("--generator", o.generator,
                    "cycle|path|complete|torus|hypercube|complete-uniform|random-regular|single-hyperedge");
    cmd->add_option("--n", o.n, "vertex count");
    cmd->add_option("--d", o.d, "dimension / degree parameter");
    cmd->add_option("--m", o.m, "torus side length");
    cmd->add_option("--edge-size", o.s, "hyperedge size for complete-uniform");
    cmd->add_option("--rate", o.rate, "edge rate (default 1)");
    cmd->add_option("--law", o.law, "default|uniform|transposition|three-cycles");
}

void add_run_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option_function<std::uint64_t>(
           "--seed", [&o](const std::uint64_t& v) { o.seed = v; o.seed_set = true; },
           "random seed (falls back to INTERCHANGE_LAB_SEED)");
    cmd->add_option("--threads", o.threads, "worker cap for Monte Carlo replicas");
    cmd->add_option("--budget-states", o.budget_states, "state-count budget");
    cmd->add_option("--tol", o.tol_override, "kernel truncation tolerance override");
}

std::uint64_t resolve_seed(const CommonOpts& o) {
    if (o.seed_set) return o.seed;
    if (const char* env = std::getenv("INTERCHANGE_LAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

LawChoice parse_law(const std::string& s) {
    if (s == "default") return LawChoice::Default;
    if (s == "uniform") return LawChoice::Uniform;
    if (s == "transposition") return LawChoice::Transposition;
    if (s == "three-cycles") return LawChoice::ThreeCycles;
    throw CLI::ValidationError("--law", "unknown law choice: " + s);
}

HypergraphInstance resolve_instance(const CommonOpts& o) {
    if (!o.instance_path.empty()) return load_instance(o.instance_path);
    if (o.generator.empty())
        throw CLI::ValidationError("instance", "provide --instance or --generator");
    GeneratorParams p;
    p.n = o.n;
    p.d = o.d;
    p.m = o.m;
    p.s = o.s;
    p.rate = o.rate;
    p.law = parse_law(o.law);
    p.seed = resolve_seed(o);
    return generate_instance(o.generator, p);
}

ProcessKind parse_process(const std::string& s) {
    if (s == "rw") return ProcessKind::RW;
    if (s == "ip") return ProcessKind::IP;
    if (s == "ex") return ProcessKind::EX;
    if (s == "q2") return ProcessKind::Q2;
    throw CLI::ValidationError("--process", "unknown process: " + s);
}

Budgets budgets_of(const CommonOpts& o) {
    Budgets b = default_budgets();
    b.max_states = o.budget_states;
    return b;
}

Tolerances tols_of(const CommonOpts& o) {
    Tolerances t = default_tols();
    if (o.tol_override > 0) t.kernel_truncation = o.tol_override;
    return t;
}

json config_json(const CommonOpts& o, const json& extra) {
    json c = {{"instance", o.instance_path}, {"generator", o.generator},
              {"n", o.n},                    {"d", o.d},
              {"m", o.m},                    {"s", o.s},
              {"rate", o.rate},              {"law", o.law},
              {"seed", resolve_seed(o)},     {"threads", o.threads},
              {"budget_states", o.budget_states}};
    if (extra.is_object()) c.update(extra);
    return c;
}

void finish_run(const CommonOpts& o, const std::string& command, const json& config,
                std::vector<std::string> outputs) {
    fs::create_directories(o.out_dir);
    json manifest = make_manifest(command, config, resolve_seed(o), outputs);
    write_json(manifest, (fs::path(o.out_dir) / "manifest.json").string());
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

LabeledConfig parse_config(const std::string& csv) {
    LabeledConfig out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void print_report_line(const VerificationReport& r) {
    const char* status = !r.applicable ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    std::printf("%-34s %s  lhs=%-12.6g rhs=%-12.6g margin=%.3g%s%s\n", r.check.c_str(), status,
                r.lhs, r.rhs, r.margin, r.notes.empty() ? "" : "  ", r.notes.c_str());
}

// ---------------------------------------------------------------------- gen

int run_gen(const CommonOpts& o) {
    HypergraphInstance g = resolve_instance(o);
    auto report = validate_instance(g);
    if (!report.ok()) {
        for (const auto& v : report.violations) std::fprintf(stderr, "invalid: %s\n", v.c_str());
        return 2;
    }
    fs::create_directories(o.out_dir);
    const std::string path = (fs::path(o.out_dir) / "instance.json").string();
    save_instance(g, path);
    finish_run(o, "gen", config_json(o, {}), {"instance.json"});
    std::printf("wrote %s (n=%d, %zu edges, R=%s)\n", path.c_str(), g.n, g.edges.size(),
                format_double(interaction_rate_R(g)).c_str());
    return 0;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeOpts {
    std::string process = "ip";
    int k = 2;
    bool curve = false, gap = false, mix = false, export_gen = false, bar_dk = false;
    double eps = 0.25;
    double tmax = 0;
    int points = 40;
};

int run_analyze(const CommonOpts& o, const AnalyzeOpts& a) {
    HypergraphInstance g = resolve_instance(o);
    const Budgets budgets = budgets_of(o);
    const Tolerances tol = tols_of(o);
    ProcessSpec spec{parse_process(a.process), a.k, &g};
    GeneratorMatrix gen = build_generator(spec, budgets, tol);
    json result = {{"process", a.process},
                   {"k", a.k},
                   {"states", gen.size()},
                   {"uniform_stationary", gen.uniform_stationary},
                   {"reversible", gen.reversible},
                   {"irreducible", is_irreducible(gen)},
                   {"R", interaction_rate_R(g)}};
    std::vector<std::string> outputs = {"analysis.json"};
    fs::create_directories(o.out_dir);

    if (a.gap) {
        result["spectral_gap"] = spectral_gap(gen, budgets, tol);
        result["t_rel"] = relaxation_time(gen, budgets, tol);
    }
    if (a.mix) {
        result["eps"] = a.eps;
        result["t_mix"] = mixing_time(gen, a.eps, budgets, tol);
    }
    if (a.curve) {
        double tmax = a.tmax;
        if (tmax <= 0) tmax = 4.0 * mixing_time(gen, 0.25, budgets, tol);
        std::vector<double> times;
        for (int i = 0; i <= a.points; ++i) times.push_back(tmax * i / a.points);
        const bool with_bar = a.bar_dk && spec.kind == ProcessKind::IP;
        TVCurve curve = tv_curve(gen, times, with_bar, budgets, tol);
        write_tv_curve_csv(curve, (fs::path(o.out_dir) / "tv_curve.csv").string());
        outputs.push_back("tv_curve.csv");
    }
    if (a.export_gen) {
        export_generator(gen, (fs::path(o.out_dir) / "generator").string());
        outputs.push_back("generator.coo");
        outputs.push_back("generator.states");
    }
    write_json(result, (fs::path(o.out_dir) / "analysis.json").string());
    finish_run(o, "analyze",
               config_json(o, {{"process", a.process}, {"k", a.k}, {"eps", a.eps},
                               {"curve", a.curve}, {"points", a.points}, {"tmax", a.tmax}}),
               outputs);
    std::printf("%s\n", result.dump(2).c_str());
    return 0;
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string estimator = "heat-kernel";
    std::string process = "ip";
    int k = 2;
    int x = 0;
    double t = 1.0;
    double s = 0.5;
    double t1 = 0.0, t2 = 1.0;
    int pi = 0, pj = 1;
    std::string start, start_b;
    long replicas = 10000;
    bool dump_log = false;
};

int run_simulate(const CommonOpts& o, const SimulateOpts& s) {
    HypergraphInstance g = resolve_instance(o);
    const std::uint64_t seed = resolve_seed(o);
    const RngSpec rng{seed, 0};
    json result = {{"estimator", s.estimator}, {"replicas", s.replicas}, {"seed", seed}};
    fs::create_directories(o.out_dir);
    std::vector<std::string> outputs = {"estimates.json"};

    if (s.estimator == "heat-kernel") {
        McEstimate est = estimate_heat_kernel(g, s.x, s.t, s.replicas, rng, o.threads);
        result.update(json{{"x", s.x}, {"t", s.t}, {"value", est.value}, {"se", est.std_error}});
    } else if (s.estimator == "probj") {
        LabeledConfig start = parse_config(s.start);
        McEstimate est = estimate_probJ(g, start, s.s, s.replicas, rng, o.threads);
        result.update(json{{"s", s.s}, {"value", est.value}, {"se", est.std_error}});
    } else if (s.estimator == "tv") {
        ProcessSpec spec{parse_process(s.process), s.k, &g};
        TvEstimate est = empirical_tv(spec, parse_config(s.start), parse_config(s.start_b), s.t,
                                      s.replicas, rng, o.threads, {}, -1, budgets_of(o));
        result.update(json{{"t", s.t},
                           {"value", est.value},
                           {"bias_bound", est.bias_bound},
                           {"ci_lo", est.ci_lo},
                           {"ci_hi", est.ci_hi}});
    } else if (s.estimator == "ring-stats") {
        RingStats st = ring_stats(g, s.t, s.replicas, rng, o.threads);
        result.update(json{{"t", s.t},
                           {"mean_rings", st.count.value},
                           {"se", st.count.std_error},
                           {"edge_freq", st.edge_freq}});
    } else if (s.estimator == "interactions") {
        McEstimate est = estimate_expected_interactions(g, parse_config(s.start), s.pi, s.pj,
                                                        s.t1, s.t2, s.replicas, rng, o.threads);
        result.update(json{{"t1", s.t1}, {"t2", s.t2}, {"value", est.value}, {"se", est.std_error}});
    } else {
        throw CLI::ValidationError("--estimator", "unknown estimator: " + s.estimator);
    }

    if (s.dump_log) {
        CounterRng stream(rng, 0, kLaneSharedLog);
        EventLog log = sample_event_log(g, std::max({s.t, 2 * s.s, s.t2}), stream);
        std::ofstream out(fs::path(o.out_dir) / "events.jsonl");
        out << event_log_to_jsonl(log);
        outputs.push_back("events.jsonl");
    }
    write_json(result, (fs::path(o.out_dir) / "estimates.json").string());
    finish_run(o, "simulate",
               config_json(o, {{"estimator", s.estimator}, {"process", s.process},
                               {"k", s.k}, {"x", s.x}, {"t", s.t}, {"s", s.s},
                               {"t1", s.t1}, {"t2", s.t2}, {"start", s.start},
                               {"start_b", s.start_b}, {"replicas", s.replicas}}),
               outputs);
    std::printf("%s\n", result.dump(2).c_str());
    return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyOpts {
    std::string checks = "all";
    int k = 3;
    double eps = 0.25;
    bool eps_set = false;
    int trials = 100;
    double theta = 0.1, c = 1.0, alpha = 1.0;
    std::string grid_s = "auto", grid_t = "auto", times = "0.5,1,2";
};

bool has_check(const std::string& list, const std::string& name) {
    if (list == "all") return true;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (tok == name) return true;
    return false;
}

int run_verify(const CommonOpts& o, const VerifyOpts& v) {
    HypergraphInstance g = resolve_instance(o);
    const Budgets budgets = budgets_of(o);
    const Tolerances tol = tols_of(o);
    const std::uint64_t seed = resolve_seed(o);
    std::vector<VerificationReport> reports;
    json extra = json::object();

    // default grids: eps in {1/4, 1/8, 1/k}; (s,t) log-spaced over
    // [0.1 t_rel^RW1, 10 t_mix^IP2(1/4)]
    std::vector<double> eps_grid =
        v.eps_set ? std::vector<double>{v.eps}
                  : std::vector<double>{0.25, 0.125, 1.0 / v.k};
    auto window_grid = [&](const std::string& src) -> std::vector<double> {
        if (src != "auto") return parse_grid(src);
        auto rw1 = build_rw_generator(g, 1, budgets, tol);
        auto ip2 = build_ip_generator(g, 2, budgets, tol);
        const double lo = 0.1 * relaxation_time(rw1, budgets, tol);
        const double hi = 10.0 * mixing_time(ip2, 0.25, budgets, tol);
        return {lo, std::sqrt(lo * hi), hi};
    };

    auto guard = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& ex) {
            VerificationReport r;
            r.check = name;
            r.applicable = false;
            r.pass = true;
            r.notes = std::string("skipped: ") + ex.what();
            reports.push_back(r);
        }
    };

    if (has_check(v.checks, "clr"))
        guard("clr-equality", [&] {
            for (int k = 2; k < g.n; ++k) reports.push_back(verify_clr(g, k, budgets, tol));
        });
    if (has_check(v.checks, "dirichlet"))
        guard("dirichlet", [&] {
            DirichletComparisonReport rep = comparison_report(g, v.trials, {seed, 1}, budgets, tol);
            extra["dirichlet"] = dirichlet_report_to_json(rep);
            for (const auto& i : rep.inequalities) {
                VerificationReport r;
                r.check = "dirichlet:" + i.name;
                r.lhs = i.worst_ratio;
                r.rhs = i.constant;
                r.margin = i.constant - i.worst_ratio;
                r.pass = i.pass;
                reports.push_back(r);
            }
        });
    if (has_check(v.checks, "trel-chain"))
        guard("trel-chain", [&] {
            TrelComparison tc = trel_comparison(g, budgets, tol);
            VerificationReport a;
            a.check = "trel:ip2<=120*rw1";
            a.lhs = tc.t_rel_ip2;
            a.rhs = 120.0 * tc.t_rel_rw1;
            a.margin = a.rhs - a.lhs;
            a.pass = tc.pass_chain;
            a.params = {{"ratio", tc.ratio_ip2_rw1}};
            reports.push_back(a);
            VerificationReport b;
            b.check = "trel:q2<=rw2";
            b.lhs = tc.t_rel_q2;
            b.rhs = tc.t_rel_rw2;
            b.margin = b.rhs - b.lhs;
            b.pass = tc.pass_censor;
            reports.push_back(b);
        });
    if (has_check(v.checks, "probj"))
        guard("lemma-probJ", [&] {
            std::uint64_t stream = 2;
            for (double eps : eps_grid)
                reports.push_back(
                    verify_lemma_probJ(g, eps, v.k, budgets, tol, 10000, {seed, ++stream}));
        });
    if (has_check(v.checks, "submulti"))
        guard("lemma-submulti", [&] {
            for (double s : window_grid(v.grid_s))
                for (double t : window_grid(v.grid_t))
                    reports.push_back(verify_submultiplicativity(g, v.k, s, t, budgets, tol,
                                                                 10000, {seed, 77}));
        });
    if (has_check(v.checks, "theorem-main"))
        guard("theorem-main", [&] {
            for (double eps : eps_grid)
                reports.push_back(verify_theorem_main(g, eps, v.k, budgets, tol));
        });
    if (has_check(v.checks, "kvs1"))
        guard("kvs1", [&] {
            for (double eps : eps_grid) {
                if (!(eps > 0 && eps < 0.25)) continue; // sandwich domain
                for (auto& r : verify_rw_sandwich(g, v.k, eps, budgets, tol))
                    reports.push_back(std::move(r));
            }
            if (eps_grid.size() == 1 && !(eps_grid[0] > 0 && eps_grid[0] < 0.25))
                throw std::invalid_argument("kvs1 needs eps in (0, 1/4)");
        });
    if (has_check(v.checks, "mixtrel"))
        guard("mixtrel", [&] {
            for (auto& r :
                 verify_mixtrel_envelope(g, ProcessKind::RW, {0.25, 0.1, 0.01}, budgets, tol))
                reports.push_back(std::move(r));
            for (auto& r :
                 verify_mixtrel_envelope(g, ProcessKind::IP, {0.25, 0.1, 0.01}, budgets, tol))
                reports.push_back(std::move(r));
        });
    if (has_check(v.checks, "negcorr"))
        guard("negative-correlation", [&] {
            const bool exploratory = !is_transposition_graph(g);
            for (double t : parse_grid(v.times))
                reports.push_back(verify_negative_correlation(g, t, exploratory, budgets, tol));
        });
    if (has_check(v.checks, "en-bound"))
        guard("en-bound", [&] {
            auto rep = verify_interaction_bound_en(g, v.eps, v.alpha, parse_grid(v.times),
                                                   budgets, tol);
            reports.push_back(rep.identity);
            reports.push_back(rep.bound);
        });
    if (has_check(v.checks, "hk"))
        guard("hk-theta", [&] {
            GeneratorMatrix rw1 = build_rw_generator(g, 1, budgets, tol);
            const double trel = relaxation_time(rw1, budgets, tol);
            std::vector<double> times;
            for (int i = 0; i < 12; ++i) times.push_back(trel * std::pow(1.6, i));
            reports.push_back(check_hk_theta(g, v.theta, v.c, times, budgets, tol));
        });
    if (has_check(v.checks, "reducibility"))
        guard("reducibility", [&] {
            AssumptionReport rep = check_ip2_assumptions(g, {g.n}, budgets, tol);
            const auto* e2 = rep.for_k(2);
            const auto* en = rep.for_k(g.n);
            GeneratorMatrix ipn = build_ip_generator(g, g.n, budgets, tol);
            LabeledConfig identity(g.n);
            for (int i = 0; i < g.n; ++i) identity[i] = i;
            VerificationReport r;
            r.check = "reducibility";
            r.params = {{"ip2_irreducible", double(e2 && e2->irreducible)},
                        {"ipn_irreducible", double(en && en->irreducible)},
                        {"reachable_from_identity",
                         double(reachable_class_size(ipn, identity))},
                        {"ipn_states", double(ipn.size())}};
            r.pass = e2 && e2->irreducible;
            reports.push_back(r);
        });

    fs::create_directories(o.out_dir);
    json arr = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        arr.push_back(report_to_json(r));
        print_report_line(r);
        if (r.applicable && !r.pass) all_pass = false;
    }
    json out = {{"reports", arr}, {"pass", all_pass}};
    out.update(extra);
    write_json(out, (fs::path(o.out_dir) / "verify.json").string());
    finish_run(o, "verify",
               config_json(o, {{"checks", v.checks}, {"k", v.k}, {"eps", v.eps},
                               {"trials", v.trials}, {"theta", v.theta}, {"c", v.c},
                               {"alpha", v.alpha}}),
               {"verify.json"});
    std::printf("verify: %s (%zu reports)\n", all_pass ? "all-pass" : "FAILURES", reports.size());
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------- report

int run_report(const std::string& in_dir) {
    bool all_pass = true;
    bool found = false;
    for (const auto& entry : fs::recursive_directory_iterator(in_dir)) {
        if (entry.path().filename() != "verify.json") continue;
        found = true;
        std::ifstream in(entry.path());
        json j;
        in >> j;
        std::printf("== %s ==\n", entry.path().string().c_str());
        long pass = 0, fail = 0, skip = 0;
        for (const auto& r : j.at("reports")) {
            if (!r.value("applicable", true))
                ++skip;
            else if (r.value("pass", false))
                ++pass;
            else {
                ++fail;
                std::printf("  FAIL %s lhs=%g rhs=%g\n", r.value("check", "?").c_str(),
                            r.value("lhs", 0.0), r.value("rhs", 0.0));
            }
        }
        std::printf("  pass=%ld fail=%ld skipped=%ld\n", pass, fail, skip);
        if (fail > 0) all_pass = false;
    }
    if (!found) {
        std::fprintf(stderr, "no verify.json under %s\n", in_dir.c_str());
        return 2;
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interchange-lab: interchange/exclusion/random-walk processes on hypergraphs"};
    app.require_subcommand(1);

    CommonOpts gen_o, ana_o, sim_o, ver_o;
    AnalyzeOpts ana;
    SimulateOpts sim;
    VerifyOpts ver;
    std::string report_in = ".";

    auto* cmd_gen = app.add_subcommand("gen", "generate an instance file");
    add_instance_opts(cmd_gen, gen_o);
    add_run_opts(cmd_gen, gen_o);

    auto* cmd_ana = app.add_subcommand("analyze", "exact curves, gaps, mixing times");
    add_instance_opts(cmd_ana, ana_o);
    add_run_opts(cmd_ana, ana_o);
    cmd_ana->add_option("--process", ana.process, "rw|ip|ex|q2");
    cmd_ana->add_option("--k", ana.k, "particle count");
    cmd_ana->add_flag("--curve", ana.curve, "write the TV curve CSV");
    cmd_ana->add_flag("--bar-dk", ana.bar_dk, "include bar_d_k in the curve");
    cmd_ana->add_flag("--gap", ana.gap, "compute spectral gap / t_rel");
    cmd_ana->add_flag("--mix", ana.mix, "compute t_mix(eps)");
    cmd_ana->add_flag("--export-generator", ana.export_gen, "write generator.coo/.states");
    cmd_ana->add_option("--eps", ana.eps, "target total-variation level");
    cmd_ana->add_option("--tmax", ana.tmax, "curve horizon (default 4*t_mix(1/4))");
    cmd_ana->add_option("--points", ana.points, "curve grid points");

    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimators");
    add_instance_opts(cmd_sim, sim_o);
    add_run_opts(cmd_sim, sim_o);
    cmd_sim->add_option("--estimator", sim.estimator,
                        "heat-kernel|probj|tv|ring-stats|interactions");
    cmd_sim->add_option("--process", sim.process, "rw|ip|ex (for tv)");
    cmd_sim->add_option("--k", sim.k, "particle count (for tv)");
    cmd_sim->add_option("--x", sim.x, "start vertex (heat-kernel)");
    cmd_sim->add_option("--t", sim.t, "time horizon");
    cmd_sim->add_option("--s", sim.s, "avoidance window parameter (probj)");
    cmd_sim->add_option("--t1", sim.t1, "interaction window start");
    cmd_sim->add_option("--t2", sim.t2, "interaction window end");
    cmd_sim->add_option("--i", sim.pi, "first particle label");
    cmd_sim->add_option("--j", sim.pj, "second particle label");
    cmd_sim->add_option("--start", sim.start, "start configuration, comma separated");
    cmd_sim->add_option("--start-b", sim.start_b, "second start configuration (tv)");
    cmd_sim->add_option("--replicas", sim.replicas, "Monte Carlo replicas");
    cmd_sim->add_flag("--dump-log", sim.dump_log, "write events.jsonl for stream 0");

    auto* cmd_ver = app.add_subcommand("verify", "inequality verification harness");
    add_instance_opts(cmd_ver, ver_o);
    add_run_opts(cmd_ver, ver_o);
    cmd_ver->add_option("--check", ver.checks,
                        "all or CSV of: clr,dirichlet,trel-chain,probj,submulti,theorem-main,"
                        "kvs1,mixtrel,negcorr,en-bound,hk,reducibility");
    cmd_ver->add_option("--k", ver.k, "particle count");
    auto* ver_eps = cmd_ver->add_option("--eps", ver.eps,
                                        "total-variation level (default grid 1/4, 1/8, 1/k)");
    cmd_ver->add_option("--trials", ver.trials, "random test functions (dirichlet)");
    cmd_ver->add_option("--theta", ver.theta, "HK-(theta) exponent");
    cmd_ver->add_option("--c", ver.c, "HK-(theta) constant");
    cmd_ver->add_option("--alpha", ver.alpha, "window scale for the interaction bound");
    cmd_ver->add_option("--grid-s", ver.grid_s, "s grid (submulti)");
    cmd_ver->add_option("--grid-t", ver.grid_t, "t grid (submulti)");
    cmd_ver->add_option("--times", ver.times, "time grid (negcorr / en identity)");

    auto* cmd_rep = app.add_subcommand("report", "aggregate verify outputs");
    cmd_rep->add_option("--in", report_in, "directory to scan for verify.json");

    CLI11_PARSE(app, argc, argv);
    ver.eps_set = ver_eps->count() > 0;

    try {
        if (cmd_gen->parsed()) return run_gen(gen_o);
        if (cmd_ana->parsed()) return run_analyze(ana_o, ana);
        if (cmd_sim->parsed()) return run_simulate(sim_o, sim);
        if (cmd_ver->parsed()) return run_verify(ver_o, ver);
        if (cmd_rep->parsed()) return run_report(report_in);
    } catch (const BudgetError& ex) {
        std::fprintf(stderr, "budget error: %s\n", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 2;
}
