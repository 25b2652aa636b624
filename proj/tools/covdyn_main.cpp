#include "covdyn/axiom_suite.hpp"
#include "covdyn/report.hpp"
#include "covdyn/scenarios.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace covdyn;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_config = 2;

struct Cli {
    std::string source;
    std::string target;
    std::string format = "json";
    std::string out;
    bool mutate_rho = false;
    RunOptions run;
    std::optional<std::size_t> budget;
};

/// A built-in scenario name or a path to a JSON config.
SystemConfig load_source(const Cli& cli)
{
    const auto& names = scenario_names();
    SystemConfig c;
    if (std::find(names.begin(), names.end(), cli.source) != names.end()) {
        c = builtin_config(cli.source);
    } else if (std::filesystem::is_regular_file(cli.source)) {
        c = read_config_file(cli.source);
    } else {
        throw Error(Errc::UnknownScenario, "'" + cli.source + "' is neither a built-in scenario nor a readable config file");
    }
    RunOptions run = cli.run;
    if (cli.budget) run.per_level = cli.budget;
    return with_overrides(std::move(c), run);
}

void emit(const Cli& cli, const std::string& text)
{
    if (cli.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cli.out, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + cli.out + "'");
    f << text;
}

int verify_axioms(const Cli& cli)
{
    std::shared_ptr<const Space> space;
    std::optional<AdmissibleFamily> family;
    std::optional<System> system;
    std::string subject;
    if (cli.source.empty()) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i <= 100; ++i) pts.push_back({i / 100.0});
        space = std::make_shared<const Space>(Space::metric(std::move(pts), MetricKind::Euclidean));
        family.emplace(metric_chain_family(*space, 1.0, 6));
        subject = "grid-101 (chain eps0=1, ratio 1/4, depth 6)";
    } else {
        system.emplace(build_system(load_source(cli)));
        space = system->space;
        family.emplace(system->fam());
        subject = system->config.name;
    }
    AxiomSuiteOptions opts;
    if (cli.run.cap) opts.search.cap = *cli.run.cap;
    if (cli.run.seed) opts.seed = *cli.run.seed;
    if (cli.budget) opts.random_sets = *cli.budget;
    if (cli.mutate_rho) {
        opts.rho = asymmetric_rho(*family);
        subject += " [mutated rho]";
    }
    const auto verdicts = run_axiom_suite(*space, *family, opts);
    const std::size_t cap = opts.search.cap ? opts.search.cap : default_cap(space->size());
    const std::string budget = "cap=" + std::to_string(cap) + " random_sets=" + std::to_string(opts.random_sets) +
                               " seed=" + std::to_string(opts.seed);
    const Report rep = axiom_report(subject, verdicts, budget, family->size() - 1);
    emit(cli, render(rep, parse_report_format(cli.format)));
    return rep.ok ? exit_ok : exit_violation;
}

int omega(const Cli& cli)
{
    const System s = build_system(load_source(cli));
    const auto& b = s.config.budget;
    const auto testsets = standard_testsets(*s.space, s.fam(), s.declared_testsets, b.seed, b.random_testsets);
    const auto it = std::find_if(testsets.begin(), testsets.end(), [&](const Testset& t) { return t.name == cli.target; });
    if (it == testsets.end()) throw Error(Errc::UnknownTestset, "no testset named '" + cli.target + "'");
    const auto limit = omega_limit(s.act(), it->points, s.fam(), b.resolution);
    const std::string budget = "per_level=" + std::to_string(b.per_level) + " max_level=" + std::to_string(b.max_level);
    const Report rep = omega_report(s.act(), s.config.name, cli.target, limit, budget);
    emit(cli, render(rep, parse_report_format(cli.format)));
    return rep.ok ? exit_ok : exit_violation;
}

int run(const Cli& cli, bool full)
{
    const System s = build_system(load_source(cli));
    const ScenarioReport r = run_scenario(s);
    const Report rep = full ? scenario_report(r) : attractor_report(r);
    emit(cli, render(rep, parse_report_format(cli.format)));
    return rep.ok ? exit_ok : exit_violation;
}

int dump(const Cli& cli)
{
    emit(cli, dump_config(load_source(cli)));
    return exit_ok;
}

bool is_config_error(Errc c)
{
    switch (c) {
    case Errc::SchemaError:
    case Errc::SnapToleranceExceeded:
    case Errc::NestingViolation:
    case Errc::UnknownScenario:
    case Errc::UnknownTestset:
    case Errc::InvalidArgument:
    case Errc::UnboundedTestset:
        return true;
    default:
        return false;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Attractors of semigroup actions on spaces with admissible coverings"};
    app.require_subcommand(1);
    app.fallthrough();
    Cli cli;

    app.add_option("--max-level", cli.run.max_level, "filter truncation (last level sampled)");
    app.add_option("--resolution", cli.run.resolution, "covering index used for set comparisons");
    app.add_option("--cap", cli.run.cap, "cardinality cap of the noncompactness measure");
    app.add_option("--seed", cli.run.seed, "seed for every randomized choice");
    app.add_option("--budget", cli.budget, "sample budget: elements per level (axioms: random sets)");
    app.add_option("--format", cli.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cli.out, "write the report here instead of stdout");

    auto* axioms = app.add_subcommand("verify-axioms", "property suite for the proximity and compactness propositions");
    axioms->add_option("source", cli.source, "built-in scenario or config file (default: the 101-point grid)");
    axioms->add_flag("--mutate-rho", cli.mutate_rho, "test hook: inject a rho with broken symmetry");

    auto* om = app.add_subcommand("omega", "omega-limit set of one testset");
    om->add_option("source", cli.source, "built-in scenario or config file")->required();
    om->add_option("--target", cli.target, "testset name (whole-space, a declared name, or random-<i>)")->required();

    auto* at = app.add_subcommand("attractor", "construct and verify the attractor");
    at->add_option("source", cli.source, "built-in scenario or config file")->required();

    auto* sc = app.add_subcommand("scenario", "run every check of a system against its expectations");
    sc->add_option("source", cli.source, "built-in scenario or config file")->required();

    auto* dc = app.add_subcommand("dump-config", "print the canonical JSON config of a system");
    dc->add_option("source", cli.source, "built-in scenario or config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*axioms) return verify_axioms(cli);
        if (*om) return omega(cli);
        if (*at) return run(cli, false);
        if (*sc) return run(cli, true);
        return dump(cli);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_config_error(e.code()) ? exit_config : exit_violation;
    }
}
