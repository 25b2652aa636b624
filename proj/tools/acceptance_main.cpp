#include "covdyn/axiom_suite.hpp"
#include "covdyn/report.hpp"
#include "covdyn/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <regex>

using namespace covdyn;

namespace {

/// One criterion: a pass flag, a detail line and a wall-clock limit in seconds (0: none).
struct Outcome {
    bool passed = false;
    std::string detail;
};

bool run_criterion(int number, const std::string& name, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool ok = o.passed && in_time;
    char timing[64];
    if (limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, limit_s);
    else std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("criterion %d %-22s %s  [%s]  %s\n", number, name.c_str(), ok ? "PASS" : "FAIL", timing, o.detail.c_str());
    std::fflush(stdout);
    return ok;
}

Space grid101()
{
    std::vector<std::vector<double>> pts;
    for (int i = 0; i <= 100; ++i) pts.push_back({i / 100.0});
    return Space::metric(std::move(pts), MetricKind::Euclidean);
}

std::string failed_names(const std::vector<Verdict>& vs)
{
    std::string out;
    for (const auto& v : vs)
        if (v.applicable && !v.passed) out += (out.empty() ? "" : ",") + v.name;
    return out;
}

bool passed(const std::vector<Verdict>& vs, const std::string& name)
{
    const Verdict* v = find_verdict(vs, name);
    return v && v->applicable && v->passed;
}

std::string witness(const std::vector<Verdict>& vs, const std::string& name)
{
    const Verdict* v = find_verdict(vs, name);
    return v ? v->witness : "missing";
}

/// Runs every built-in scenario once; later criteria share the reports.
struct Runs {
    std::map<std::string, System> systems;
    std::map<std::string, ScenarioReport> reports;

    const ScenarioReport& get(const std::string& name)
    {
        if (!reports.count(name)) {
            systems.emplace(name, build_system(builtin_config(name)));
            reports.emplace(name, run_scenario(systems.at(name)));
        }
        return reports.at(name);
    }
};

Outcome axioms()
{
    const Space grid = grid101();
    const auto grid_vs = run_axiom_suite(grid, metric_chain_family(grid, 1.0, 6));
    std::string failures = failed_names(grid_vs);
    std::size_t topologies = 0;
    std::size_t admissible = 0;
    std::size_t failing_topologies = 0;
    std::map<std::string, std::size_t> by_check;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& sp : all_finite_topologies(n)) {
            ++topologies;
            const auto vs = run_axiom_suite(sp, finite_all_coverings_family(sp));
            // A family that is not admissible leaves every property without its premise.
            if (!passed(vs, "admissible")) continue;
            ++admissible;
            if (!all_passed(vs)) ++failing_topologies;
            for (const auto& v : vs)
                if (v.applicable && !v.passed) ++by_check[v.name];
        }
    }
    std::string topo_failures;
    for (const auto& [k, c] : by_check) topo_failures += (topo_failures.empty() ? "" : ",") + k + "x" + std::to_string(c);
    return {all_passed(grid_vs) && failing_topologies == 0,
            "grid: " + std::to_string(grid_vs.size()) + " checks, failed {" + failures + "}; " + std::to_string(topologies) +
                " topologies (" + std::to_string(admissible) + " admissible), " + std::to_string(failing_topologies) + " with failures {" + topo_failures + "}"};
}

Outcome cantor_kuratowski()
{
    const Space grid = grid101();
    const auto fam = metric_chain_family(grid, 1.0, 6);
    const auto sweep = cantor_kuratowski_sweep(grid, fam);
    const bool ok = sweep.holds == 100 && sweep.violated == 0 && sweep.negative_controls == 100 &&
                    sweep.negative_controls_not_met == 100;
    return {ok, "positive chains " + std::to_string(sweep.holds) + "/100 hold, " + std::to_string(sweep.violated) +
                    " violated; negative controls " + std::to_string(sweep.negative_controls_not_met) + "/" +
                    std::to_string(sweep.negative_controls) + " report hypothesis not met"};
}

Outcome iterated(Runs& runs)
{
    const auto& r = runs.get("iterated-contractions");
    const System& s = runs.systems.at("iterated-contractions");
    const std::size_t finest = s.fam().depth();
    const PointSet w = omega_limit(s.act(), s.space->all(), s.fam(), finest).points;
    const bool omega_ok = s.expected_attractor && equal_at_resolution(w, *s.expected_attractor, s.fam(), finest);
    // The attraction index is the covering of radius 0.01; the level bound is 8.
    const bool level_ok = passed(r.measurements, "attraction_level");
    return {omega_ok && level_ok, std::string("omega(X) ") + (omega_ok ? "=" : "!=") + " i(K) at resolution " +
                                      std::to_string(finest) + "; eps=0.01 attraction: " +
                                      witness(r.measurements, "attraction_level")};
}

Outcome exp_decay(Runs& runs)
{
    const auto& r = runs.get("exp-decay");
    const System& s = runs.systems.at("exp-decay");
    const bool uniform_ok = r.uniform.passed();
    const bool attracts_fails = find_verdict(r.global.checks, "attracts") && !passed(r.global.checks, "attracts");
    const bool ac_fails = !passed(r.taxonomy, "asymptotically_compact");

    // Locate the structured escape witness on the first testset that is not attracted.
    std::optional<AttractionFailure> failure;
    const auto& b = s.config.budget;
    for (const auto& t : standard_testsets(*s.space, s.fam(), s.declared_testsets, b.seed, b.random_testsets)) {
        const auto att = attracts(s.act(), r.candidate, t.points, s.fam());
        if (att.failure) {
            failure = att.failure;
            break;
        }
    }
    double norm = -1;
    std::string from = "-";
    if (failure) {
        from = s.space->label(failure->source);
        for (std::size_t a = 0; a < s.functions->arguments().size(); ++a)
            norm = std::max(norm, value_norm(s.functions->value(failure->image, a)));
    }
    const bool norm_ok = from.rfind("f_", 0) == 0 && std::abs(norm - 2 * std::sqrt(2.0)) <= 1e-12;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15f", norm);
    return {uniform_ok && attracts_fails && ac_fails && norm_ok,
            std::string("uniform ") + (uniform_ok ? "pass" : "fail") + "; attracts " + (attracts_fails ? "fails" : "passes") +
                " with witness " + from + " -> image norm " + buf + " (2*sqrt(2) within 1e-12: " + (norm_ok ? "yes" : "no") +
                "); asymptotically_compact " + (ac_fails ? "fails" : "passes")};
}

Outcome composition(Runs& runs)
{
    const auto& r = runs.get("composition");
    const auto& shifted = runs.get("composition-shifted");
    const System& ss = runs.systems.at("composition-shifted");
    const bool both = r.global.passed() && r.uniform.passed();
    const bool spread = passed(r.measurements, "spread_bound");
    const PointIndex x0 = resolve_point(*ss.space, std::vector<double>{0.5, 0.5}, 1e-12);
    PointSet expected(ss.space->size());
    expected.set(x0);
    const bool shifted_ok = shifted.global.passed() && shifted.uniform.passed() &&
                            equal_at_resolution(shifted.candidate, expected, ss.fam(), shifted.resolution);
    return {both && spread && shifted_ok, "x0=0: global+uniform " + std::string(both ? "pass" : "fail") + ", " +
                                              witness(r.measurements, "spread_bound") + "; x0=0.5: candidate " +
                                              shifted.candidate_text + (shifted_ok ? " = {i(0.5)}" : " != {i(0.5)}")};
}

Outcome consistency(Runs& runs)
{
    std::size_t checks = 0;
    std::string failures;
    for (const auto& name : scenario_names()) {
        const auto& r = runs.get(name);
        for (const auto& v : r.consistency) {
            ++checks;
            if (!v.passed) failures += (failures.empty() ? "" : "; ") + name + ":" + v.name;
        }
    }
    return {failures.empty(), std::to_string(checks) + " implications over " + std::to_string(scenario_names().size()) +
                                  " scenarios" + (failures.empty() ? "" : ", failed " + failures)};
}

Outcome hypotheses(Runs& runs)
{
    const auto& add = runs.get("decay-grid");
    const auto& mul = runs.get("iterated-contractions");
    bool add_ok = true;
    for (const char* h : {"H1", "H2", "H3", "H4"}) add_ok = add_ok && passed(add.hypotheses, h);
    const std::string w = witness(mul.hypotheses, "H3");
    const bool h3_fails = find_verdict(mul.hypotheses, "H3") && !passed(mul.hypotheses, "H3");
    std::smatch m;
    const bool s2 = w.find("s=(2)") != std::string::npos;
    const bool odd = std::regex_search(w, m, std::regex(R"(b=\((\d+)\))")) && std::stol(m[1]) % 2 == 1;
    return {add_ok && h3_fails && s2 && odd,
            std::string("additive tails H1-H4 ") + (add_ok ? "pass" : "fail") + "; multiplicative H3 " +
                (h3_fails ? "fails" : "passes") + (s2 ? " at s=2" : "") + (odd ? " with odd b=" + m[1].str() : "")};
}

Outcome determinism()
{
    std::size_t compared = 0;
    std::string mismatch;
    for (const auto& name : scenario_names()) {
        const SystemConfig a = builtin_config(name);
        const SystemConfig b = parse_config(dump_config(a)); // identical config via a round trip
        for (ReportFormat f : {ReportFormat::Json, ReportFormat::Csv}) {
            const std::string ra = render(scenario_report(run_scenario(build_system(a))), f);
            const std::string rb = render(scenario_report(run_scenario(build_system(b))), f);
            ++compared;
            if (ra != rb && mismatch.empty()) mismatch = name;
        }
    }
    const Space grid = grid101();
    const auto fam = metric_chain_family(grid, 1.0, 6);
    const std::string a1 = render(axiom_report("grid", run_axiom_suite(grid, fam), "-", 6), ReportFormat::Json);
    const std::string a2 = render(axiom_report("grid", run_axiom_suite(grid, fam), "-", 6), ReportFormat::Json);
    ++compared;
    if (a1 != a2 && mismatch.empty()) mismatch = "verify-axioms";
    return {mismatch.empty(),
            std::to_string(compared) + " report pairs byte-identical" + (mismatch.empty() ? "" : "; mismatch in " + mismatch)};
}

} // namespace

int main()
{
    Runs runs;
    bool ok = true;
    ok &= run_criterion(1, "axiom-suite", 60, axioms);
    ok &= run_criterion(2, "cantor-kuratowski", 30, cantor_kuratowski);
    ok &= run_criterion(3, "iterated-contractions", 20, [&] { return iterated(runs); });
    ok &= run_criterion(4, "exp-decay", 0, [&] { return exp_decay(runs); });
    ok &= run_criterion(5, "composition", 0, [&] { return composition(runs); });
    ok &= run_criterion(6, "consistency", 0, [&] { return consistency(runs); });
    ok &= run_criterion(7, "hypotheses", 0, [&] { return hypotheses(runs); });
    ok &= run_criterion(8, "determinism", 0, determinism);
    std::printf("acceptance %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
