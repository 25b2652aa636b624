#include "covdyn/report.hpp"

#include <json.hpp>

#include <sstream>

namespace covdyn {

namespace {

using ojson = nlohmann::ordered_json;

std::string verdict_word(const Verdict& v)
{
    if (!v.applicable) return "n/a";
    return v.passed ? "pass" : "fail";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_json(const Report& r)
{
    ojson j;
    j["command"] = r.command;
    j["subject"] = r.subject;
    j["ok"] = r.ok;
    ojson facts = ojson::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    j["summary"] = std::move(facts);
    ojson entries = ojson::array();
    for (const auto& e : r.entries) {
        ojson o;
        o["section"] = e.section;
        o["name"] = e.name;
        o["verdict"] = e.verdict;
        if (!e.witness.empty()) o["witness"] = e.witness;
        o["budget"] = e.budget;
        if (e.resolution) o["resolution"] = *e.resolution;
        else o["resolution"] = nullptr;
        entries.push_back(std::move(o));
    }
    j["verdicts"] = std::move(entries);
    return j.dump(2) + "\n";
}

std::string render_csv(const Report& r)
{
    std::ostringstream os;
    os << "section,name,verdict,witness,budget,resolution\n";
    os << "summary,command," << csv_field(r.command) << ",,,\n";
    os << "summary,subject," << csv_field(r.subject) << ",,,\n";
    for (const auto& [k, v] : r.facts) os << "summary," << csv_field(k) << "," << csv_field(v) << ",,,\n";
    for (const auto& e : r.entries) {
        os << csv_field(e.section) << ',' << csv_field(e.name) << ',' << e.verdict << ',' << csv_field(e.witness) << ','
           << csv_field(e.budget) << ',';
        if (e.resolution) os << *e.resolution;
        os << '\n';
    }
    os << "summary,ok," << (r.ok ? "true" : "false") << ",,,\n";
    return os.str();
}

void add_run_header(Report& rep, const ScenarioReport& run)
{
    rep.subject = run.name;
    rep.facts = {{"kind", run.kind},
                 {"candidate", run.candidate_text},
                 {"resolution", std::to_string(run.resolution)},
                 {"budget", run.budget},
                 {"testsets", std::to_string(run.testsets.size())},
                 {"expectations_met", run.expectations_met ? "true" : "false"}};
    rep.ok = run.expectations_met;
}

} // namespace

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw Error(Errc::InvalidArgument, "unknown report format '" + std::string(name) + "'");
}

void add_verdicts(Report& report, const std::string& section, const std::vector<Verdict>& verdicts,
                  const std::string& budget, std::optional<std::size_t> resolution)
{
    for (const auto& v : verdicts) report.entries.push_back({section, v.name, verdict_word(v), v.witness, budget, resolution});
}

std::string render(const Report& report, ReportFormat format)
{
    return format == ReportFormat::Json ? render_json(report) : render_csv(report);
}

Report scenario_report(const ScenarioReport& run)
{
    Report rep;
    rep.command = "scenario";
    add_run_header(rep, run);
    const auto r = std::optional<std::size_t>(run.resolution);
    add_verdicts(rep, "global", run.global.checks, run.budget, r);
    add_verdicts(rep, "uniform", run.uniform.checks, run.budget, r);
    add_verdicts(rep, "hypotheses", run.hypotheses, run.budget, std::nullopt);
    add_verdicts(rep, "taxonomy", run.taxonomy, run.budget, r);
    add_verdicts(rep, "uniqueness", run.uniqueness, run.budget, r);
    add_verdicts(rep, "equivalence", run.equivalence.checks, run.budget, r);
    add_verdicts(rep, "consistency", run.consistency, run.budget, r);
    add_verdicts(rep, "measurements", run.measurements, run.budget, r);
    add_verdicts(rep, "expectations", run.expectations, run.budget, r);
    return rep;
}

Report attractor_report(const ScenarioReport& run)
{
    Report rep;
    rep.command = "attractor";
    add_run_header(rep, run);
    const auto r = std::optional<std::size_t>(run.resolution);
    add_verdicts(rep, "global", run.global.checks, run.budget, r);
    add_verdicts(rep, "uniform", run.uniform.checks, run.budget, r);
    add_verdicts(rep, "hypotheses", run.hypotheses, run.budget, std::nullopt);
    add_verdicts(rep, "taxonomy", run.taxonomy, run.budget, r);
    add_verdicts(rep, "equivalence", run.equivalence.checks, run.budget, r);
    add_verdicts(rep, "expectations", run.expectations, run.budget, r);
    return rep;
}

Report omega_report(const ActionModel& model, const std::string& subject, const std::string& target,
                    const LimitSetReport& limit, const std::string& budget)
{
    const Space& space = model.space();
    Report rep;
    rep.command = "omega";
    rep.subject = subject;
    rep.facts = {{"target", target},
                 {"points", describe_set(space, limit.points, limit.points.count())},
                 {"size", std::to_string(limit.points.count())},
                 {"resolution", std::to_string(limit.resolution)},
                 {"truncation", std::to_string(limit.truncation)},
                 {"budget", budget}};
    for (const auto& w : limit.witnesses) {
        std::ostringstream os;
        os << "t=" << format_element(model.element(w.element)) << " sends " << space.label(w.source) << " to " << space.label(w.image);
        rep.entries.push_back({"witnesses", space.label(w.point), "pass", os.str(), budget, limit.resolution});
    }
    rep.ok = limit.points.any();
    return rep;
}

Report axiom_report(const std::string& subject, const std::vector<Verdict>& verdicts, const std::string& budget,
                    std::optional<std::size_t> resolution)
{
    Report rep;
    rep.command = "verify-axioms";
    rep.subject = subject;
    add_verdicts(rep, "axioms", verdicts, budget, resolution);
    rep.ok = all_passed(verdicts);
    std::size_t failed = 0;
    for (const auto& v : verdicts) failed += v.applicable && !v.passed;
    rep.facts = {{"checks", std::to_string(verdicts.size())}, {"failed", std::to_string(failed)}};
    return rep;
}

} // namespace covdyn
