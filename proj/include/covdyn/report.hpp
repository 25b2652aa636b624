#pragma once

#include "covdyn/scenarios.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace covdyn {

enum class ReportFormat { Json, Csv };

/// Parses "json" or "csv"; throws InvalidArgument.
ReportFormat parse_report_format(std::string_view name);

/// One verdict line: {section, name, verdict, witness?, budget, resolution}.
struct ReportEntry {
    std::string section;
    std::string name;
    std::string verdict; ///< "pass", "fail" or "n/a"
    std::string witness;
    std::string budget;
    std::optional<std::size_t> resolution;
};

struct Report {
    std::string command;
    std::string subject;
    std::vector<std::pair<std::string, std::string>> facts; ///< ordered summary fields
    std::vector<ReportEntry> entries;
    bool ok = false;
};

void add_verdicts(Report& report, const std::string& section, const std::vector<Verdict>& verdicts,
                  const std::string& budget, std::optional<std::size_t> resolution);

/// Canonical text; identical reports render to identical bytes.
std::string render(const Report& report, ReportFormat format);

/// Every section of a scenario run; ok = expectations met.
Report scenario_report(const ScenarioReport& run);

/// Only the attractor verdicts, hypotheses, taxonomy and expectations; ok = expectations met.
Report attractor_report(const ScenarioReport& run);

/// A limit set with its witnesses; ok = nonempty.
Report omega_report(const ActionModel& model, const std::string& subject, const std::string& target,
                    const LimitSetReport& limit, const std::string& budget);

/// Axiom-suite verdicts; ok = every applicable verdict passes.
Report axiom_report(const std::string& subject, const std::vector<Verdict>& verdicts, const std::string& budget,
                    std::optional<std::size_t> resolution);

} // namespace covdyn
