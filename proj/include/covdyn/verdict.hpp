#pragma once

#include <string>
#include <vector>

namespace covdyn {

/// Outcome of one named check; the witness explains a failure (or records the certificate of a pass).
struct Verdict {
    std::string name;
    bool passed = false;
    bool applicable = true; ///< false when the check was not run (e.g. an undeclared flag)
    std::string witness;
};

inline bool all_passed(const std::vector<Verdict>& vs)
{
    for (const auto& v : vs)
        if (v.applicable && !v.passed) return false;
    return true;
}

inline const Verdict* find_verdict(const std::vector<Verdict>& vs, const std::string& name)
{
    for (const auto& v : vs)
        if (v.name == name) return &v;
    return nullptr;
}

} // namespace covdyn
