#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace ifib {

enum class Status { pass, fail, finding };

inline const char* status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "FAIL";
    case Status::finding:
        return "note";
    }
    return "?";
}

struct Check {
    std::string tag;
    Status status;
    std::string detail;
};

// Outcome of a verification suite.  Findings record statements that are
// reported without being asserted (printed forms that fail, conjectures).
struct Report {
    std::string name;
    std::vector<Check> checks;

    explicit Report(std::string n = {}) : name(std::move(n)) {}

    bool expect(bool ok, std::string tag, std::string detail = {})
    {
        checks.push_back({std::move(tag), ok ? Status::pass : Status::fail, std::move(detail)});
        return ok;
    }
    void note(std::string tag, std::string detail)
    {
        checks.push_back({std::move(tag), Status::finding, std::move(detail)});
    }
    void merge(const Report& o)
    {
        for (const auto& c : o.checks)
            checks.push_back({o.name.empty() ? c.tag : o.name + "/" + c.tag, c.status, c.detail});
    }
    bool ok() const
    {
        return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; });
    }
    std::size_t count(Status s) const
    {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
    }
    const Check* first_failure() const
    {
        for (const auto& c : checks)
            if (c.status == Status::fail)
                return &c;
        return nullptr;
    }
};

} // namespace ifib
