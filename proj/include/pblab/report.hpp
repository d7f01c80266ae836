#pragma once

#include <map>
#include <string>

#include "pblab/config.hpp"

namespace pblab {

struct RunReport {
    json config;
    json suites = json::object();
    json versions;
    bool inconsistent = false;
    std::vector<std::string> failures;  // suites that missed a tolerance or raised
    std::map<std::string, double> timings;  // seconds per suite; kept out of the serialized report

    int exit_code() const { return (inconsistent || !failures.empty()) ? 1 : 0; }
};

// Sorted keys, two-space indent, doubles as %.16e, non-finite doubles as strings.
std::string canonical_dump(const json& j);

json report_to_json(const RunReport& r);
RunReport report_from_json(const json& j);

std::string emit_json(const RunReport& r);
// Header "suite,table,i,j,re,im"; one row per tabulated entry.
std::string emit_csv(const RunReport& r);
std::string emit(const RunReport& r, Format f);

json versions_json();

}  // namespace pblab
