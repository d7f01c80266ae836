#pragma once

#include "pblab/report.hpp"

namespace pblab {

// Runs every enabled suite. Errors inside a suite are recorded in that suite and count as failures.
RunReport run(const RunConfig& c);

}  // namespace pblab
