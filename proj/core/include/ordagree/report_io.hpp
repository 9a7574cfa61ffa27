#pragma once

#include <string>

#include "ordagree/simulation.hpp"

namespace ordagree::io {

/// Scoreboard CSV: header plus one row per scheme-by-method cell, fixed
/// formatting so identical reports serialize to identical bytes.
std::string coverage_csv(const CoverageReport& report);

/// Full report as a JSON document (cells, bias table, metadata).
std::string coverage_json(const CoverageReport& report);

/// Raw per-sample estimates, one per line, full precision.
std::string raw_estimates_text(const CoverageReport& report);

/// Fixed-width scoreboard for terminals.
std::string coverage_table(const CoverageReport& report);

}  // namespace ordagree::io
