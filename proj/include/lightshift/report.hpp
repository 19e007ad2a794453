#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "lightshift/experiments.hpp"

namespace lightshift {

using Json = nlohmann::ordered_json;

Json to_json(const SchemeParams& p);
Json to_json(const RegimeReport& r);
Json to_json(const PulseCalibration& c);
Json to_json(const FrameCalibration& c);
Json to_json(const BranchSeries& b);
Json to_json(const CrossKerrResult& c);
/// Summary report; series go to CSV.
Json to_json(const ScenarioResult& r);
Json to_json(const SweepPoint& p);

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Columns t_seconds,N,n,X,Y,reference,abs_error (single-mode scenarios) or
/// t_seconds,N,combination_phase (cross-Kerr).
void write_csv(std::ostream& os, const ScenarioResult& r);

} // namespace lightshift
