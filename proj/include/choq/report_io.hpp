#ifndef CHOQ_REPORT_IO_HPP
#define CHOQ_REPORT_IO_HPP

#include <string>

#include <json.hpp>

#include "choq/bubble.hpp"
#include "choq/constants.hpp"
#include "choq/solver.hpp"
#include "choq/symmetry.hpp"

namespace choq {

using json = nlohmann::json;

json to_json(const ProblemParams& p);
json to_json(const CriticalExponents& ce);
json to_json(const SharpConstants& sc);
json to_json(const RegimeReport& rr);
json to_json(const EnergyBreakdown& bd);
json to_json(const SymmetryReport& sr);
json to_json(const SolveReport& sr);
json to_json(const ThresholdReport& tr);
json to_json(const GapReport& gr);
json to_json(const Grid& g);
json to_json(const SolverConfig& c);

ProblemParams params_from_json(const json& j);
Grid grid_from_json(const json& j);
SolverConfig solver_from_json(const json& j);

/// Binary field dump: little-endian {dim, M (uint64), L (float64)} header
/// followed by M^dim (re, im) float64 pairs in row-major order.
void write_field(const Field& u, const std::string& path);
Field read_field(const std::string& path);

/// CSV of the radial profile about the box center: radius, |u| (17 digits).
void write_radial_csv(const Field& u, const std::string& path);

/// CSV of the convergence history: iteration, energy, abs_p, grad_norm.
void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// %.17g formatting used in every CSV column.
std::string fmt17(double v);

} // namespace choq

#endif
