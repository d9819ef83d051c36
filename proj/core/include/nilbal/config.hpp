#pragma once

#include <istream>
#include <map>
#include <string>

#include "nilbal/mse.hpp"

namespace nilbal {

// Parses `key = value` lines ('#' starts a comment). Recognized keys:
// newton_tol, max_newton, damping, radial_intervals, angular_nodes, schedule
// (comma separated), bisection_tol, disk_spacing, compact_radius. Unknown keys
// and malformed values throw DomainError.
SolverConfig parse_solver_config(std::istream& in, SolverConfig base = {});
SolverConfig load_solver_config(const std::string& path, SolverConfig base = {});

// Resolved values, for echoing.
std::map<std::string, std::string> describe(const SolverConfig& cfg);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace nilbal
