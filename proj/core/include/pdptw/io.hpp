#pragma once

#include <string>
#include <string_view>

#include "pdptw/evaluation.hpp"
#include "pdptw/ga.hpp"
#include "pdptw/moo.hpp"
#include "pdptw/oracle.hpp"

namespace pdptw {

/// Fixed 6-decimal rendering used by every text report.
auto format_fixed(double value) -> std::string;

/// Route file: one `R <vehicle> : 0 <ids...> 0` line per route; `#` starts a comment.
/// The depot tokens at both ends are required and stripped.
auto parse_route_file(std::string_view text) -> Solution;
auto load_route_file(std::string const& path) -> Solution;
auto format_route(Route const& route) -> std::string;
auto format_route_file(Solution const& solution) -> std::string;

/// `F1 F2 F3 AGG : <routes joined by " ; ">`, one line per entry, aggregate ascending.
auto export_archive(ParetoArchive const& archive, Weights const& weights) -> std::string;

auto report_json(Solution const& solution, ValidationReport const& report, Weights const& weights) -> std::string;
auto report_text(Solution const& solution, ValidationReport const& report, Weights const& weights) -> std::string;

auto solve_result_json(SolveResult const& result) -> std::string;
auto solve_result_text(SolveResult const& result) -> std::string;

auto oracle_result_json(OracleResult const& result, Weights const& weights, OracleLimits const& limits) -> std::string;
auto oracle_result_text(OracleResult const& result, Weights const& weights) -> std::string;

} // namespace pdptw
