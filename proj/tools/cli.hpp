#pragma once

#include "stopmove/catalog.hpp"
#include "stopmove/stops.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace stopmove::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_io = 2;

/// Checks a catalog and, optionally, a MOFT file. Prints one line per
/// problem on err and a short summary on out.
int cmd_validate(const std::string& catalog_path, const std::optional<std::string>& moft_path,
                 std::ostream& out, std::ostream& err);

/// Writes the SM-MOFT to out_path, or to out when no path is given.
int cmd_detect(const std::string& catalog_path, const std::string& moft_path,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err);

int cmd_graph(const std::string& catalog_path, const std::string& smmoft_path,
              const std::string& oid, bool collapse, std::ostream& out, std::ostream& err);

int cmd_query(const std::string& catalog_path, const std::string& smmoft_path,
              const std::string& expression, std::ostream& out, std::ostream& err);

/// Evaluates a query expression and returns the text to print (without
/// the final newline):
///
///   count(RESM)  oids(RESM)
///   max_l(sel) min_l(sel) avg_l(sel) timespan_l(sel)   over stop intervals
///   time_count(sel) time_max(sel) time_min(sel) timespan(sel)
///                                              over the ts and tf instants
///   area(gid, ...)
///
/// where sel is `all` (or empty) or comma separated `oid=..`, `gid=..`,
/// `dim=..` filters; a row is selected when it satisfies every key, and
/// repeated keys are alternatives. Throws QueryError with a position in
/// the expression.
std::string evaluate_query(std::string_view expression, const Catalog& catalog,
                           const SmMoft& sm);

/// Parses argv with the subcommands validate, detect, graph, query.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stopmove::cli
