#ifndef POLYA_CLI_DISPATCH_HPP
#define POLYA_CLI_DISPATCH_HPP

#include <map>
#include <string>

#include "polya/table.hpp"

namespace polya {

/// A validated CLI invocation: subcommand plus raw parameter strings
/// (kept as strings so exact rationals survive the trip).
struct CommandRequest {
  std::string subcommand;
  std::map<std::string, std::string> params;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: standard output
};

/// Executes one subcommand and returns its table. Throws
/// std::invalid_argument on unknown subcommands or parameter values that
/// violate a module precondition.
TableArtifact dispatch(const CommandRequest& req);

/// Serializes the table to req.output_path or stdout.
void emit_request(const CommandRequest& req, const TableArtifact& table);

}  // namespace polya

#endif
