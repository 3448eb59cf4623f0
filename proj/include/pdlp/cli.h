// Command implementations behind the `pdlp` executable. Each returns the
// process exit status: 0 success, 1 semantic failure or disagreement,
// 2 usage, parse or I/O error.

#ifndef PDLP_CLI_H_
#define PDLP_CLI_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "pdlp/worlds.h"

namespace pdlp::cli {

enum class Method { kExpl, kForest, kBrute };

struct CliConfig {
  std::string subcommand;
  std::string program_path;
  std::string formula;
  Method method = Method::kExpl;
  bool structured = false;
  std::optional<int> atom_limit;
};

// Scan options with PDLP_ATOM_LIMIT applied when set.
ScanOptions OptionsFromEnv();

int CmdCheck(const std::string& path, std::ostream& out, std::ostream& err);
int CmdModels(const std::string& path, std::ostream& out, std::ostream& err);
int CmdQuery(const std::string& path, const std::string& formula, Method method, bool structured,
             const ScanOptions& opts, std::ostream& out, std::ostream& err);
int CmdCrosscheck(const std::string& path, const std::string& formula, const ScanOptions& opts,
                  std::ostream& out, std::ostream& err);
int CmdExplain(const std::string& path, const std::string& formula, const ScanOptions& opts,
               std::ostream& out, std::ostream& err);

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Probabilities are printed with nine decimals.
std::string FormatProbability(double p);

// Parses "key: value" lines of a structured record. Repeated keys keep the
// last value.
std::map<std::string, std::string> ParseRecord(const std::string& text);

}  // namespace pdlp::cli

#endif  // PDLP_CLI_H_
