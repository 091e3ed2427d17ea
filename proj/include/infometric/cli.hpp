#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace infometric::cli {

enum class Command { bpst, cp2, curv, geod, probe, fixtures };
enum class Format { csv, json };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::fixtures;
  double rel_tol = 1e-8;
  std::size_t nodes = 128;
  Format output_format = Format::csv;
  std::string output_path;  // empty: standard output
  bool timestamp = true;

  // Throws std::invalid_argument outside rel_tol ∈ [1e-14, 1e-2], nodes ∈ [8, 1e6].
  void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

// Field names and types of every report, as JSON text.
std::string report_schema();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infometric::cli
