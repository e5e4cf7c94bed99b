#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace dyadic::cli {

struct ExperimentConfig {
  int dimension = 2;
  int depth = 6;
  int stages = 2;
  std::optional<std::string> perm_file;
  std::string mode = "verify";  // verify | coeffs | sums | sets | uset
  std::string format = "csv";   // csv | json
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  bool allow_d1 = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Runs one experiment. The artifact goes to cfg.out when set, else to out;
/// diagnostics go to err. Returns the exit status.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses flags and dispatches to run.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dyadic::cli
