#pragma once

#include <iosfwd>

namespace eyenav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  ///< input failed validation or could not be parsed
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 3;

/// Environment variable naming the default dataset root for `stats --aggregate`.
inline constexpr const char* kDatasetRootEnv = "EYENAV_DATASET_ROOT";

/// Runs the command line tool. Outputs that are not redirected with -o go to
/// `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eyenav::cli
