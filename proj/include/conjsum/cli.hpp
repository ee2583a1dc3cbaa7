#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conjsum/quadrature.hpp"

namespace conjsum::cli {

enum class Format { kCsv, kJson };

/// Options shared by all commands. Unset optionals fall back to per-command defaults.
struct RunConfig {
  std::string function = "sin";
  std::string matrix_a = "cesaro";  ///< builder name or path to a matrix JSON file
  std::string matrix_b = "cesaro";
  std::optional<int> n;
  std::vector<int> n_list;
  std::vector<double> x;  ///< empty: default x-grid
  std::vector<double> p;  ///< empty: {1, 2, inf}
  std::optional<double> delta;
  std::string theorem = "T1.5";
  bool truncated = false;
  GridSpec grid{};
  std::string out;  ///< empty: stdout
  Format format = Format::kCsv;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

/// Each command writes its table to cfg.out (or `out` when cfg.out is empty)
/// and diagnostics to `err`; the return value is the process exit code.
int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_conjugate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_moduli(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "4..128" (inclusive), "8,16,32" or a mix: "1..3,8".
std::vector<int> parse_int_list(const std::string& text);
/// Comma list of doubles; "inf" and "pi"-multiples like "pi/3" are accepted.
std::vector<double> parse_real_list(const std::string& text);

/// Grid size from CONJSUM_GRID_M when set, else the default.
GridSpec default_grid();

/// Full argv front end.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conjsum::cli
