#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace fockcalc {

/// Shared knobs for the command-line tool and the verification suites.
/// A config file in key=value form seeds the values; flags override.
struct RunConfig {
  int d = 1;
  int N = 12;
  int Q = 0;  // 0 means the 2N+8 default
  double R = 6.0;
  double h = 0.25;
  std::uint64_t seed = 1;
  std::string preset;
  std::string out_dir = ".";
  std::string t_text;  // optional multiplier override for the t0t suite
  std::map<std::string, double> tolerances;

  int effective_Q() const { return Q > 0 ? Q : 2 * N + 8; }
  double tol(const std::string& name, double fallback) const;

  static RunConfig from_file(const std::string& path);
  void apply_line(const std::string& key, const std::string& value);

  /// Stable serialization used for report echoing and content hashing.
  std::string canonical_json() const;
};

}  // namespace fockcalc
