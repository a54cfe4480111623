#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mtolab/cr.hpp"
#include "mtolab/extremal.hpp"
#include "mtolab/records.hpp"
#include "mtolab/sphere.hpp"

namespace mto::cli {

/// Field grammar:
///   const:<c>                      constant c
///   mode:<k>:<a>                   a e_k (sphere)
///   sum:<k1>:<a1>,<k2>:<a2>,...    sum of a_i e_{k_i} (sphere)
///   random:<K>:<seed>              seeded random smooth field (sphere: zonal, CR: pluriharmonic)
///   conformal:<t>                  v_t for the given gamma (sphere)
///   pluri:<j>:<a>:<phase>          a r^j cos(j phi - phase) (CR)
/// Malformed input throws ParseError; a spec for the other geometry throws ContextMismatchError.
sphere::ZonalField parse_sphere_field(std::string_view spec, const sphere::ContextPtr& ctx,
                                      std::optional<double> gamma = std::nullopt);
cr::DiskField parse_cr_field(std::string_view spec, const cr::ContextPtr& ctx);

enum class Format { Csv, Json, Both };

struct ExperimentConfig {
  std::string command;  // sphere-verify, sphere-limit, cr-verify, cr-limit, extremal, selftest
  int n = 2;
  std::optional<double> gamma;
  double gamma_gap = 0.4;
  std::optional<double> d;
  double d_gap = 0.8;
  double refine = 2.0;
  int steps = 8;
  int K = 32;
  int M = 0;  // 0 selects 2K + 2
  int J = 16;
  std::string field;  // empty selects the command default
  std::uint64_t seed = 1;
  int starts = 5;
  Format format = Format::Both;
  std::string out_dir;  // empty selects $MTOLAB_OUT_DIR, then "."
  std::string name;     // empty selects the command name
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSharpness = 2;
inline constexpr int kExitOrder = 3;
inline constexpr int kExitIo = 4;

/// Parses argv into a config. Endpoint guards and ranges are enforced here; throws
/// ParameterError or EndpointProximityError. Returns nullopt after printing help.
std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

/// Runs one experiment, writes <name>.csv and/or <name>.json and returns the exit status.
int run_command(const ExperimentConfig& config, std::ostream& log);

// Serialization, exposed for tests.
std::string format_number(double x);  // %.17g, "nan" / "inf" spelled out
std::string deficit_csv(const std::vector<DeficitRecord>& records);
std::string limit_csv(const LimitTable& table);
std::string optimizer_csv(const extremal::OptimizerReport& report);
std::string deficit_json(const std::vector<DeficitRecord>& records);
std::string limit_json(const LimitTable& table);
std::string optimizer_json(const extremal::OptimizerReport& report);

}  // namespace mto::cli
