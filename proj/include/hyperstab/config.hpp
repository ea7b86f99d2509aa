#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperstab/boundary.hpp"
#include "hyperstab/experiments.hpp"
#include "hyperstab/lmi.hpp"
#include "hyperstab/systems.hpp"

namespace hyperstab {

// Configuration files are INI-style:
//
//   [run]
//   experiment = saint_venant        ; saint_venant | diagonal | custom
//   dx = 0.01                        ; or nx / ny
//   cfl = 0.5
//   t_end = 3
//   weight = both                    ; exp | linear | both | dia
//   out = results
//
// Vectors and matrices are JSON arrays, e.g. a1 = [[1, 0], [0, -1]].

enum class ExperimentKind { SaintVenant, Diagonal, Custom };

const char* to_string(ExperimentKind k);
ExperimentKind parse_experiment(const std::string& s);

const char* to_string(SvWeightSet w);
SvWeightSet parse_weight_set(const std::string& s);

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::SaintVenant;
  GridSpec grid{0.01, 0, 0};
  double cfl = 0.5;
  double t_end = 3.0;
  InitialData init{InitKind::Constant, {1.0, 1.0, 1.0}, {1.0, 1.0}};
  std::optional<double> rate;  ///< comparison decay rate, experiment default when unset
  SvWeightSet weights = SvWeightSet::Both;
  std::string out = "out";

  SaintVenantParams sv;
  std::optional<SvControlGains> gains;
  double c_l = 4.0;

  // custom experiment
  std::vector<std::vector<double>> a1, a2, b;
  double width = 1.0;
  double height = 1.0;
  std::array<CustomBoundary, 4> boundary{};
  /// Weight exp(m . x + c0) of the custom run; potential for lmi-check.
  std::optional<PotentialSpec> potential;

  /// Defaults of the given experiment (grid, init, rate).
  static RunConfig defaults(ExperimentKind kind);

  /// Throws InvalidInput / InvalidParams naming the offending field.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws InvalidInput with the file name, line or key on parse errors.
RunConfig parse_run_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);
std::string serialize(const RunConfig& c);

ExperimentSetup make_setup(const RunConfig& c);

/// System described by a config: the Saint-Venant or diagonal system, or the
/// [custom] matrices.
SystemSpec config_system(const RunConfig& c);

/// SSC block system from an INI file with an [ssc] section:
/// n, r, alpha, x1, x2, e and the blocks a1, a2, b1, b2, c1, c2, d1, d2.
SscSystem parse_ssc(const std::string& text, const std::string& source = "<ssc>");
SscSystem load_ssc(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace hyperstab
