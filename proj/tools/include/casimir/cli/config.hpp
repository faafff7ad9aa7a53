#pragma once

// Run configuration for the command-line tool. The on-disk form is a JSON
// document with sections `cavity`, `quadrature`, `sweep` and `output`;
// lengths are written in micrometres and angles in degrees, and held here
// in metres and radians.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "casimir/energy.hpp"

namespace casimir::cli {

/// Invalid or incomplete configuration. The message starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { ideal, lifshitz, uniaxial, perfect_aniso, finite, torque, sweep };
enum class Material { ideal, isotropic, uniaxial, perfect_aniso };
enum class SweepVariable { gap, chi, b_over_a };
enum class Format { csv, json };

struct SweepSpec {
  SweepVariable variable = SweepVariable::chi;
  double start = 0.0;  // metres, radians or b/a
  double stop = 0.0;
  int points = 2;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct OutputSpec {
  std::string path = "-";  // "-" is stdout
  Format format = Format::csv;
  Units units = Units::si;
};

/// Material parameters as entered; both plates share them and plate 2 is
/// turned by chi.
struct MaterialSpec {
  Material kind = Material::ideal;
  double eps = 1.0;
  double eps_par = 1.0;
  double eps_perp = 1.0;
  double axis = 0.0;
};

struct RunConfig {
  Mode mode = Mode::ideal;
  MaterialSpec material;
  double gap = 1e-6;
  double chi = 0.0;
  double eps_cavity = 1.0;
  std::optional<double> half_side;  // finite square plates of side 2b
  QuadratureSpec quadrature;
  std::optional<SweepSpec> sweep;
  OutputSpec output;

  /// Library cavity at the configured point.
  CavityConfig cavity() const;
  bool finite() const noexcept { return half_side.has_value(); }
  bool computes_torque() const noexcept { return mode == Mode::torque; }
};

RunConfig parse_config(std::string_view text);
RunConfig from_json(const nlohmann::json& doc);

/// Canonical document: every field explicit, thread count omitted so that
/// it does not enter the hash.
nlohmann::json to_json(const RunConfig& cfg);

/// FNV-1a over the compact canonical document, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

std::string to_string(Mode m);
std::string to_string(Material m);
std::string to_string(SweepVariable v);
Mode parse_mode(std::string_view name);

}  // namespace casimir::cli
