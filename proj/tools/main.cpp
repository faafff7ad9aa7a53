#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "casimir/cli/config.hpp"
#include "casimir/cli/run.hpp"

namespace {

using casimir::cli::ExitCode;
using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<double> gap_um, chi_deg, eps, eps_par, eps_perp, axis_deg, eps_cavity,
      half_side_um, rel_tol, sweep_start, sweep_stop;
  std::optional<int> threads, sweep_points;
  std::optional<std::string> material, route, sweep_var, sweep_spacing, out, format, units;
  bool print_config = false;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON run configuration; flags override its fields");
  sub.add_option("--gap-um", f.gap_um, "plate separation a in micrometres");
  sub.add_option("--chi-deg", f.chi_deg, "rotation of plate 2 in degrees");
  sub.add_option("--material", f.material, "ideal|isotropic|uniaxial|perfect-aniso");
  sub.add_option("--eps", f.eps, "isotropic plate permittivity");
  sub.add_option("--eps-par", f.eps_par, "uniaxial permittivity along the optic axis");
  sub.add_option("--eps-perp", f.eps_perp, "uniaxial permittivity across the optic axis");
  sub.add_option("--axis-deg", f.axis_deg, "optic-axis angle of plate 1 in degrees");
  sub.add_option("--eps-cavity", f.eps_cavity, "permittivity of the gap medium");
  sub.add_option("--half-side-um", f.half_side_um, "finite plates: half side b in micrometres");
  sub.add_option("--rel-tol", f.rel_tol, "relative quadrature tolerance");
  sub.add_option("--threads", f.threads, "worker threads (0: all cores)");
  sub.add_option("--route", f.route, "closed-form|boundary-solve");
  sub.add_option("--sweep-var", f.sweep_var, "a|chi|b_over_a");
  sub.add_option("--sweep-start", f.sweep_start, "first sweep value (um, deg or ratio)");
  sub.add_option("--sweep-stop", f.sweep_stop, "last sweep value");
  sub.add_option("--sweep-points", f.sweep_points, "number of sweep points");
  sub.add_option("--sweep-spacing", f.sweep_spacing, "linear|log");
  sub.add_option("--out", f.out, "output path, '-' for stdout");
  sub.add_option("--format", f.format, "csv|json");
  sub.add_option("--units", f.units, "si|natural");
  sub.add_flag("--print-config", f.print_config, "print the canonical configuration and exit");
}

template <class T>
void put(json& doc, const char* section, const char* key, const std::optional<T>& v) {
  if (!v) return;
  if (!doc.contains(section) || !doc[section].is_object()) doc[section] = json::object();
  doc[section][key] = *v;
}

json overlay(json doc, const std::string& mode, const Flags& f) {
  doc["mode"] = mode;
  put(doc, "cavity", "gap_um", f.gap_um);
  put(doc, "cavity", "chi_deg", f.chi_deg);
  put(doc, "cavity", "material", f.material);
  put(doc, "cavity", "eps", f.eps);
  put(doc, "cavity", "eps_par", f.eps_par);
  put(doc, "cavity", "eps_perp", f.eps_perp);
  put(doc, "cavity", "axis_deg", f.axis_deg);
  put(doc, "cavity", "eps_cavity", f.eps_cavity);
  put(doc, "cavity", "half_side_um", f.half_side_um);
  put(doc, "quadrature", "rel_tol", f.rel_tol);
  put(doc, "quadrature", "threads", f.threads);
  put(doc, "quadrature", "route", f.route);
  put(doc, "sweep", "variable", f.sweep_var);
  put(doc, "sweep", "start", f.sweep_start);
  put(doc, "sweep", "stop", f.sweep_stop);
  put(doc, "sweep", "points", f.sweep_points);
  put(doc, "sweep", "spacing", f.sweep_spacing);
  put(doc, "output", "path", f.out);
  put(doc, "output", "format", f.format);
  put(doc, "output", "units", f.units);
  return doc;
}

int execute(const std::string& mode, const Flags& f) {
  json doc = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      std::cerr << "error: cannot read " << f.config << '\n';
      return ExitCode::kIoError;
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
      doc = json::parse(text.str());
    } catch (const json::parse_error& e) {
      std::cerr << "config error: " << f.config << ": " << e.what() << '\n';
      return ExitCode::kConfigError;
    }
  }

  casimir::cli::RunConfig cfg;
  try {
    cfg = casimir::cli::from_json(overlay(std::move(doc), mode, f));
  } catch (const casimir::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitCode::kConfigError;
  }
  if (f.print_config) {
    std::cout << casimir::cli::to_json(cfg).dump(2) << '\n';
    return ExitCode::kOk;
  }
  // Keep stdout clean when the table goes there.
  std::ostream& log = cfg.output.path == "-" ? std::cerr : std::cout;
  return casimir::cli::run(cfg, log);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy, pressure and torque between parallel plates"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> modes[] = {
      {"ideal", "perfect conductors"},
      {"lifshitz", "isotropic dielectric plates"},
      {"uniaxial", "uniaxial plates with in-plane optic axes"},
      {"perfect-aniso", "perfectly anisotropic plates"},
      {"finite", "finite square ideal plates"},
      {"torque", "alignment torque between anisotropic plates"},
      {"sweep", "parameter sweep over a, chi or b/a"},
  };
  Flags flags;
  std::string chosen;
  for (const auto& [name, help] : modes) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(*sub, flags);
    sub->callback([&chosen, name = std::string(name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitCode::kOk : ExitCode::kConfigError;
  }
  try {
    return execute(chosen, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kComputeError;
  }
}
