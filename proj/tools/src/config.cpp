#include "casimir/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace casimir::cli {

namespace {

using nlohmann::json;

constexpr double kMicron = 1e-6;
constexpr double kDegree = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Reads fields of one JSON object and rejects anything left unread.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (!doc.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    doc_ = &doc;
  }

  std::string path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return doc_->contains(key); }

  std::optional<double> number(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(path(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(path(key), "must be finite");
    return x;
  }

  std::optional<int> integer(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(path(key), "expected an integer");
    const auto x = v->get<long long>();
    if (x < -1000000000LL || x > 1000000000LL) fail(path(key), "out of range");
    return static_cast<int>(x);
  }

  std::optional<std::string> text(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(path(key), "expected a string");
    return v->get<std::string>();
  }

  const json* object(const std::string& key) { return take(key); }

  void finish() const {
    for (const auto& item : doc_->items())
      if (!seen_.count(item.key())) fail(path(item.key()), "unknown field");
  }

 private:
  const json* take(const std::string& key) {
    seen_.insert(key);
    const auto it = doc_->find(key);
    if (it == doc_->end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json* doc_ = nullptr;
  std::string path_;
  std::set<std::string> seen_;
};

double positive(const std::optional<double>& v, const std::string& path) {
  if (!v) fail(path, "missing required field");
  if (!(*v > 0.0)) fail(path, "must be positive");
  return *v;
}

Material parse_material(const std::string& name, const std::string& path) {
  if (name == "ideal") return Material::ideal;
  if (name == "isotropic") return Material::isotropic;
  if (name == "uniaxial") return Material::uniaxial;
  if (name == "perfect-aniso") return Material::perfect_aniso;
  fail(path, "unknown material '" + name + "'");
}

Material default_material(Mode m) {
  switch (m) {
    case Mode::lifshitz: return Material::isotropic;
    case Mode::uniaxial: return Material::uniaxial;
    case Mode::perfect_aniso:
    case Mode::torque: return Material::perfect_aniso;
    default: return Material::ideal;
  }
}

// Materials each mode accepts; the first is its default.
bool material_allowed(Mode mode, Material m) {
  switch (mode) {
    case Mode::torque: return m == Material::uniaxial || m == Material::perfect_aniso;
    case Mode::sweep: return true;
    default: return m == default_material(mode);
  }
}

void parse_cavity(Section& s, RunConfig& cfg) {
  const std::string model_name =
      s.text("material").value_or(to_string(default_material(cfg.mode)));
  const Material kind = parse_material(model_name, s.path("material"));
  if (!material_allowed(cfg.mode, kind))
    fail(s.path("material"),
         "'" + model_name + "' is not available in mode " + to_string(cfg.mode));
  cfg.material.kind = kind;

  const bool gap_swept = cfg.sweep && cfg.sweep->variable == SweepVariable::gap;
  const std::optional<double> gap = s.number("gap_um");
  if (gap || !gap_swept) cfg.gap = positive(gap, s.path("gap_um")) * kMicron;

  cfg.chi = s.number("chi_deg").value_or(0.0) * kDegree;
  if (const auto e = s.number("eps_cavity")) cfg.eps_cavity = positive(e, s.path("eps_cavity"));

  auto unused = [&](const char* key) {
    if (s.has(key))
      fail(s.path(key), std::string("not used by material ") + to_string(kind));
    s.number(key);
  };
  switch (kind) {
    case Material::isotropic:
      cfg.material.eps = positive(s.number("eps"), s.path("eps"));
      unused("eps_par");
      unused("eps_perp");
      unused("axis_deg");
      break;
    case Material::uniaxial:
      cfg.material.eps_par = positive(s.number("eps_par"), s.path("eps_par"));
      cfg.material.eps_perp = positive(s.number("eps_perp"), s.path("eps_perp"));
      cfg.material.axis = s.number("axis_deg").value_or(0.0) * kDegree;
      unused("eps");
      break;
    case Material::perfect_aniso:
      cfg.material.axis = s.number("axis_deg").value_or(0.0) * kDegree;
      unused("eps");
      unused("eps_par");
      unused("eps_perp");
      break;
    case Material::ideal:
      unused("eps");
      unused("eps_par");
      unused("eps_perp");
      unused("axis_deg");
      break;
  }

  const std::optional<double> half = s.number("half_side_um");
  const bool finite_mode = cfg.mode == Mode::finite;
  if (half) {
    if (!finite_mode && !(cfg.mode == Mode::sweep && kind == Material::ideal))
      fail(s.path("half_side_um"), "finite plates need mode finite or an ideal-plate sweep");
    cfg.half_side = positive(half, s.path("half_side_um")) * kMicron;
  } else if (finite_mode && !(cfg.sweep && cfg.sweep->variable == SweepVariable::b_over_a)) {
    fail(s.path("half_side_um"), "missing required field");
  } else if (finite_mode) {
    cfg.half_side = cfg.gap;  // replaced at every sweep point
  }
  s.finish();
}

void parse_quadrature(Section& s, QuadratureSpec& q) {
  if (const auto v = s.number("rel_tol")) {
    if (!(*v > 0.0 && *v < 1.0)) fail(s.path("rel_tol"), "must lie in (0, 1)");
    q.rel_tol = *v;
  }
  if (const auto v = s.number("abs_tol")) {
    if (!(*v >= 0.0)) fail(s.path("abs_tol"), "must be nonnegative");
    q.abs_tol = *v;
  }
  if (const auto v = s.integer("max_refinement_levels")) {
    if (*v < 1 || *v > 20) fail(s.path("max_refinement_levels"), "must lie in [1, 20]");
    q.max_refinement_levels = *v;
  }
  if (const auto v = s.integer("phi_nodes")) {
    if (*v < 8 || *v % 2 != 0) fail(s.path("phi_nodes"), "must be even and >= 8");
    q.phi_nodes = *v;
  }
  if (const auto v = s.integer("theta_nodes")) {
    if (*v < 2) fail(s.path("theta_nodes"), "must be >= 2");
    q.theta_nodes = *v;
  }
  if (const auto v = s.integer("radial_nodes")) {
    if (*v < 2) fail(s.path("radial_nodes"), "must be >= 2");
    q.radial_nodes = *v;
  }
  if (const auto v = s.number("radial_map_scale"))
    q.radial_map_scale = positive(v, s.path("radial_map_scale"));
  if (const auto v = s.text("route")) {
    if (*v == "closed-form") q.route = ReflectionRoute::closed_form;
    else if (*v == "boundary-solve") q.route = ReflectionRoute::boundary_solve;
    else fail(s.path("route"), "expected closed-form or boundary-solve");
  }
  if (const auto v = s.integer("threads")) {
    if (*v < 0) fail(s.path("threads"), "must be nonnegative");
    q.threads = static_cast<unsigned>(*v);
  }
  s.finish();
}

SweepSpec parse_sweep(Section& s) {
  SweepSpec sw;
  const auto var = s.text("variable");
  if (!var) fail(s.path("variable"), "missing required field");
  if (*var == "a") sw.variable = SweepVariable::gap;
  else if (*var == "chi") sw.variable = SweepVariable::chi;
  else if (*var == "b_over_a") sw.variable = SweepVariable::b_over_a;
  else fail(s.path("variable"), "expected a, chi or b_over_a");

  const auto start = s.number("start");
  const auto stop = s.number("stop");
  if (!start) fail(s.path("start"), "missing required field");
  if (!stop) fail(s.path("stop"), "missing required field");
  const auto points = s.integer("points");
  if (!points) fail(s.path("points"), "missing required field");
  if (*points < 2) fail(s.path("points"), "must be >= 2");
  sw.points = *points;

  const std::string spacing = s.text("spacing").value_or("linear");
  if (spacing == "log") sw.log_spacing = true;
  else if (spacing != "linear") fail(s.path("spacing"), "expected linear or log");

  const bool need_positive = sw.variable != SweepVariable::chi || sw.log_spacing;
  if (need_positive && !(*start > 0.0)) fail(s.path("start"), "must be positive");
  if (need_positive && !(*stop > 0.0)) fail(s.path("stop"), "must be positive");

  const double unit = sw.variable == SweepVariable::gap   ? kMicron
                      : sw.variable == SweepVariable::chi ? kDegree
                                                          : 1.0;
  sw.start = *start * unit;
  sw.stop = *stop * unit;
  s.finish();
  return sw;
}

OutputSpec parse_output(Section& s) {
  OutputSpec out;
  if (const auto p = s.text("path")) {
    if (p->empty()) fail(s.path("path"), "must not be empty");
    out.path = *p;
  }
  const std::string format = s.text("format").value_or("csv");
  if (format == "json") out.format = Format::json;
  else if (format != "csv") fail(s.path("format"), "expected csv or json");
  const std::string units = s.text("units").value_or("si");
  if (units == "natural") out.units = Units::natural;
  else if (units != "si") fail(s.path("units"), "expected si or natural");
  s.finish();
  return out;
}

std::string route_name(ReflectionRoute r) {
  return r == ReflectionRoute::closed_form ? "closed-form" : "boundary-solve";
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v[i] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                       : start + t * (stop - start);
  }
  // Hit the endpoints exactly.
  v.front() = start;
  v.back() = stop;
  return v;
}

CavityConfig RunConfig::cavity() const {
  CavityConfig c;
  c.gap = gap;
  c.chi = chi;
  c.eps_cavity = eps_cavity;
  PlateModel plate;
  switch (material.kind) {
    case Material::ideal: plate = IdealConductor{}; break;
    case Material::isotropic: plate = Isotropic{material.eps}; break;
    case Material::uniaxial:
      plate = UniaxialMedium{material.eps_par, material.eps_perp, material.axis};
      break;
    case Material::perfect_aniso: plate = PerfectlyAnisotropic{material.axis}; break;
  }
  c.plate1 = plate;
  c.plate2 = plate;
  if (half_side) c.geometry = FiniteSquare{*half_side};
  return c;
}

RunConfig from_json(const json& doc) {
  Section root(doc, "");
  RunConfig cfg;
  const auto mode = root.text("mode");
  if (!mode) fail("mode", "missing required field");
  try {
    cfg.mode = parse_mode(*mode);
  } catch (const ConfigError&) {
    fail("mode", "unknown mode '" + *mode + "'");
  }

  // The sweep shapes which cavity fields are required, so it is read first.
  if (const json* sw = root.object("sweep")) {
    Section s(*sw, "sweep");
    cfg.sweep = parse_sweep(s);
  } else if (cfg.mode == Mode::sweep) {
    fail("sweep", "missing required field");
  }
  if (cfg.sweep) {
    const SweepVariable v = cfg.sweep->variable;
    const bool finite = cfg.mode == Mode::finite ||
                        (doc.contains("cavity") && doc["cavity"].is_object() &&
                         doc["cavity"].contains("half_side_um"));
    if (v == SweepVariable::b_over_a && !finite)
      fail("sweep.variable", "b_over_a needs finite plates");
    if (v == SweepVariable::chi && finite)
      fail("sweep.variable", "chi has no effect on finite ideal plates");
  }

  const json empty = json::object();
  const json* cav = root.object("cavity");
  Section cs(cav ? *cav : empty, "cavity");
  parse_cavity(cs, cfg);

  if (const json* q = root.object("quadrature")) {
    Section s(*q, "quadrature");
    parse_quadrature(s, cfg.quadrature);
  }
  if (const json* o = root.object("output")) {
    Section s(*o, "output");
    cfg.output = parse_output(s);
  }
  root.finish();
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<document>: ") + e.what());
  }
  return from_json(doc);
}

json to_json(const RunConfig& cfg) {
  json cavity = json::object();
  cavity["material"] = to_string(cfg.material.kind);
  const bool gap_swept = cfg.sweep && cfg.sweep->variable == SweepVariable::gap;
  if (!gap_swept) cavity["gap_um"] = cfg.gap / kMicron;
  cavity["chi_deg"] = cfg.chi / kDegree;
  cavity["eps_cavity"] = cfg.eps_cavity;
  switch (cfg.material.kind) {
    case Material::isotropic: cavity["eps"] = cfg.material.eps; break;
    case Material::uniaxial:
      cavity["eps_par"] = cfg.material.eps_par;
      cavity["eps_perp"] = cfg.material.eps_perp;
      cavity["axis_deg"] = cfg.material.axis / kDegree;
      break;
    case Material::perfect_aniso: cavity["axis_deg"] = cfg.material.axis / kDegree; break;
    case Material::ideal: break;
  }
  if (cfg.half_side) cavity["half_side_um"] = *cfg.half_side / kMicron;

  const QuadratureSpec& q = cfg.quadrature;
  json quad = {{"rel_tol", q.rel_tol},
               {"abs_tol", q.abs_tol},
               {"max_refinement_levels", q.max_refinement_levels},
               {"phi_nodes", q.phi_nodes},
               {"theta_nodes", q.theta_nodes},
               {"radial_nodes", q.radial_nodes},
               {"radial_map_scale", q.radial_map_scale},
               {"route", route_name(q.route)}};

  json doc = {{"mode", to_string(cfg.mode)}, {"cavity", cavity}, {"quadrature", quad}};
  if (cfg.sweep) {
    const SweepSpec& s = *cfg.sweep;
    const double unit = s.variable == SweepVariable::gap   ? kMicron
                        : s.variable == SweepVariable::chi ? kDegree
                                                           : 1.0;
    doc["sweep"] = {{"variable", to_string(s.variable)},
                    {"start", s.start / unit},
                    {"stop", s.stop / unit},
                    {"points", s.points},
                    {"spacing", s.log_spacing ? "log" : "linear"}};
  }
  doc["output"] = {{"path", cfg.output.path},
                   {"format", cfg.output.format == Format::csv ? "csv" : "json"},
                   {"units", to_string(cfg.output.units)}};
  return doc;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_json(cfg).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::ideal: return "ideal";
    case Mode::lifshitz: return "lifshitz";
    case Mode::uniaxial: return "uniaxial";
    case Mode::perfect_aniso: return "perfect-aniso";
    case Mode::finite: return "finite";
    case Mode::torque: return "torque";
    case Mode::sweep: return "sweep";
  }
  return "?";
}

std::string to_string(Material m) {
  switch (m) {
    case Material::ideal: return "ideal";
    case Material::isotropic: return "isotropic";
    case Material::uniaxial: return "uniaxial";
    case Material::perfect_aniso: return "perfect-aniso";
  }
  return "?";
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::gap: return "a";
    case SweepVariable::chi: return "chi";
    case SweepVariable::b_over_a: return "b_over_a";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::ideal, Mode::lifshitz, Mode::uniaxial, Mode::perfect_aniso,
                 Mode::finite, Mode::torque, Mode::sweep})
    if (to_string(m) == name) return m;
  throw ConfigError("mode: unknown mode '" + std::string(name) + "'");
}

}  // namespace casimir::cli
