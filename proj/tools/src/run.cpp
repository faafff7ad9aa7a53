#include "casimir/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::cli {

namespace {

constexpr double kMicron = 1e-6;
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string with_unit(const std::string& name, Quantity q, Units u) {
  return name + "[" + unit_label(q, u) + "]";
}

bool within(double err, double scale, const QuadratureSpec& q) {
  // Matches the convergence test of the library, with a little slack for
  // the final multiplication by physical prefactors.
  return err <= (q.rel_tol * std::abs(scale) + q.abs_tol) * (1.0 + 1e-9);
}

RunConfig at_point(const RunConfig& cfg, double value) {
  RunConfig p = cfg;
  if (!cfg.sweep) return p;
  switch (cfg.sweep->variable) {
    case SweepVariable::gap: p.gap = value; break;  // half_side stays fixed
    case SweepVariable::chi: p.chi = value; break;
    case SweepVariable::b_over_a: p.half_side = value * p.gap; break;
  }
  return p;
}

Row finite_row(const RunConfig& p) {
  const Units u = p.output.units;
  const double a = u == Units::natural ? 1.0 : p.gap;
  const double b = u == Units::natural ? *p.half_side / p.gap : *p.half_side;
  const EnergyResult e = finite_plate_energy(a, b, u);
  const double plain = energy_ideal_closed(a, u).value * 4.0 * b * b;
  Row r;
  r.values = {p.gap / kMicron, *p.half_side / kMicron, *p.half_side / p.gap,
              e.value,         e.error_estimate,       plain,
              e.value / plain, static_cast<double>(e.evaluations)};
  return r;
}

Row infinite_row(const RunConfig& p, unsigned threads) {
  const Units u = p.output.units;
  CavityConfig c = p.cavity();
  if (u == Units::natural) c.gap = 1.0;
  QuadratureSpec q = p.quadrature;
  q.threads = threads;

  const EnergyResult e = energy_per_area(c, q, u);
  const double e0 = energy_ideal_closed(c.gap, u).value;
  Row r;
  bool ok = within(e.error_estimate, e.value, q);
  if (p.computes_torque()) {
    const EnergyResult m = torque_per_area(c, q, u);
    ok = ok && within(m.error_estimate, std::max(std::abs(m.value), std::abs(e.value)), q);
    r.values = {p.gap / kMicron, p.chi, m.value, m.error_estimate, e.value,
                e.error_estimate, e.value / e0,
                static_cast<double>(e.evaluations + m.evaluations)};
  } else {
    const EnergyResult pr = pressure(c, q, u);
    ok = ok && within(pr.error_estimate, pr.value, q);
    r.values = {p.gap / kMicron, p.chi, e.value, e.error_estimate, pr.value,
                pr.error_estimate, e.value / e0,
                static_cast<double>(e.evaluations + pr.evaluations)};
  }
  if (!ok) r.flag = "above_tol";
  return r;
}

// Leading columns that locate the point; the rest are results.
std::size_t coordinate_columns(const RunConfig& cfg) { return cfg.finite() ? 3 : 2; }

Row aborted(const RunConfig& cfg, const RunConfig& p, const std::string& why) {
  Row r;
  r.values.assign(columns(cfg).size(), kMissing);
  r.values[0] = p.gap / kMicron;
  if (cfg.finite()) {
    r.values[1] = *p.half_side / kMicron;
    r.values[2] = *p.half_side / p.gap;
  } else {
    r.values[1] = p.chi;
  }
  r.flag = "aborted";
  r.reason = why;
  return r;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string describe_point(const RunConfig& cfg, const Row& r) {
  std::string s = "a=" + format_short(r.values[0]) + "um";
  if (cfg.finite())
    s += " b/a=" + format_short(r.values[2]);
  else
    s += " chi=" + format_short(r.values[1]) + "rad";
  return s;
}

}  // namespace

std::vector<std::string> columns(const RunConfig& cfg) {
  const Units u = cfg.output.units;
  if (cfg.finite())
    return {"gap_um",
            "half_side_um",
            "b_over_a",
            with_unit("energy", Quantity::energy, u),
            with_unit("energy_error", Quantity::energy, u),
            with_unit("energy_infinite_plates", Quantity::energy, u),
            "eta",
            "evaluations"};
  if (cfg.computes_torque())
    return {"gap_um",
            "chi_rad",
            with_unit("torque_per_area", Quantity::torque_per_area, u),
            with_unit("torque_error", Quantity::torque_per_area, u),
            with_unit("energy_per_area", Quantity::energy_per_area, u),
            with_unit("energy_error", Quantity::energy_per_area, u),
            "e_over_e0",
            "evaluations"};
  return {"gap_um",
          "chi_rad",
          with_unit("energy_per_area", Quantity::energy_per_area, u),
          with_unit("energy_error", Quantity::energy_per_area, u),
          with_unit("pressure", Quantity::pressure, u),
          with_unit("pressure_error", Quantity::pressure, u),
          "e_over_e0",
          "evaluations"};
}

Table compute(const RunConfig& cfg) {
  const std::vector<double> points =
      cfg.sweep ? cfg.sweep->values() : std::vector<double>{kMissing};
  const unsigned threads = cfg.quadrature.threads;
  // Points run side by side; a lone point parallelizes internally instead.
  const bool many = points.size() > 1;

  Table t;
  t.columns = columns(cfg);
  t.rows.resize(points.size());
  parallel_for(points.size(), many ? threads : 1u, [&](std::size_t i) {
    const RunConfig p = at_point(cfg, points[i]);
    try {
      t.rows[i] = p.finite() ? finite_row(p) : infinite_row(p, many ? 1u : threads);
    } catch (const ConvergenceError& e) {
      t.rows[i] = aborted(cfg, p, std::string("no convergence: ") + e.what());
    } catch (const std::exception& e) {
      t.rows[i] = aborted(cfg, p, e.what());
    }
  });
  for (const Row& r : t.rows)
    if (r.flag == "aborted") t.computational_error = true;
  return t;
}

void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t) {
  os << "# generator: casimir\n";
  os << "# mode: " << to_string(cfg.mode) << '\n';
  os << "# material: " << to_string(cfg.material.kind) << '\n';
  os << "# config_hash: fnv1a64:" << config_hash(cfg) << '\n';
  os << "# units: " << to_string(cfg.output.units) << '\n';
  os << "# rel_tol: " << nlohmann::json(cfg.quadrature.rel_tol).dump() << '\n';
  if (cfg.finite()) os << "# geometry: square plates of side 2b, half_side = b\n";
  if (cfg.output.units == Units::natural)
    os << "# natural units: hbar = c = 1, lengths in units of the gap a\n";
  os << "# config: " << to_json(cfg).dump() << '\n';
  os << "# columns:";
  for (const std::string& c : t.columns) os << ' ' << c;
  os << " flag\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (!t.rows[i].reason.empty()) os << "# row " << i << " aborted: " << t.rows[i].reason << '\n';

  for (const std::string& c : t.columns) os << c << ',';
  os << "flag\n";
  for (const Row& r : t.rows) {
    for (double v : r.values) os << format_number(v) << ',';
    os << r.flag << '\n';
  }
}

void write_json(std::ostream& os, const RunConfig& cfg, const Table& t) {
  nlohmann::ordered_json doc;
  doc["generator"] = "casimir";
  doc["mode"] = to_string(cfg.mode);
  doc["material"] = to_string(cfg.material.kind);
  doc["config_hash"] = "fnv1a64:" + config_hash(cfg);
  doc["units"] = to_string(cfg.output.units);
  doc["rel_tol"] = cfg.quadrature.rel_tol;
  doc["config"] = to_json(cfg);
  nlohmann::ordered_json cols = t.columns;
  cols.push_back("flag");
  doc["columns"] = cols;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    nlohmann::ordered_json row;
    for (std::size_t j = 0; j < r.values.size(); ++j) {
      if (std::isnan(r.values[j]))
        row[t.columns[j]] = nullptr;
      else
        row[t.columns[j]] = r.values[j];
    }
    row["flag"] = r.flag;
    if (!r.reason.empty()) row["reason"] = r.reason;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

void write_summary(std::ostream& os, const RunConfig& cfg, const Table& t) {
  for (const Row& r : t.rows)
    if (r.flag == "aborted")
      os << "aborted at " << describe_point(cfg, r) << " (mode " << to_string(cfg.mode)
         << "): " << r.reason << '\n';

  if (t.rows.size() != 1) {
    std::size_t flagged = 0, failed = 0;
    for (const Row& r : t.rows) {
      flagged += r.flag == "above_tol";
      failed += r.flag == "aborted";
    }
    os << to_string(cfg.mode) << ": " << t.rows.size() << " rows, " << flagged
       << " above tolerance, " << failed << " aborted\n";
    return;
  }
  const Row& r = t.rows.front();
  if (r.flag == "aborted") return;
  // Result columns come as (value, error) pairs followed by plain values.
  const std::size_t first = coordinate_columns(cfg);
  for (std::size_t j = first; j + 1 < t.columns.size(); ++j) {
    const std::string& name = t.columns[j];
    const bool paired = j + 1 < t.columns.size() &&
                        t.columns[j + 1].find("_error") != std::string::npos &&
                        name.find("_error") == std::string::npos;
    if (name.find("_error") != std::string::npos) continue;
    os << name << " = " << format_short(r.values[j]);
    if (paired) os << " +- " << format_short(r.values[j + 1]);
    os << '\n';
  }
  if (r.flag != "ok") os << "flag: " << r.flag << '\n';
}

int run(const RunConfig& cfg, std::ostream& log) {
  const Table t = compute(cfg);
  auto emit = [&](std::ostream& os) {
    if (cfg.output.format == Format::csv)
      write_csv(os, cfg, t);
    else
      write_json(os, cfg, t);
    os.flush();
    return static_cast<bool>(os);
  };
  bool written = false;
  if (cfg.output.path == "-") {
    written = emit(std::cout);
  } else {
    std::ofstream file(cfg.output.path, std::ios::binary | std::ios::trunc);
    written = file && emit(file);
  }
  write_summary(log, cfg, t);
  if (!written) {
    log << "error: cannot write " << cfg.output.path << '\n';
    return kIoError;
  }
  return t.computational_error ? kComputeError : kOk;
}

}  // namespace casimir::cli
