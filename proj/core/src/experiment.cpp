#include "ibcsplit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/reference_cache.hpp"

namespace ibc {

using nlohmann::json;

namespace {

constexpr double domain_min = 0.0;
constexpr double domain_max = 1.0;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&key](const char* a) { return key == a; }) == allowed.end())
      throw config_error("unknown key \"" + key + "\" in " + context, context + "." + key);
  }
}

Side parse_side(const std::string& s, const std::string& context) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  if (s == "bottom") return Side::bottom;
  if (s == "top") return Side::top;
  throw config_error("invalid face side \"" + s + "\"", context + ".side");
}

double require_number(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key) || !j[key].is_number())
    throw config_error(std::string("missing or non-numeric \"") + key + "\" in " + context,
                       context + "." + key);
  return j[key].get<double>();
}

ReactionTerm parse_reaction(const json& j, const std::string& context) {
  reject_unknown_keys(j, {"kind", "params"}, context);
  const std::string kind = j.value("kind", "square");
  const json params = j.value("params", json::object());
  if (kind == "square") {
    reject_unknown_keys(params, {}, context + ".params");
    return ReactionTerm::square();
  }
  if (kind == "logistic") {
    reject_unknown_keys(params, {"rate", "capacity"}, context + ".params");
    return ReactionTerm::logistic(params.value("rate", 1.0), params.value("capacity", 1.0));
  }
  if (kind == "custom-polynomial") {
    reject_unknown_keys(params, {"coeffs"}, context + ".params");
    std::vector<double> coeffs;
    if (params.contains("coeffs")) {
      if (!params["coeffs"].is_array())
        throw config_error("coeffs must be an array", context + ".params.coeffs");
      coeffs = params["coeffs"].get<std::vector<double>>();
    }
    return ReactionTerm::polynomial(std::move(coeffs));
  }
  throw config_error("unknown reaction kind \"" + kind + "\"", context + ".kind");
}

FaceSpec parse_face(const json& j, const std::string& context, const ExperimentSpec& base) {
  reject_unknown_keys(j, {"side", "alpha", "beta", "data"}, context);
  if (!j.contains("side") || !j["side"].is_string())
    throw config_error("face entry needs a string \"side\"", context + ".side");
  FaceSpec f;
  f.side = parse_side(j["side"].get<std::string>(), context);
  // start from the preset's coefficients for that side
  for (const FaceSpec& b : base.faces)
    if (b.side == f.side) f = b;
  if (j.contains("alpha")) f.alpha = require_number(j, "alpha", context);
  if (j.contains("beta")) f.beta = require_number(j, "beta", context);
  if (f.alpha == 0.0 && f.beta == 0.0)
    throw config_error("degenerate face (alpha = beta = 0)", context);
  if (j.contains("data")) {
    const json& d = j["data"];
    if (d.is_string()) {
      if (d.get<std::string>() != "from_trace")
        throw config_error("data must be \"from_trace\", a number, or {value|values}",
                           context + ".data");
      f.mode = DataMode::from_trace;
      f.values.clear();
    } else if (d.is_number()) {
      f.mode = DataMode::explicit_values;
      f.values = {d.get<double>()};
    } else if (d.is_object()) {
      reject_unknown_keys(d, {"value", "values"}, context + ".data");
      f.mode = DataMode::explicit_values;
      if (d.contains("value") && !d.contains("values")) {
        f.values = {d["value"].get<double>()};
      } else if (d.contains("values") && !d.contains("value")) {
        f.values = d["values"].get<std::vector<double>>();
        if (f.values.empty())
          throw config_error("data.values must not be empty", context + ".data.values");
      } else {
        throw config_error("data object needs exactly one of value/values", context + ".data");
      }
    } else {
      throw config_error("invalid data entry", context + ".data");
    }
  }
  return f;
}

void validate_spec(const ExperimentSpec& spec) {
  if (!find_preset(spec.initial_preset))
    throw config_error("unknown initial preset \"" + spec.initial_preset + "\"",
                       "initial.preset");
  if (!(spec.t_end > 0.0)) throw config_error("t_end must be positive", "t_end");
  if (spec.taus.empty()) throw config_error("taus must not be empty", "taus");
  for (std::size_t i = 0; i < spec.taus.size(); ++i) {
    if (!(spec.taus[i] > 0.0)) throw config_error("taus must all be positive", "taus");
    if (i > 0 && !(spec.taus[i] < spec.taus[i - 1]))
      throw config_error("taus must be strictly decreasing", "taus");
  }
  if (spec.dimension != 1 && spec.dimension != 2)
    throw config_error("dimension must be 1 or 2", "dimension");
  if (spec.n_interior_x < 2 || (spec.dimension == 2 && spec.n_interior_y < 2))
    throw config_error("grid needs at least 2 interior nodes per direction", "grid");
  if (!(spec.reference.abs_tol > 0.0) || !(spec.reference.rel_tol > 0.0))
    throw config_error("reference tolerances must be positive", "reference");

  std::set<Side> seen;
  for (const FaceSpec& f : spec.faces) {
    if (spec.dimension == 1 && (f.side == Side::bottom || f.side == Side::top))
      throw config_error("1D experiments have no bottom/top faces", "faces");
    if (!seen.insert(f.side).second)
      throw config_error(std::string("duplicate face \"") + side_name(f.side) + "\"", "faces");
  }
  const std::size_t expected = spec.dimension == 1 ? 2 : 4;
  if (seen.size() != expected)
    throw config_error("expected " + std::to_string(expected) + " distinct faces", "faces");
}

std::string hexfloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

const FaceSpec& face_of(const ExperimentSpec& spec, Side side) {
  for (const FaceSpec& f : spec.faces)
    if (f.side == side) return f;
  throw std::logic_error("missing face");
}

/// Resolve one face to a concrete FaceBC whose data is constant (1D) or
/// per-node samples at the tangential unknowns (2D).
FaceBC resolve_face(const FaceSpec& f, const FaceBC& preset_traced, Eigen::Index n_tangential,
                    const Grid1D* tangential_grid) {
  FaceBC bc{f.alpha, f.beta, FaceData::constant(0.0)};
  if (f.mode == DataMode::explicit_values) {
    if (f.values.size() == 1) {
      bc.data = FaceData::constant(f.values[0]);
    } else {
      if (static_cast<Eigen::Index>(f.values.size()) != n_tangential)
        throw config_error("face \"" + std::string(side_name(f.side)) + "\": expected " +
                               std::to_string(n_tangential) + " data samples, got " +
                               std::to_string(f.values.size()),
                           std::string("faces.") + side_name(f.side) + ".data.values");
      bc.data = FaceData::samples(f.values);
    }
    return bc;
  }
  // trace mode: sample the analytic trace of the preset field
  if (tangential_grid == nullptr) {
    bc.data = FaceData::constant(preset_traced.data.at(0.0, 0, 1));
  } else {
    std::vector<double> samples(static_cast<std::size_t>(n_tangential));
    for (Eigen::Index k = 0; k < n_tangential; ++k)
      samples[static_cast<std::size_t>(k)] =
          preset_traced.data.at(tangential_grid->coord(k), k, n_tangential);
    bc.data = FaceData::samples(std::move(samples));
  }
  return bc;
}

void append_face_canonical(std::ostringstream& os, const char* name, const FaceBC& bc,
                           Eigen::Index n_tangential, const Grid1D* tangential_grid) {
  os << name << "{a=" << hexfloat(bc.alpha) << ",b=" << hexfloat(bc.beta) << ",d=[";
  for (Eigen::Index k = 0; k < n_tangential; ++k) {
    const double coord = tangential_grid ? tangential_grid->coord(k) : 0.0;
    os << (k ? "," : "") << hexfloat(bc.data.at(coord, k, n_tangential));
  }
  os << "]};";
}

void append_reaction_canonical(std::ostringstream& os, const ReactionTerm& f) {
  os << "reaction{" << f.name() << ",rate=" << hexfloat(f.rate)
     << ",cap=" << hexfloat(f.capacity) << ",coeffs=[";
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    os << (i ? "," : "") << hexfloat(f.coeffs[i]);
  os << "]};";
}

}  // namespace

ExperimentSpec spec_from_preset(std::string_view id) {
  const Preset* p = find_preset(id);
  if (!p) throw config_error("unknown preset \"" + std::string(id) + "\"", "initial.preset");
  ExperimentSpec spec;
  spec.name = p->id;
  spec.dimension = p->dimension;
  spec.n_interior_x = p->default_n_interior_x;
  spec.n_interior_y = p->default_n_interior_y;
  spec.initial_preset = p->id;
  spec.reaction = p->reaction;
  spec.t_end = p->t_end;
  spec.taus = p->default_taus;
  spec.schemes = {SchemeKind::classic_strang, SchemeKind::ibc_strang};
  spec.faces = {FaceSpec{Side::left, p->left.alpha, p->left.beta, DataMode::from_trace, {}},
                FaceSpec{Side::right, p->right.alpha, p->right.beta, DataMode::from_trace, {}}};
  if (p->dimension == 2) {
    spec.faces.push_back(
        FaceSpec{Side::bottom, p->bottom.alpha, p->bottom.beta, DataMode::from_trace, {}});
    spec.faces.push_back(
        FaceSpec{Side::top, p->top.alpha, p->top.beta, DataMode::from_trace, {}});
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("config parse error in " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");

  reject_unknown_keys(j,
                      {"name", "dimension", "grid", "faces", "reaction", "initial", "t_end",
                       "taus", "schemes", "reference"},
                      "config");

  if (!j.contains("initial") || !j["initial"].is_object())
    throw config_error("config needs an \"initial\" object", "initial");
  reject_unknown_keys(j["initial"], {"preset", "params"}, "initial");
  if (!j["initial"].contains("preset") || !j["initial"]["preset"].is_string())
    throw config_error("initial needs a string \"preset\"", "initial.preset");
  reject_unknown_keys(j["initial"].value("params", json::object()), {}, "initial.params");

  ExperimentSpec spec = spec_from_preset(j["initial"]["preset"].get<std::string>());
  spec.name = j.value("name", spec.name);

  if (j.contains("dimension")) {
    const int dim = j["dimension"].get<int>();
    if (dim != spec.dimension)
      throw config_error("dimension " + std::to_string(dim) + " does not match preset \"" +
                             spec.initial_preset + "\"",
                         "dimension");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown_keys(g, {"n_interior", "n_interior_x", "n_interior_y"}, "grid");
    if (g.contains("n_interior")) {
      spec.n_interior_x = g["n_interior"].get<Eigen::Index>();
      if (spec.dimension == 2) spec.n_interior_y = spec.n_interior_x;
    }
    if (g.contains("n_interior_x")) spec.n_interior_x = g["n_interior_x"].get<Eigen::Index>();
    if (g.contains("n_interior_y")) spec.n_interior_y = g["n_interior_y"].get<Eigen::Index>();
  }
  if (j.contains("faces")) {
    if (!j["faces"].is_array()) throw config_error("faces must be an array", "faces");
    std::size_t idx = 0;
    for (const json& fj : j["faces"]) {
      const std::string context = "faces[" + std::to_string(idx++) + "]";
      const FaceSpec f = parse_face(fj, context, spec);
      auto it = std::find_if(spec.faces.begin(), spec.faces.end(),
                             [&f](const FaceSpec& b) { return b.side == f.side; });
      if (it != spec.faces.end())
        *it = f;
      else
        spec.faces.push_back(f);
    }
  }
  if (j.contains("reaction")) spec.reaction = parse_reaction(j["reaction"], "reaction");
  if (j.contains("t_end")) spec.t_end = require_number(j, "t_end", "config");
  if (j.contains("taus")) {
    if (!j["taus"].is_array()) throw config_error("taus must be an array", "taus");
    spec.taus = j["taus"].get<std::vector<double>>();
  }
  if (j.contains("schemes")) {
    if (!j["schemes"].is_array()) throw config_error("schemes must be an array", "schemes");
    spec.schemes.clear();
    for (const json& s : j["schemes"]) {
      const auto k = scheme_from_name(s.is_string() ? s.get<std::string>() : "");
      if (!k) throw config_error("unknown scheme \"" + s.dump() + "\"", "schemes");
      spec.schemes.push_back(*k);
    }
  }
  if (j.contains("reference")) {
    const json& ref = j["reference"];
    reject_unknown_keys(ref, {"abs_tol", "rel_tol", "max_steps"}, "reference");
    if (ref.contains("abs_tol")) spec.reference.abs_tol = ref["abs_tol"].get<double>();
    if (ref.contains("rel_tol")) spec.reference.rel_tol = ref["rel_tol"].get<double>();
    if (ref.contains("max_steps")) spec.reference.max_steps = ref["max_steps"].get<long>();
  }

  validate_spec(spec);
  return spec;
}

PreparedExperiment prepare_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const Preset& preset = *find_preset(spec.initial_preset);

  PreparedExperiment prep;
  prep.reaction = spec.reaction;
  prep.t_end = spec.t_end;

  std::ostringstream canon;
  canon << "v1;dim=" << spec.dimension << ";preset=" << spec.initial_preset << ";";

  if (spec.dimension == 1) {
    const auto& field = std::get<ScalarField1D>(preset.initial);
    FaceBC traced_left{face_of(spec, Side::left).alpha, face_of(spec, Side::left).beta,
                       FaceData::constant(0.0)};
    FaceBC traced_right{face_of(spec, Side::right).alpha, face_of(spec, Side::right).beta,
                        FaceData::constant(0.0)};
    boundary_data_from_trace(traced_left, traced_right, field, domain_min, domain_max);

    const Grid1D grid =
        build_grid_1d(domain_min, domain_max, spec.n_interior_x, traced_left, traced_right);
    const FaceBC left = resolve_face(face_of(spec, Side::left), traced_left, 1, nullptr);
    const FaceBC right = resolve_face(face_of(spec, Side::right), traced_right, 1, nullptr);

    prep.op = assemble_operator_1d(grid, EllipticCoefficients1D::laplacian(), left, right);
    prep.u0 = sample_field(field, grid);
    prep.nx = grid.n_unknowns;
    prep.hx = grid.h;

    canon << "nx=" << grid.n_unknowns << ";hx=" << hexfloat(grid.h) << ";";
    append_face_canonical(canon, "left", left, 1, nullptr);
    append_face_canonical(canon, "right", right, 1, nullptr);
  } else {
    const auto& field = std::get<ScalarField2D>(preset.initial);
    Faces2D traced{{face_of(spec, Side::left).alpha, face_of(spec, Side::left).beta, {}},
                   {face_of(spec, Side::right).alpha, face_of(spec, Side::right).beta, {}},
                   {face_of(spec, Side::bottom).alpha, face_of(spec, Side::bottom).beta, {}},
                   {face_of(spec, Side::top).alpha, face_of(spec, Side::top).beta, {}}};
    boundary_data_from_trace(traced, field, domain_min, domain_max, domain_min, domain_max);

    const Grid2D grid = build_grid_2d(domain_min, domain_max, domain_min, domain_max,
                                      spec.n_interior_x, spec.n_interior_y, traced);
    Faces2D faces;
    faces.left = resolve_face(face_of(spec, Side::left), traced.left, grid.y.n_unknowns, &grid.y);
    faces.right =
        resolve_face(face_of(spec, Side::right), traced.right, grid.y.n_unknowns, &grid.y);
    faces.bottom =
        resolve_face(face_of(spec, Side::bottom), traced.bottom, grid.x.n_unknowns, &grid.x);
    faces.top = resolve_face(face_of(spec, Side::top), traced.top, grid.x.n_unknowns, &grid.x);

    prep.op = assemble_laplacian_2d(grid, faces);
    prep.u0 = sample_field(field, grid);
    prep.nx = grid.x.n_unknowns;
    prep.ny = grid.y.n_unknowns;
    prep.hx = grid.x.h;
    prep.hy = grid.y.h;

    canon << "nx=" << grid.x.n_unknowns << ";ny=" << grid.y.n_unknowns
          << ";hx=" << hexfloat(grid.x.h) << ";hy=" << hexfloat(grid.y.h) << ";";
    append_face_canonical(canon, "left", faces.left, grid.y.n_unknowns, &grid.y);
    append_face_canonical(canon, "right", faces.right, grid.y.n_unknowns, &grid.y);
    append_face_canonical(canon, "bottom", faces.bottom, grid.x.n_unknowns, &grid.x);
    append_face_canonical(canon, "top", faces.top, grid.x.n_unknowns, &grid.x);
  }

  append_reaction_canonical(canon, spec.reaction);
  canon << "t_end=" << hexfloat(spec.t_end) << ";abs_tol=" << hexfloat(spec.reference.abs_tol)
        << ";rel_tol=" << hexfloat(spec.reference.rel_tol) << ";";
  prep.canonical = canon.str();

  prep.plan = make_plan(prep.op);
  return prep;
}

OrderEstimate estimate_order(const std::vector<std::pair<double, double>>& tau_error) {
  OrderEstimate est;
  const std::size_t n = tau_error.size();
  est.pairwise.assign(n, std::nullopt);
  est.admissible.assign(n, false);

  std::size_t n_admissible = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [tau, err] = tau_error[i];
    if (!(tau > 0.0)) throw std::invalid_argument("estimate_order: tau must be positive");
    if (std::isfinite(err) && err > order_error_floor) {
      est.admissible[i] = true;
      ++n_admissible;
    }
  }
  if (n_admissible < 2)
    throw std::invalid_argument("estimate_order: fewer than 2 admissible (tau, error) pairs");

  for (std::size_t i = 1; i < n; ++i) {
    if (!est.admissible[i - 1] || !est.admissible[i]) continue;
    const auto& [tau_prev, err_prev] = tau_error[i - 1];
    const auto& [tau_cur, err_cur] = tau_error[i];
    est.pairwise[i] = std::log(err_prev / err_cur) / std::log(tau_prev / tau_cur);
  }

  // least-squares slope of log(e) vs log(tau) over the 4 smallest admissible tau
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n; ++i)
    if (est.admissible[i]) pts.push_back(tau_error[i]);
  std::sort(pts.begin(), pts.end());
  if (pts.size() > 4) pts.resize(4);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [tau, err] : pts) {
    const double x = std::log(tau), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  est.tail_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return est;
}

ConvergenceReport run_convergence_study(const ExperimentSpec& spec, const StudyOptions& opts) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  const auto seconds_since = [](clock::time_point from) {
    return std::chrono::duration<double>(clock::now() - from).count();
  };

  const PreparedExperiment prep = prepare_experiment(spec);

  ConvergenceReport report;
  report.meta.name = spec.name;
  report.meta.dimension = spec.dimension;
  report.meta.nx = prep.nx;
  report.meta.ny = prep.ny;
  report.meta.hx = prep.hx;
  report.meta.hy = prep.hy;
  report.meta.reaction = spec.reaction.name();
  report.meta.t_end = spec.t_end;
  report.meta.ref_abs_tol = spec.reference.abs_tol;
  report.meta.ref_rel_tol = spec.reference.rel_tol;

  const ReferenceCache cache(opts.cache_dir, opts.use_cache);
  Eigen::VectorXd u_ref;
  const auto t_ref = clock::now();
  if (auto hit = cache.lookup(prep.canonical)) {
    u_ref = std::move(*hit);
    report.meta.reference_from_cache = true;
  } else {
    u_ref = reference_solve(prep.op, spec.reaction, prep.u0, spec.t_end, spec.reference);
    cache.store(prep.canonical, spec.reference.abs_tol, spec.reference.rel_tol, u_ref);
  }
  report.meta.reference_seconds = seconds_since(t_ref);

  for (SchemeKind scheme : spec.schemes) {
    SchemeSeries series;
    series.scheme = scheme;
    for (double tau : spec.taus) {
      const long n_steps = std::max(1L, std::lround(spec.t_end / tau));
      series.taus.push_back(tau);
      try {
        const Eigen::VectorXd u =
            integrate(scheme, prep.op, prep.plan, spec.reaction, prep.u0, spec.t_end, n_steps);
        series.errors.push_back((u - u_ref).lpNorm<Eigen::Infinity>());
        series.failures.emplace_back();
      } catch (const std::exception& e) {
        series.errors.push_back(std::numeric_limits<double>::quiet_NaN());
        series.failures.emplace_back(e.what());
      }
    }
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < series.taus.size(); ++i)
      pairs.emplace_back(series.taus[i], series.errors[i]);
    try {
      series.order = estimate_order(pairs);
    } catch (const std::invalid_argument&) {
      series.order.pairwise.assign(series.taus.size(), std::nullopt);
      series.order.admissible.assign(series.taus.size(), false);
      series.order.tail_slope = std::numeric_limits<double>::quiet_NaN();
    }
    report.series.push_back(std::move(series));
  }

  report.meta.total_seconds = seconds_since(t_start);
  return report;
}

namespace {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json series_to_json(const SchemeSeries& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.taus.size(); ++i) {
    json row;
    row["tau"] = s.taus[i];
    if (s.failures[i].empty())
      row["error_inf"] = s.errors[i];
    else
      row["error_inf"] = nullptr;
    row["pairwise_order"] =
        s.order.pairwise[i] ? json(*s.order.pairwise[i]) : json(nullptr);
    row["below_floor"] = s.failures[i].empty() && !s.order.admissible[i];
    if (!s.failures[i].empty()) row["failure"] = s.failures[i];
    rows.push_back(std::move(row));
  }
  json out;
  out["scheme"] = std::string(scheme_config_name(s.scheme));
  if (std::isfinite(s.order.tail_slope))
    out["tail_slope"] = s.order.tail_slope;
  else
    out["tail_slope"] = nullptr;
  out["rows"] = std::move(rows);
  return out;
}

SchemeSeries series_from_json(const json& j) {
  SchemeSeries s;
  const auto scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (!scheme) throw config_error("unknown scheme in report");
  s.scheme = *scheme;
  s.order.tail_slope = j.at("tail_slope").is_null()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : j.at("tail_slope").get<double>();
  for (const json& row : j.at("rows")) {
    s.taus.push_back(row.at("tau").get<double>());
    if (row.at("error_inf").is_null()) {
      s.errors.push_back(std::numeric_limits<double>::quiet_NaN());
      s.failures.push_back(row.value("failure", "failed"));
    } else {
      s.errors.push_back(row.at("error_inf").get<double>());
      s.failures.emplace_back();
    }
    s.order.pairwise.push_back(row.at("pairwise_order").is_null()
                                   ? std::nullopt
                                   : std::optional<double>(row.at("pairwise_order").get<double>()));
    s.order.admissible.push_back(!row.value("below_floor", false) &&
                                 !row.at("error_inf").is_null());
  }
  return s;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const ConvergenceReport& report,
                                               std::string_view format,
                                               const std::filesystem::path& out_dir) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("emit_report: format must be csv or json");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                             ec.message());

  std::vector<std::filesystem::path> written;

  for (const SchemeSeries& s : report.series) {
    const std::string stem =
        report.meta.name + "_" + std::string(scheme_config_name(s.scheme));
    if (format == "csv") {
      std::ostringstream os;
      os << "tau,error_inf,pairwise_order\n";
      for (std::size_t i = 0; i < s.taus.size(); ++i) {
        if (!s.failures[i].empty()) continue;  // failures live in the summary
        os << fmt_full(s.taus[i]) << "," << fmt_full(s.errors[i]) << ",";
        if (s.order.pairwise[i]) os << fmt_full(*s.order.pairwise[i]);
        os << "\n";
      }
      const auto path = out_dir / (stem + ".csv");
      write_text_file(path, os.str());
      written.push_back(path);
    } else {
      const auto path = out_dir / (stem + ".json");
      write_text_file(path, series_to_json(s).dump(2) + "\n");
      written.push_back(path);
    }
  }

  // summary carries the full report (metadata + all series)
  json summary;
  summary["name"] = report.meta.name;
  summary["dimension"] = report.meta.dimension;
  summary["grid"] = {{"nx", report.meta.nx},
                     {"ny", report.meta.ny},
                     {"hx", report.meta.hx},
                     {"hy", report.meta.hy}};
  summary["reaction"] = report.meta.reaction;
  summary["t_end"] = report.meta.t_end;
  summary["reference"] = {{"abs_tol", report.meta.ref_abs_tol},
                          {"rel_tol", report.meta.ref_rel_tol},
                          {"from_cache", report.meta.reference_from_cache},
                          {"seconds", report.meta.reference_seconds}};
  summary["wall_seconds"] = report.meta.total_seconds;
  json schemes = json::object();
  for (const SchemeSeries& s : report.series)
    schemes[std::string(scheme_config_name(s.scheme))] = series_to_json(s);
  summary["schemes"] = std::move(schemes);

  const auto summary_path = out_dir / (report.meta.name + "_summary.json");
  write_text_file(summary_path, summary.dump(2) + "\n");
  written.push_back(summary_path);

  // plot-data: tau vs error per scheme, one file per study panel
  if (!report.series.empty()) {
    std::ostringstream os;
    os << "tau";
    for (const SchemeSeries& s : report.series) os << "," << scheme_config_name(s.scheme);
    os << "\n";
    for (std::size_t i = 0; i < report.series.front().taus.size(); ++i) {
      os << fmt_full(report.series.front().taus[i]);
      for (const SchemeSeries& s : report.series) {
        os << ",";
        if (i < s.taus.size() && s.failures[i].empty()) os << fmt_full(s.errors[i]);
      }
      os << "\n";
    }
    const auto plot_path = out_dir / (report.meta.name + "_plot.csv");
    write_text_file(plot_path, os.str());
    written.push_back(plot_path);
  }

  return written;
}

ConvergenceReport load_report(const std::filesystem::path& summary_json) {
  std::ifstream in(summary_json);
  if (!in) throw std::runtime_error("cannot open report " + summary_json.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("report parse error in " + summary_json.string() + ": " + e.what());
  }
  ConvergenceReport report;
  report.meta.name = j.at("name").get<std::string>();
  report.meta.dimension = j.at("dimension").get<int>();
  report.meta.nx = j.at("grid").at("nx").get<Eigen::Index>();
  report.meta.ny = j.at("grid").at("ny").get<Eigen::Index>();
  report.meta.hx = j.at("grid").at("hx").get<double>();
  report.meta.hy = j.at("grid").at("hy").get<double>();
  report.meta.reaction = j.at("reaction").get<std::string>();
  report.meta.t_end = j.at("t_end").get<double>();
  report.meta.ref_abs_tol = j.at("reference").at("abs_tol").get<double>();
  report.meta.ref_rel_tol = j.at("reference").at("rel_tol").get<double>();
  report.meta.reference_from_cache = j.at("reference").at("from_cache").get<bool>();
  report.meta.reference_seconds = j.at("reference").at("seconds").get<double>();
  report.meta.total_seconds = j.at("wall_seconds").get<double>();
  for (const auto& [key, value] : j.at("schemes").items()) {
    (void)key;
    report.series.push_back(series_from_json(value));
  }
  return report;
}

}  // namespace ibc
