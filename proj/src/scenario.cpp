#include "lubrisim/scenario.hpp"

#include "lubrisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

namespace lubrisim {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", where.empty() ? "document" : where));
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.contains(key))
      throw ConfigError(fmt::format("unknown key '{}{}'", where.empty() ? "" : where + ".", key));
}

template <class T>
void read(const json& obj, const char* key, const std::string& where, T& into) {
  if (!obj.contains(key)) return;
  try {
    into = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("field '{}{}' has the wrong type", where.empty() ? "" : where + ".", key));
  }
}

template <class T, class Convert>
void read_enum(const json& obj, const char* key, const std::string& where, T& into, Convert&& convert) {
  if (!obj.contains(key)) return;
  std::string text;
  read(obj, key, where, text);
  try {
    into = convert(text);
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("field '{}{}': {}", where.empty() ? "" : where + ".", key, e.what()));
  }
}

std::string_view to_string(DiffusionForm f) { return f == DiffusionForm::plain ? "plain" : "geometric"; }

DiffusionForm diffusion_from_string(std::string_view s) {
  if (s == "plain") return DiffusionForm::plain;
  if (s == "geometric") return DiffusionForm::geometric;
  throw DomainError(fmt::format("unknown diffusion form '{}' (expected geometric|plain)", s));
}

InitialKind initial_kind_from_string(std::string_view s) {
  if (s == "surfactant_drop") return InitialKind::surfactant_drop;
  if (s == "corrugation") return InitialKind::corrugation;
  if (s == "custom") return InitialKind::custom;
  throw DomainError(fmt::format("unknown initial kind '{}' (expected surfactant_drop|corrugation|custom)", s));
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw ConfigError(fmt::format("invalid '{}': {}", field, why));
}

} // namespace

std::string_view to_string(InitialKind kind) {
  switch (kind) {
  case InitialKind::surfactant_drop: return "surfactant_drop";
  case InitialKind::corrugation: return "corrugation";
  case InitialKind::custom: return "custom";
  }
  return "?";
}

void Scenario::validate() const {
  require(nodes >= Grid::kMinNodes, "grid.nodes", fmt::format("need at least {} nodes, got {}", Grid::kMinNodes, nodes));
  require(length > 0.0 && std::isfinite(length), "grid.length", "must be positive");
  require(params.inv_peclet >= 0.0 && std::isfinite(params.inv_peclet), "params.inv_peclet", "must be non-negative");
  for (double v : {params.reynolds, params.bond, params.hamaker, params.tension_slope, params.incline})
    require(std::isfinite(v), "params", "values must be finite");
  require(step.dt > 0.0 && std::isfinite(step.dt), "step.dt", "must be positive");
  require(step.newton_iters >= 1, "step.newton_iters", "must be at least 1");
  require(step.newton_tol >= 0.0, "step.newton_tol", "must be non-negative");
  require(step.fd_epsilon > 0.0, "step.fd_epsilon", "must be positive");
  require(t_end >= 0.0 && std::isfinite(t_end), "t_end", "must be non-negative");
  require(std::is_sorted(snapshots.begin(), snapshots.end()), "snapshots", "must be sorted");
  for (double t : snapshots) require(t >= 0.0 && t <= t_end, "snapshots", fmt::format("{} lies outside [0, t_end]", t));

  const auto& ic = initial;
  require(ic.base_gamma >= 0.0, "initial.base_gamma", "must be non-negative");
  switch (ic.kind) {
  case InitialKind::surfactant_drop:
    require(ic.drop_half_width > 0.0, "initial.drop_half_width", "must be positive");
    require(ic.base_gamma + std::min(ic.drop_excess, 0.0) >= 0.0, "initial.drop_excess",
            "concentration would become negative");
    break;
  case InitialKind::corrugation:
    require(ic.wavenumber >= 0.0, "initial.wavenumber", "must be non-negative");
    break;
  case InitialKind::custom:
    require(ic.eta.size() == nodes, "initial.eta", fmt::format("needs {} values", nodes));
    require(ic.gamma.size() == nodes, "initial.gamma", fmt::format("needs {} values", nodes));
    for (double g : ic.gamma) require(g >= 0.0, "initial.gamma", "values must be non-negative");
    break;
  }
  const auto s0 = initial_state();
  for (double h : s0.eta) require(h > kPositivityGuard, "initial", "film thickness must be positive everywhere");
}

Grid Scenario::grid() const { return Grid(nodes, length, boundary); }

State Scenario::initial_state() const {
  const Grid g = grid();
  State s = State::uniform(g, initial.base_eta, initial.base_gamma);
  switch (initial.kind) {
  case InitialKind::surfactant_drop: {
    const double c = initial.drop_center.value_or(0.5 * length);
    const double w = initial.drop_half_width;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = std::abs(g.x(i) - c);
      if (r < w) s.gamma[i] += initial.drop_excess * 0.5 * (1.0 + std::cos(std::numbers::pi * r / w));
    }
    break;
  }
  case InitialKind::corrugation:
    for (std::size_t i = 0; i < g.size(); ++i)
      s.eta[i] += initial.amplitude * std::cos(initial.wavenumber * g.x(i));
    break;
  case InitialKind::custom:
    s.eta = initial.eta;
    s.gamma = initial.gamma;
    break;
  }
  return s;
}

Problem Scenario::problem() const { return Problem{variant, params, StencilOps(grid())}; }

Scenario parse_config(std::string_view text) {
  json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string_view::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw ConfigError(fmt::format("parse error at line {}, column {}: {}", line, col, e.what()));
  }

  Scenario s;
  reject_unknown(doc, "", {"name", "grid", "initial", "params", "model", "step", "t_end", "snapshots"});
  read(doc, "name", "", s.name);
  read_enum(doc, "model", "", s.variant, variant_from_string);

  bool t_end_given = doc.contains("t_end");
  read(doc, "t_end", "", s.t_end);
  read(doc, "snapshots", "", s.snapshots);
  if (!t_end_given && doc.contains("snapshots"))
    s.t_end = s.snapshots.empty() ? 0.0 : *std::max_element(s.snapshots.begin(), s.snapshots.end());

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    reject_unknown(g, "grid", {"nodes", "length", "boundary"});
    read(g, "nodes", "grid", s.nodes);
    read(g, "length", "grid", s.length);
    read_enum(g, "boundary", "grid", s.boundary, boundary_from_string);
  }

  if (doc.contains("initial")) {
    const auto& ic = doc["initial"];
    reject_unknown(ic, "initial",
                   {"kind", "base_eta", "base_gamma", "drop_center", "drop_half_width", "drop_excess",
                    "amplitude", "wavenumber", "eta", "gamma"});
    auto& out = s.initial;
    read_enum(ic, "kind", "initial", out.kind, initial_kind_from_string);
    read(ic, "base_eta", "initial", out.base_eta);
    read(ic, "base_gamma", "initial", out.base_gamma);
    if (ic.contains("drop_center")) {
      double c = 0.0;
      read(ic, "drop_center", "initial", c);
      out.drop_center = c;
    }
    read(ic, "drop_half_width", "initial", out.drop_half_width);
    read(ic, "drop_excess", "initial", out.drop_excess);
    read(ic, "amplitude", "initial", out.amplitude);
    read(ic, "wavenumber", "initial", out.wavenumber);
    read(ic, "eta", "initial", out.eta);
    read(ic, "gamma", "initial", out.gamma);
  }

  if (doc.contains("params")) {
    const auto& p = doc["params"];
    reject_unknown(p, "params",
                   {"reynolds", "bond", "hamaker", "inv_peclet", "tension_slope", "incline", "diffusion_form", "terms"});
    read(p, "reynolds", "params", s.params.reynolds);
    read(p, "bond", "params", s.params.bond);
    read(p, "hamaker", "params", s.params.hamaker);
    read(p, "inv_peclet", "params", s.params.inv_peclet);
    read(p, "tension_slope", "params", s.params.tension_slope);
    read(p, "incline", "params", s.params.incline);
    read_enum(p, "diffusion_form", "params", s.params.diffusion_form, diffusion_from_string);
    if (p.contains("terms")) {
      const auto& t = p["terms"];
      if (!t.is_object()) throw ConfigError("params.terms: expected an object");
      for (const auto& [key, value] : t.items()) {
        TermGroup group;
        try {
          group = term_group_from_string(key);
        } catch (const DomainError&) {
          throw ConfigError(fmt::format("unknown key 'params.terms.{}'", key));
        }
        if (!value.is_boolean()) throw ConfigError(fmt::format("field 'params.terms.{}' must be a boolean", key));
        s.params.toggles.set(group, value.get<bool>());
      }
    }
  }

  if (doc.contains("step")) {
    const auto& st = doc["step"];
    reject_unknown(st, "step", {"dt", "newton_iters", "newton_tol", "fd_epsilon"});
    read(st, "dt", "step", s.step.dt);
    read(st, "newton_iters", "step", s.step.newton_iters);
    read(st, "newton_tol", "step", s.step.newton_tol);
    read(st, "fd_epsilon", "step", s.step.fd_epsilon);
  }

  s.validate();
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const Scenario& s) {
  json terms = json::object();
  for (auto g : kAllTermGroups) terms[std::string(to_string(g))] = s.params.toggles.enabled(g);

  json initial = {
      {"kind", to_string(s.initial.kind)},
      {"base_eta", s.initial.base_eta},
      {"base_gamma", s.initial.base_gamma},
      {"drop_half_width", s.initial.drop_half_width},
      {"drop_excess", s.initial.drop_excess},
      {"amplitude", s.initial.amplitude},
      {"wavenumber", s.initial.wavenumber},
  };
  if (s.initial.drop_center) initial["drop_center"] = *s.initial.drop_center;
  if (!s.initial.eta.empty()) initial["eta"] = s.initial.eta;
  if (!s.initial.gamma.empty()) initial["gamma"] = s.initial.gamma;

  json doc = {
      {"name", s.name},
      {"grid", {{"nodes", s.nodes}, {"length", s.length}, {"boundary", to_string(s.boundary)}}},
      {"initial", initial},
      {"params",
       {{"reynolds", s.params.reynolds},
        {"bond", s.params.bond},
        {"hamaker", s.params.hamaker},
        {"inv_peclet", s.params.inv_peclet},
        {"tension_slope", s.params.tension_slope},
        {"incline", s.params.incline},
        {"diffusion_form", to_string(s.params.diffusion_form)},
        {"terms", terms}}},
      {"model", to_string(s.variant)},
      {"step",
       {{"dt", s.step.dt},
        {"newton_iters", s.step.newton_iters},
        {"newton_tol", s.step.newton_tol},
        {"fd_epsilon", s.step.fd_epsilon}}},
      {"t_end", s.t_end},
      {"snapshots", s.snapshots},
  };
  return doc.dump(2) + "\n";
}

const std::vector<PresetInfo>& preset_names() {
  static const std::vector<PresetInfo> names{
      {"fig2", "surfactant drop spreading on a flat film, L = 15 pi, t = 1, 10, 100, 1000"},
      {"fig3", "corrugated film under uniform surfactant, t = 0, 15, 30, 45"},
      {"fig4", "corrugated film under uniform surfactant, t = 0, 100, 200, 300"},
  };
  return names;
}

Scenario preset(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  if (name == "fig2") return s;

  if (name == "fig3" || name == "fig4") {
    s.length = 4.0 * std::numbers::pi;
    s.initial.kind = InitialKind::corrugation;
    s.initial.amplitude = 0.1;
    s.initial.wavenumber = 0.5;
    s.step.dt = 1.0;
    if (name == "fig3") {
      s.snapshots = {0.0, 15.0, 30.0, 45.0};
      s.t_end = 45.0;
    } else {
      s.snapshots = {0.0, 100.0, 200.0, 300.0};
      s.t_end = 300.0;
    }
    return s;
  }
  throw ConfigError(fmt::format("unknown preset '{}'", name));
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.variant) s.variant = *o.variant;
  if (o.inv_peclet) s.params.inv_peclet = *o.inv_peclet;
  if (o.dt) s.step.dt = *o.dt;
  if (o.nodes) {
    if (s.initial.kind == InitialKind::custom)
      throw ConfigError("--nodes cannot resize custom initial profiles");
    s.nodes = *o.nodes;
  }
  if (o.t_end) {
    s.t_end = *o.t_end;
    std::erase_if(s.snapshots, [&](double t) { return t > s.t_end; });
  }
  s.validate();
}

} // namespace lubrisim
