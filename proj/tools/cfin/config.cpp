#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cfin::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 4> kModelNames = {"3d", "4d", "5d", "zero"};

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

/// Rejects keys of `doc` that do not appear in `schema`, recursing into objects.
void reject_unknown(const json& doc, const json& schema, const std::string& prefix) {
  if (!doc.is_object()) return;
  for (const auto& [key, value] : doc.items()) {
    const std::string path = join(prefix, key);
    if (!schema.contains(key)) throw ConfigError(path + ": unknown key");
    if (schema[key].is_object()) {
      if (!value.is_object()) throw ConfigError(path + ": expected an object");
      reject_unknown(value, schema[key], path);
    }
  }
}

const json& at_path(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (!node->is_object() || !node->contains(part)) throw ConfigError(path + ": missing");
    node = &(*node)[part];
  }
  return *node;
}

double number_at(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

std::size_t count_at(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && std::floor(d) == d && d < 1e18) return static_cast<std::size_t>(d);
  }
  throw ConfigError(path + ": expected a non-negative integer");
}

std::string string_at(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> vector_at(const json& doc, const std::string& path, std::size_t expected_size) {
  const json& v = at_path(doc, path);
  if (!v.is_array()) throw ConfigError(path + ": expected an array");
  if (v.size() != expected_size)
    throw ConfigError(path + ": expected " + std::to_string(expected_size) + " entries for this model, got " +
                      std::to_string(v.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "." + std::to_string(i) + ": expected a number");
    const double d = v[i].get<double>();
    if (!std::isfinite(d)) throw ConfigError(path + "." + std::to_string(i) + ": must be finite");
    out.push_back(d);
  }
  return out;
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path + ": " + what);
}

Model parse_model(const std::string& name) {
  for (std::size_t i = 0; i < kModelNames.size(); ++i)
    if (kModelNames[i] == name) return static_cast<Model>(i);
  throw ConfigError("model: unknown model '" + name + "' (expected 3d, 4d, 5d or zero)");
}

/// Parses the right-hand side of an override. JSON literals keep their type;
/// anything else is taken as a bare string.
json parse_value(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) return json(text);
  return v;
}

std::size_t dimension_of(const json& doc);

/// Keys whose defaults depend on the model dimension start out null.
void fill_dimension_defaults(json& doc) {
  const std::size_t dim = dimension_of(doc);
  auto fill = [&](json& node, const char* key, json value) {
    if (!node.contains(key) || node[key].is_null()) node[key] = std::move(value);
  };
  fill(doc, "orders", std::vector<double>(dim, 1.0));
  fill(doc, "initial_state", std::vector<double>(dim, 0.0));
  const char* last = dim == 5 ? "u" : dim == 4 ? "w" : "z";
  fill(doc["scan"], "component", last);
  fill(doc["attractor"], "projection", dim == 3 ? json{"x", "y", "z"} : json{"y", "z", last});
}

}  // namespace

std::size_t dimension(Model m) {
  switch (m) {
    case Model::finance3d: return 3;
    case Model::finance4d: return 4;
    case Model::finance5d:
    case Model::zero: return 5;
  }
  return 5;
}

namespace {
std::size_t dimension_of(const json& doc) {
  const json& m = doc.contains("model") ? doc["model"] : json("5d");
  if (!m.is_string()) throw ConfigError("model: expected a string");
  return dimension(parse_model(m.get<std::string>()));
}
}  // namespace

std::string_view to_string(Model m) { return kModelNames[static_cast<std::size_t>(m)]; }

json default_document() {
  return json{
      {"model", "5d"},
      {"params", {{"a", 0.0}, {"b", 0.0}, {"c", 0.0}, {"d", 0.0}, {"k", 0.0}, {"p", 0.0}, {"m1", 0.0}, {"m2", 0.0}, {"m3", 0.0}}},
      {"orders", nullptr},
      {"initial_state", nullptr},
      {"grid", {{"h", 0.002}, {"steps", 1000}, {"transient", 10000}}},
      {"guard", kDefaultGuard},
      {"lyapunov", {{"iterations", 200000}, {"reorth_every", 1}, {"eps", 0.01}}},
      {"scan",
       {{"parameter", "alpha5"},
        {"lo", 0.232},
        {"hi", 0.328},
        {"points", 97},
        {"kind", "spectrum"},
        {"component", nullptr},
        {"samples", 200}}},
      {"attractor", {{"projection", nullptr}}},
      {"output", {{"csv", ""}, {"svg", ""}}},
      {"workers", 0},
  };
}

json preset_document(const std::string& name) {
  if (name == "paper-sec4") {
    return json{
        {"model", "5d"},
        {"params", {{"a", 0.8}, {"b", 0.6}, {"c", 1.0}, {"d", 2.0}, {"k", 2.0}, {"p", 1.0}}},
        {"orders", {0.3, 0.5, 0.6, 0.24, 0.24}},
        {"initial_state", {0.4, 0.6, 0.8, 0.3, 0.4}},
        {"grid", {{"h", 0.002}, {"steps", 1000}, {"transient", 10000}}},
    };
  }
  throw ConfigError("preset: unknown preset '" + name + "' (available: paper-sec4)");
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = assignment.substr(0, eq);
  std::string pointer;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError(key + ": empty path segment");
    pointer += "/" + part;
  }
  try {
    const json::json_pointer ptr(pointer);
    const json::json_pointer parent = ptr.parent_pointer();
    if (!doc.contains(parent)) throw ConfigError(key + ": unknown key");
    const json& container = doc.at(parent);
    if (container.is_array()) {
      const std::string& last = ptr.back();
      const bool numeric = !last.empty() && last.find_first_not_of("0123456789") == std::string::npos;
      if (!numeric || std::stoull(last) >= container.size()) throw ConfigError(key + ": index out of range");
    } else if (!container.is_object()) {
      throw ConfigError(key + ": parent is not an object or array");
    }
    doc[ptr] = parse_value(assignment.substr(eq + 1));
  } catch (const json::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

RunConfig parse_document(const json& doc) {
  reject_unknown(doc, default_document(), "");
  RunConfig cfg;
  cfg.model = parse_model(string_at(doc, "model"));
  const std::size_t dim = dimension(cfg.model);

  auto& q = cfg.params;
  q.a = number_at(doc, "params.a");
  q.b = number_at(doc, "params.b");
  q.c = number_at(doc, "params.c");
  q.d = number_at(doc, "params.d");
  q.k = number_at(doc, "params.k");
  q.p = number_at(doc, "params.p");
  q.m1 = number_at(doc, "params.m1");
  q.m2 = number_at(doc, "params.m2");
  q.m3 = number_at(doc, "params.m3");
  require(q.a >= 0.0, "params.a", "must be >= 0");
  require(q.b >= 0.0, "params.b", "must be >= 0");
  require(q.c >= 0.0, "params.c", "must be >= 0");

  cfg.orders = vector_at(doc, "orders", dim);
  for (std::size_t i = 0; i < dim; ++i)
    require(valid_order(cfg.orders[i]), "orders." + std::to_string(i),
            "order " + std::to_string(cfg.orders[i]) + " outside (0, 1]");
  cfg.initial_state = vector_at(doc, "initial_state", dim);

  cfg.h = number_at(doc, "grid.h");
  require(cfg.h > 0.0 && std::isfinite(cfg.h), "grid.h", "step size must be positive");
  cfg.steps = count_at(doc, "grid.steps");
  require(cfg.steps >= 1, "grid.steps", "must be >= 1");
  cfg.transient = count_at(doc, "grid.transient");
  cfg.guard = number_at(doc, "guard");
  require(cfg.guard > 0.0, "guard", "must be positive");

  cfg.lyapunov.transient = cfg.transient;
  cfg.lyapunov.iterations = count_at(doc, "lyapunov.iterations");
  require(cfg.lyapunov.iterations >= 1, "lyapunov.iterations", "must be >= 1");
  cfg.lyapunov.reorth_every = count_at(doc, "lyapunov.reorth_every");
  require(cfg.lyapunov.reorth_every >= 1, "lyapunov.reorth_every", "must be >= 1");
  cfg.lyapunov.eps_positive = number_at(doc, "lyapunov.eps");
  require(cfg.lyapunov.eps_positive > 0.0, "lyapunov.eps", "must be positive");
  cfg.lyapunov.guard = cfg.guard;

  const std::string param = string_at(doc, "scan.parameter");
  const auto target = parse_sweep_parameter(param);
  require(target.has_value(), "scan.parameter", "unknown parameter '" + param + "'");
  cfg.scan.parameter = *target;
  cfg.scan.lo = number_at(doc, "scan.lo");
  cfg.scan.hi = number_at(doc, "scan.hi");
  require(cfg.scan.lo < cfg.scan.hi, "scan.lo", "must be < scan.hi");
  cfg.scan.points = count_at(doc, "scan.points");
  require(cfg.scan.points >= 2, "scan.points", "must be >= 2");
  const std::string kind = string_at(doc, "scan.kind");
  require(kind == "spectrum" || kind == "bifurcation", "scan.kind", "expected 'spectrum' or 'bifurcation'");
  cfg.scan.kind = kind == "spectrum" ? ScanKind::spectrum : ScanKind::bifurcation;
  const std::string comp = string_at(doc, "scan.component");
  const auto component = parse_component(comp);
  require(component.has_value() && static_cast<std::size_t>(*component) < dim, "scan.component",
          "unknown component '" + comp + "' for this model");
  cfg.scan.component = *component;
  cfg.scan.samples = count_at(doc, "scan.samples");
  require(cfg.scan.samples >= 1, "scan.samples", "must be >= 1");
  if (cfg.scan.parameter == SweepParameter::h) {
    require(cfg.scan.lo > 0.0, "scan.lo", "step size must be positive");
  } else if (static_cast<std::size_t>(cfg.scan.parameter) < 5) {
    require(valid_order(cfg.scan.lo), "scan.lo", "order outside (0, 1]");
    require(valid_order(cfg.scan.hi), "scan.hi", "order outside (0, 1]");
  } else if (cfg.scan.parameter == SweepParameter::a || cfg.scan.parameter == SweepParameter::b ||
             cfg.scan.parameter == SweepParameter::c) {
    require(cfg.scan.lo >= 0.0, "scan.lo", "must be >= 0 for this parameter");
  }

  const json& proj = at_path(doc, "attractor.projection");
  require(proj.is_array() && proj.size() == 3, "attractor.projection", "expected three component names");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string path = "attractor.projection." + std::to_string(i);
    require(proj[i].is_string(), path, "expected a component name");
    const auto c = parse_component(proj[i].get<std::string>());
    require(c.has_value() && static_cast<std::size_t>(*c) < dim, path,
            "unknown component '" + proj[i].get<std::string>() + "' for this model");
    cfg.projection[i] = static_cast<std::size_t>(*c);
  }

  cfg.csv_path = string_at(doc, "output.csv");
  cfg.svg_path = string_at(doc, "output.svg");
  cfg.workers = count_at(doc, "workers");
  return cfg;
}

RunConfig load_config(const std::optional<std::filesystem::path>& file, const std::optional<std::string>& preset,
                      const std::vector<std::string>& overrides) {
  json doc = default_document();
  if (preset) doc.merge_patch(preset_document(*preset));
  if (file) {
    std::ifstream in(*file);
    if (!in) throw IoError("cannot read config file " + file->string());
    json user = json::parse(in, nullptr, false, true);
    if (user.is_discarded()) throw ConfigError(file->string() + ": not valid JSON");
    if (!user.is_object()) throw ConfigError(file->string() + ": top level must be an object");
    reject_unknown(user, default_document(), "");
    doc.merge_patch(user);
  }
  for (const auto& o : overrides)
    if (o.rfind("model=", 0) == 0) apply_override(doc, o);
  fill_dimension_defaults(doc);
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_document(doc);
}

FinanceSetup RunConfig::finance_setup() const {
  FinanceSetup s;
  s.params = params;
  for (std::size_t i = 0; i < 5 && i < orders.size(); ++i) s.orders[i] = orders[i];
  for (std::size_t i = 0; i < 5 && i < initial_state.size(); ++i) s.x0[i] = initial_state[i];
  s.h = h;
  s.guard = guard;
  return s;
}

SweepPlan RunConfig::sweep_plan() const {
  SweepPlan plan;
  plan.target = scan.parameter;
  plan.lo = scan.lo;
  plan.hi = scan.hi;
  plan.grid_points = scan.points;
  plan.base = finance_setup();
  plan.lyapunov = lyapunov;
  plan.bifurcation.transient = transient;
  plan.bifurcation.samples = scan.samples;
  plan.workers = workers;
  return plan;
}

}  // namespace cfin::cli
