#include "qmir/config.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qmir/errors.hpp"

namespace qmir {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double get_number(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<double> get_opt_number(const json& obj, const char* key,
                                     const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

Material parse_material(const json& j, const std::string& path) {
  Material m;
  m.name = get_string(j, "name", path);
  m.n = get_number(j, "n", path);
  m.p12 = get_opt_number(j, "p12", path);
  m.E = get_opt_number(j, "E", path);
  m.sigma = get_opt_number(j, "sigma", path);
  m.phi_s = get_opt_number(j, "phi_s", path);
  m.density = get_opt_number(j, "density", path);

  // Constants left out inherit from the same-named builtin entry; the stack
  // recipes only pin geometry, not material data.
  if (const Material* builtin = find_builtin_material(m.name)) {
    if (!m.p12) m.p12 = builtin->p12;
    if (!m.E) m.E = builtin->E;
    if (!m.sigma) m.sigma = builtin->sigma;
    if (!m.phi_s) m.phi_s = builtin->phi_s;
    if (!m.density) m.density = builtin->density;
  }
  validate_material(m, path);
  return m;
}

const Material& resolve_material(const std::vector<Material>& materials,
                                 const std::string& name,
                                 const std::string& path) {
  for (const Material& m : materials) {
    if (m.name == name) return m;
  }
  fail(path, "unresolved material reference '" + name + "'");
}

Config parse_json(const json& root) {
  if (!root.is_object()) throw ConfigError("top level: expected an object");

  Config cfg;
  cfg.k0 = get_opt_number(root, "k0_per_m", "top level").value_or(default_k0());
  if (!(cfg.k0 > 0.0)) fail("k0_per_m", "must be positive");

  // materials
  if (const auto it = root.find("materials"); it != root.end()) {
    if (!it->is_array()) fail("materials", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string path = "materials[" + std::to_string(i) + "]";
      Material m = parse_material((*it)[i], path);
      for (const Material& seen : cfg.materials) {
        if (seen.name == m.name) fail(path, "duplicate material '" + m.name + "'");
      }
      cfg.materials.push_back(std::move(m));
    }
  }

  // stacks
  if (const auto it = root.find("stacks"); it != root.end()) {
    if (!it->is_array()) fail("stacks", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string path = "stacks[" + std::to_string(i) + "]";
      const json& js = (*it)[i];
      StackSpec spec;
      spec.name = get_string(js, "name", path);
      spec.p = get_int(js, "p", path);
      spec.l = get_int(js, "l", path);
      spec.j = get_int(js, "j", path);
      spec.eta_fp_over_pi = get_number(js, "eta_fp_over_pi", path);
      spec.low = get_string(js, "low", path);
      spec.high = get_string(js, "high", path);
      spec.substrate = get_string(js, "substrate", path);
      spec.k0 = get_opt_number(js, "k0_per_m", path);

      for (const StackSpec& seen : cfg.stack_specs) {
        if (seen.name == spec.name) fail(path, "duplicate stack '" + spec.name + "'");
      }
      const Material& low = resolve_material(cfg.materials, spec.low, path + ".low");
      const Material& high =
          resolve_material(cfg.materials, spec.high, path + ".high");
      const Material& sub =
          resolve_material(cfg.materials, spec.substrate, path + ".substrate");
      if (!(spec.eta_fp_over_pi > 0.0)) fail(path + ".eta_fp_over_pi", "must be positive");
      const double k0 = spec.k0.value_or(cfg.k0);
      if (!(k0 > 0.0)) fail(path + ".k0_per_m", "must be positive");
      try {
        cfg.stacks.emplace_back(
            spec.name,
            build_stack(spec.p, spec.l, spec.j,
                        spec.eta_fp_over_pi * std::numbers::pi, low, high, sub,
                        k0));
      } catch (const std::invalid_argument& e) {
        fail(path, e.what());
      }
      cfg.stack_specs.push_back(std::move(spec));
    }
  }

  // beam
  {
    const json& jb = member(root, "beam", "top level");
    cfg.beam.w0 = get_number(jb, "w0_m", "beam");
    if (!(cfg.beam.w0 > 0.0)) fail("beam.w0_m", "must be positive");
    const std::string sub = get_string(jb, "substrate", "beam");
    cfg.beam.substrate = resolve_material(cfg.materials, sub, "beam.substrate");
    cfg.beam.temperature = get_number(jb, "temperature_K", "beam");
    if (!(cfg.beam.temperature > 0.0)) fail("beam.temperature_K", "must be positive");
  }

  // modes
  if (const auto it = root.find("modes"); it != root.end()) {
    if (!it->is_array()) fail("modes", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string path = "modes[" + std::to_string(i) + "]";
      const json& jm = (*it)[i];
      NamedMode nm;
      nm.name = get_string(jm, "name", path);
      nm.mode.omega0 = get_number(jm, "omega0_rad_s", path);
      nm.mode.M0 = get_number(jm, "M0_kg", path);
      nm.mode.zeta = get_number(jm, "zeta_per_m", path);
      if (!(nm.mode.omega0 > 0.0)) fail(path + ".omega0_rad_s", "must be positive");
      if (!(nm.mode.M0 > 0.0)) fail(path + ".M0_kg", "must be positive");
      for (const NamedMode& seen : cfg.modes) {
        if (seen.name == nm.name) fail(path, "duplicate mode '" + nm.name + "'");
      }
      cfg.modes.push_back(std::move(nm));
    }
  }

  return cfg;
}

}  // namespace

Config parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_json(root);
}

Config parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const Config& c) {
  ordered_json root;
  root["k0_per_m"] = c.k0;

  ordered_json materials = ordered_json::array();
  for (const Material& m : c.materials) {
    ordered_json jm;
    jm["name"] = m.name;
    jm["n"] = m.n;
    if (m.p12) jm["p12"] = *m.p12;
    if (m.E) jm["E"] = *m.E;
    if (m.sigma) jm["sigma"] = *m.sigma;
    if (m.phi_s) jm["phi_s"] = *m.phi_s;
    if (m.density) jm["density"] = *m.density;
    materials.push_back(std::move(jm));
  }
  root["materials"] = std::move(materials);

  ordered_json stacks = ordered_json::array();
  for (const StackSpec& s : c.stack_specs) {
    ordered_json js;
    js["name"] = s.name;
    js["p"] = s.p;
    js["l"] = s.l;
    js["j"] = s.j;
    js["eta_fp_over_pi"] = s.eta_fp_over_pi;
    js["low"] = s.low;
    js["high"] = s.high;
    js["substrate"] = s.substrate;
    if (s.k0) js["k0_per_m"] = *s.k0;
    stacks.push_back(std::move(js));
  }
  root["stacks"] = std::move(stacks);

  ordered_json jb;
  jb["w0_m"] = c.beam.w0;
  jb["substrate"] = c.beam.substrate.name;
  jb["temperature_K"] = c.beam.temperature;
  root["beam"] = std::move(jb);

  ordered_json modes = ordered_json::array();
  for (const NamedMode& nm : c.modes) {
    ordered_json jm;
    jm["name"] = nm.name;
    jm["omega0_rad_s"] = nm.mode.omega0;
    jm["M0_kg"] = nm.mode.M0;
    jm["zeta_per_m"] = nm.mode.zeta;
    modes.push_back(std::move(jm));
  }
  root["modes"] = std::move(modes);

  return root.dump(2) + "\n";
}

const CoatingStack* find_stack(const Config& c, std::string_view name) {
  for (const auto& [n, s] : c.stacks) {
    if (n == name) return &s;
  }
  return nullptr;
}

const EigenmodeSpec* find_mode(const Config& c, std::string_view name) {
  for (const NamedMode& nm : c.modes) {
    if (nm.name == name) return &nm.mode;
  }
  return nullptr;
}

}  // namespace qmir
