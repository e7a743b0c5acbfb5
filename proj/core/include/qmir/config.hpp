#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmir/model.hpp"

namespace qmir {

// Stack recipe exactly as written in a config file; kept alongside the
// realized CoatingStack so configs can be serialized back out losslessly.
struct StackSpec {
  std::string name;
  int p = 0;
  int l = 0;
  int j = 1;
  double eta_fp_over_pi = 1.0;
  std::string low;
  std::string high;
  std::string substrate;
  std::optional<double> k0;  // per-stack override of the global k0

  bool operator==(const StackSpec&) const = default;
};

struct NamedMode {
  std::string name;
  EigenmodeSpec mode;

  bool operator==(const NamedMode&) const = default;
};

struct Config {
  double k0 = 0.0;  // global reference wavevector [1/m]
  std::vector<Material> materials;
  std::vector<StackSpec> stack_specs;
  // Realized stacks, same order and names as stack_specs.
  std::vector<std::pair<std::string, CoatingStack>> stacks;
  BeamSubstrate beam;
  std::vector<NamedMode> modes;
};

// Reads and validates a JSON config. Errors carry the offending field path
// (e.g. "materials[2].sigma"). Defaults: ambient = vacuum, k0 = default_k0(),
// config materials inherit missing constants from same-named builtins.
Config parse_config(const std::string& path);
Config parse_config_text(const std::string& json_text);

// Inverse of parsing: parse(serialize(c)) reproduces c record for record.
std::string serialize_config(const Config& c);

const CoatingStack* find_stack(const Config& c, std::string_view name);
const EigenmodeSpec* find_mode(const Config& c, std::string_view name);

}  // namespace qmir
