#include "qmir/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmir/errors.hpp"

namespace qmir {

namespace {
constexpr double kPi = std::numbers::pi;
}

double default_k0() { return 2.0 * kPi / 1.064e-6; }

Material vacuum_material() { return Material{.name = "vacuum", .n = 1.0}; }

const std::vector<Material>& builtin_materials() {
  // Handbook values at 1064 nm / room temperature. None of these are pinned
  // by the stack recipes themselves; configs may override any field.
  static const std::vector<Material> db = {
      Material{.name = "vacuum", .n = 1.0},
      Material{.name = "SiO2",
               .n = 1.45,
               .p12 = 0.27,
               .E = 72e9,
               .sigma = 0.17,
               .phi_s = 1e-6,
               .density = 2203.0},
      Material{.name = "Ta2O5",
               .n = 2.03,
               .p12 = 0.09,
               .E = 140e9,
               .sigma = 0.23,
               .phi_s = 2.3e-4,
               .density = 8200.0},
      Material{.name = "sapphire",
               .n = 1.75,
               .p12 = 0.03,
               .E = 400e9,
               .sigma = 0.23,
               .phi_s = 3e-9,
               .density = 3980.0},
  };
  return db;
}

const Material* find_builtin_material(std::string_view name) {
  for (const Material& m : builtin_materials()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

void validate_material(const Material& m, const std::string& where) {
  if (m.name.empty()) throw ConfigError(where + ".name: must not be empty");
  if (!(m.n >= 1.0)) {
    throw ConfigError(where + ".n: refractive index must be >= 1");
  }
  if (m.sigma && !(*m.sigma >= 0.0 && *m.sigma < 0.5)) {
    throw ConfigError(where + ".sigma: Poisson ratio must lie in [0, 0.5)");
  }
  if (m.E && !(*m.E > 0.0)) {
    throw ConfigError(where + ".E: Young's modulus must be positive");
  }
  if (m.phi_s && !(*m.phi_s >= 0.0)) {
    throw ConfigError(where + ".phi_s: loss angle must be >= 0");
  }
  if (m.density && !(*m.density > 0.0)) {
    throw ConfigError(where + ".density: must be positive");
  }
}

CoatingStack build_stack(int p, int l, int j, double eta_fp,
                         const Material& low, const Material& high,
                         const Material& substrate, double k0,
                         const Material& ambient) {
  if (p < 0) throw std::invalid_argument("build_stack: p must be >= 0");
  if (l < 0 || l > p) {
    throw std::invalid_argument("build_stack: l must satisfy 0 <= l <= p");
  }
  if (j < 1) throw std::invalid_argument("build_stack: j must be >= 1");
  if (!(eta_fp > 0.0)) {
    throw std::invalid_argument("build_stack: eta_fp must be positive");
  }
  if (!(k0 > 0.0)) {
    throw std::invalid_argument("build_stack: k0 must be positive");
  }

  CoatingStack s;
  s.ambient = ambient;
  s.substrate = substrate;
  s.k0 = k0;
  s.layers.reserve(static_cast<size_t>(2 * p + 2));

  const double qw = kPi / 2.0;
  for (int i = 0; i < l; ++i) {
    s.layers.push_back({low, qw});
    s.layers.push_back({high, qw});
  }
  s.layers.push_back({low, qw});
  s.layers.push_back({low, static_cast<double>(j) * eta_fp});
  for (int i = 0; i < p - l; ++i) {
    s.layers.push_back({low, qw});
    s.layers.push_back({high, qw});
  }
  return s;
}

double total_physical_thickness(const CoatingStack& s) {
  double d = 0.0;
  for (const Layer& layer : s.layers) {
    d += layer.eta0 / (layer.material.n * s.k0);
  }
  return d;
}

bool thin_coating_ok(const CoatingStack& s, double w0) {
  if (!(w0 > 0.0)) throw std::invalid_argument("thin_coating_ok: w0 > 0");
  // Half-space kernels drop O(d/w0) corrections; a fifth of the beam radius
  // keeps those at the few-percent level. Informational only.
  return total_physical_thickness(s) < 0.2 * w0;
}

}  // namespace qmir
