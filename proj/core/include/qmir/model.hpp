#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmir {

// Optical and elastic constants of one medium. Only the refractive index is
// universally required; the remaining constants are validated by the
// operations that consume them (photoelastic strain needs p12, the thermal
// correlation functions need sigma, E, phi_s).
struct Material {
  std::string name;
  double n = 1.0;                 // refractive index
  std::optional<double> p12;      // strain-optic coefficient
  std::optional<double> E;        // Young's modulus [Pa]
  std::optional<double> sigma;    // Poisson ratio
  std::optional<double> phi_s;    // mechanical loss angle
  std::optional<double> density;  // [kg/m^3]

  bool operator==(const Material&) const = default;
};

// One homogeneous film. The single-pass phase thickness at the reference
// wavevector k0 is canonical; physical thickness follows as eta0 / (n k0).
struct Layer {
  Material material;
  double eta0 = 0.0;  // [rad] at k0

  bool operator==(const Layer&) const = default;
};

// Layer sequence from ambient (layers.front()) to substrate (layers.back()).
struct CoatingStack {
  Material ambient;
  std::vector<Layer> layers;
  Material substrate;
  double k0 = 0.0;  // reference vacuum wavevector [1/m]

  bool operator==(const CoatingStack&) const = default;
};

// Gaussian readout beam on a half-space substrate.
struct BeamSubstrate {
  double w0 = 0.0;  // beam radius [m]
  Material substrate;
  double temperature = 0.0;  // [K]

  bool operator==(const BeamSubstrate&) const = default;
};

// Acoustic eigenmode summary. These numbers come from external FEM
// solutions; nothing in this library computes them.
struct EigenmodeSpec {
  double omega0 = 0.0;  // angular frequency [rad/s]
  double M0 = 0.0;      // effective mass [kg]
  double zeta = 0.0;    // surface axial strain per unit displacement [1/m]

  bool operator==(const EigenmodeSpec&) const = default;
};

// Default reference wavevector, 2*pi / 1064 nm. Configs may override it
// globally (k0_per_m) or per stack.
double default_k0();

Material vacuum_material();

// Handbook values for the common coating materials; any field can be
// overridden by declaring the material in a config file. A config material
// whose name matches a builtin inherits the builtin's constants for fields
// it leaves out.
const std::vector<Material>& builtin_materials();
const Material* find_builtin_material(std::string_view name);

// Throws ConfigError naming `where` if a constant is outside its physical
// range (n < 1, sigma outside [0, 0.5), negative loss angle, ...).
void validate_material(const Material& m, const std::string& where);

// Mirror recipe: l (low, high) quarter-wave pairs, one extra low-index
// quarter wave, a low-index layer of phase j * eta_fp, then (p - l)
// (low, high) quarter-wave pairs against the substrate. 2p + 2 layers.
CoatingStack build_stack(int p, int l, int j, double eta_fp,
                         const Material& low, const Material& high,
                         const Material& substrate, double k0,
                         const Material& ambient = vacuum_material());

// Sum of eta0_i / (n_i k0) over the layers [m].
double total_physical_thickness(const CoatingStack& s);

// The phase model treats the coating as thin against the beam: d << w0.
// Callers should warn (not fail) when this returns false.
bool thin_coating_ok(const CoatingStack& s, double w0);

}  // namespace qmir
