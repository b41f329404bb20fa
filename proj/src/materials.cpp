#include "stmg/materials.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace stmg {
namespace {

void check_material(const MaterialPair& mat) {
  if (mat.k_ins <= 0.0 || mat.k_con <= 0.0 || mat.c_ins <= 0.0 ||
      mat.c_con <= 0.0)
    throw std::invalid_argument("material properties must be positive");
  if (mat.p_k <= 0.0 || mat.p_c <= 0.0)
    throw std::invalid_argument("penalisation exponents must be positive");
}

void check_chi(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0))
    throw std::invalid_argument("volume fraction outside [0, 1]");
}

}  // namespace

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

ElementMaterial simp_eval(double chi, const MaterialPair& mat) {
  check_material(mat);
  check_chi(chi);
  return {mat.k_ins + (mat.k_con - mat.k_ins) * std::pow(chi, mat.p_k),
          mat.c_ins + (mat.c_con - mat.c_ins) * std::pow(chi, mat.p_c)};
}

ElementMaterial simp_derivatives(double chi, const MaterialPair& mat) {
  check_material(mat);
  check_chi(chi);
  return {mat.p_k * (mat.k_con - mat.k_ins) * std::pow(chi, mat.p_k - 1.0),
          mat.p_c * (mat.c_con - mat.c_ins) * std::pow(chi, mat.p_c - 1.0)};
}

void apply_design(std::vector<double>& k_out, std::vector<double>& c_out,
                  const DesignField& field, const MaterialPair& mat) {
  k_out.resize(field.size());
  c_out.resize(field.size());
  for (std::size_t e = 0; e < field.size(); ++e) {
    const ElementMaterial m = simp_eval(field.chi[e], mat);
    k_out[e] = m.k;
    c_out[e] = m.c;
  }
}

DesignField design_ramp(int n_el, double L, double alpha, double x_offset) {
  if (n_el <= 0 || L <= 0.0)
    throw std::invalid_argument("design_ramp: bad grid parameters");
  DesignField f;
  f.chi.resize(n_el);
  const double dx = L / n_el;
  for (int e = 0; e < n_el; ++e) {
    const double x = (e + 0.5) * dx;
    f.chi[e] = clamp01(0.5 - alpha * (x - x_offset));
  }
  return f;
}

DesignField design_gap(int n_el, double L, double F, bool inverted) {
  if (n_el <= 0 || L <= 0.0 || F <= 0.0)
    throw std::invalid_argument("design_gap: bad parameters");
  DesignField f;
  f.chi.resize(n_el);
  const double dx = L / n_el;
  for (int e = 0; e < n_el; ++e) {
    const double x = (e + 0.5) * dx;
    const double chi = clamp01(std::abs(x - 0.5 * L) / L * 2.0 / F - 1.0);
    f.chi[e] = inverted ? 1.0 - chi : chi;
  }
  return f;
}

void write_design_csv(std::ostream& os, const DesignField& field) {
  os << "element,chi\n";
  char buf[64];
  for (std::size_t e = 0; e < field.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", e, field.chi[e]);
    os << buf;
  }
}

}  // namespace stmg
