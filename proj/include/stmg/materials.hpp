#pragma once

// Two-phase material interpolation for design-based conduction problems.
//
// A design field chi assigns every element a volume fraction in [0, 1] of
// the conducting phase.  Conductivity and volumetric heat capacity follow
// power-law interpolation between the insulating (chi = 0) and conducting
// (chi = 1) phases, with independent exponents so intermediate densities are
// penalised differently for k and c.

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace stmg {

struct MaterialPair {
  double k_ins = 0.0;  // conductivity, insulating phase [W/(m K)]
  double k_con = 0.0;  // conductivity, conducting phase
  double c_ins = 0.0;  // volumetric capacity, insulating phase [J/(m^3 K)]
  double c_con = 0.0;  // volumetric capacity, conducting phase
  double p_k = 3.0;    // conductivity penalisation exponent
  double p_c = 2.0;    // capacity penalisation exponent
};

struct DesignField {
  std::vector<double> chi;  // one volume fraction per element

  std::size_t size() const { return chi.size(); }
};

// Interpolated properties at one volume fraction.
struct ElementMaterial {
  double k = 0.0;
  double c = 0.0;
};

double clamp01(double v);

// k(chi) = k_ins + (k_con - k_ins) chi^p_k, likewise c with p_c.
// Throws if chi is outside [0, 1] or a phase property is non-positive.
ElementMaterial simp_eval(double chi, const MaterialPair& mat);

// d/dchi of the interpolation above, same preconditions.
ElementMaterial simp_derivatives(double chi, const MaterialPair& mat);

// Evaluate the interpolation for every element of `field`.
void apply_design(std::vector<double>& k_out, std::vector<double>& c_out,
                  const DesignField& field, const MaterialPair& mat);

// chi_e = clamp01(1/2 - alpha (x_e - x_offset)) at element centres: the
// conducting phase on the left, a linear transition of width 1/alpha.
DesignField design_ramp(int n_el, double L, double alpha, double x_offset);

// chi_e = clamp01(|x_e - L/2| / L * 2/F - 1): an insulating gap of width F*L
// centred in the domain, with transition bands of total width F*L.  Passing
// inverted=true flips the phases (chi -> 1 - chi).
DesignField design_gap(int n_el, double L, double F, bool inverted);

// Two CSV columns: element index, chi.
void write_design_csv(std::ostream& os, const DesignField& field);

}  // namespace stmg
