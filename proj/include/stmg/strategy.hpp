#pragma once

// Anisotropy measurement and level-by-level coarsening planning.
//
// The discrete anisotropy of one element is lambda_e = D_e dt/dx^2 with
// D_e = k_e/c_e.  Pointwise smoothing plus semi-coarsening works well only
// when the coarsening direction matches the anisotropy: space when lambda is
// large, time when it is small.  With heterogeneous materials a single
// effective value is needed; the adopted indicator is the geometric mean of
// the extreme element anisotropies,
//
//     lambda_eff = sqrt(min_e lambda_e * max_e lambda_e),
//
// chosen over seven alternative aggregations that are kept available for
// diagnostics output.
//
// A coarsening path is planned greedily: on each level the indicator is
// compared against a threshold lambda_crit; time-coarsening is chosen below
// it, space-coarsening otherwise.  Variants: Uniform assumes homogeneous
// materials; Resolution adds a guard that refuses to drop the element count
// below M; DesignIndependent evaluates the indicator from the material pair
// alone (valid when the pointwise diffusivity takes its extremes at the pure
// phases), so the path — and the transfer stack built from it — can be
// reused across design iterations.

#include <string>
#include <vector>

#include "stmg/materials.hpp"
#include "stmg/mesh.hpp"
#include "stmg/rediscretisation.hpp"

namespace stmg {

struct AnisotropyReport {
  std::vector<double> lambda_e;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_eff = 0.0;  // sqrt(lambda_min * lambda_max)
  double d_eff = 0.0;       // lambda_eff recast as a diffusivity
};

// Per-element anisotropy of one level (requires materials).
AnisotropyReport anisotropy(const SpaceTimeGrid& g);

// Adopted effective anisotropy of one level.
double effective_lambda(const SpaceTimeGrid& g);

// Alternative aggregations of {lambda_e}, kept for diagnostics comparison.
// GeoMinMax is the adopted definition.
enum class AnisotropyIndicator {
  GeoMinMax,
  GeoAll,
  ArithMinMax,
  ArithAll,
  HarmMinMax,
  HarmAll,
  MinOnly,
  MaxOnly,
};

const char* indicator_name(AnisotropyIndicator ind);
const std::vector<AnisotropyIndicator>& all_indicators();
double indicator_value(const AnisotropyReport& rep, AnisotropyIndicator ind);

// Design-independent effective diffusivity sqrt(D(0) * D(1)) of a material
// pair.  Valid only if the interpolated diffusivity D(chi) attains its
// extrema at the pure phases; this is checked numerically on a 1001-point
// design grid and violations throw.
double design_independent_diffusivity(const MaterialPair& mat);

enum class PlanStrategy { Uniform, Contrast, Resolution, DesignIndependent };

const char* strategy_name(PlanStrategy s);

struct PlanRequest {
  int n_levels = 2;
  double lambda_crit = 0.25;
  PlanStrategy strategy = PlanStrategy::Contrast;
  // How materials propagate to coarser levels for indicator evaluation; use
  // the reassembly of the method under study (P uses its K surrogate).
  ReassemblyMethod reassembly = ReassemblyMethod::K;
  int min_elements = 0;               // Resolution guard M
  const DesignField* chi = nullptr;   // required by D reassembly
  const MaterialPair* mat = nullptr;  // D reassembly and DesignIndependent
};

struct CoarseningPath {
  std::vector<CoarseningDirection> dirs;       // one per coarsening step
  std::vector<double> indicator_at_decision;   // lambda used for each step
  PlanStrategy strategy = PlanStrategy::Contrast;
  double lambda_crit = 0.25;
  int min_elements = 0;

  int n_levels() const { return static_cast<int>(dirs.size()) + 1; }
};

// "x,t,t" — one letter per step.
std::string path_to_string(const CoarseningPath& path);

// Plan n_levels-1 coarsening steps starting from `fine` (materials required
// except for DesignIndependent).  Throws when no legal step exists or a
// forced time step is impossible.
CoarseningPath plan_coarsening(const SpaceTimeGrid& fine,
                               const PlanRequest& req);

}  // namespace stmg
