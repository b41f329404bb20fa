#include "stmg/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stmg {

AnisotropyReport anisotropy(const SpaceTimeGrid& g) {
  if (!g.has_materials())
    throw std::invalid_argument("anisotropy: grid has no materials");
  AnisotropyReport rep;
  rep.lambda_e.resize(g.k.size());
  const double scale = g.dt / (g.dx * g.dx);
  for (std::size_t e = 0; e < g.k.size(); ++e)
    rep.lambda_e[e] = (g.k[e] / g.c[e]) * scale;
  const auto [lo, hi] =
      std::minmax_element(rep.lambda_e.begin(), rep.lambda_e.end());
  rep.lambda_min = *lo;
  rep.lambda_max = *hi;
  rep.lambda_eff = std::sqrt(rep.lambda_min * rep.lambda_max);
  rep.d_eff = rep.lambda_eff / scale;
  return rep;
}

double effective_lambda(const SpaceTimeGrid& g) {
  return anisotropy(g).lambda_eff;
}

const char* indicator_name(AnisotropyIndicator ind) {
  switch (ind) {
    case AnisotropyIndicator::GeoMinMax: return "geo_minmax";
    case AnisotropyIndicator::GeoAll: return "geo_all";
    case AnisotropyIndicator::ArithMinMax: return "arith_minmax";
    case AnisotropyIndicator::ArithAll: return "arith_all";
    case AnisotropyIndicator::HarmMinMax: return "harm_minmax";
    case AnisotropyIndicator::HarmAll: return "harm_all";
    case AnisotropyIndicator::MinOnly: return "min";
    case AnisotropyIndicator::MaxOnly: return "max";
  }
  return "?";
}

const std::vector<AnisotropyIndicator>& all_indicators() {
  static const std::vector<AnisotropyIndicator> v{
      AnisotropyIndicator::GeoMinMax,   AnisotropyIndicator::GeoAll,
      AnisotropyIndicator::ArithMinMax, AnisotropyIndicator::ArithAll,
      AnisotropyIndicator::HarmMinMax,  AnisotropyIndicator::HarmAll,
      AnisotropyIndicator::MinOnly,     AnisotropyIndicator::MaxOnly};
  return v;
}

double indicator_value(const AnisotropyReport& rep, AnisotropyIndicator ind) {
  const auto& l = rep.lambda_e;
  if (l.empty()) throw std::invalid_argument("indicator_value: empty report");
  const double n = static_cast<double>(l.size());
  switch (ind) {
    case AnisotropyIndicator::GeoMinMax:
      return std::sqrt(rep.lambda_min * rep.lambda_max);
    case AnisotropyIndicator::GeoAll: {
      double acc = 0.0;
      for (const double v : l) acc += std::log(v);
      return std::exp(acc / n);
    }
    case AnisotropyIndicator::ArithMinMax:
      return 0.5 * (rep.lambda_min + rep.lambda_max);
    case AnisotropyIndicator::ArithAll: {
      double acc = 0.0;
      for (const double v : l) acc += v;
      return acc / n;
    }
    case AnisotropyIndicator::HarmMinMax:
      return 2.0 / (1.0 / rep.lambda_min + 1.0 / rep.lambda_max);
    case AnisotropyIndicator::HarmAll: {
      double acc = 0.0;
      for (const double v : l) acc += 1.0 / v;
      return n / acc;
    }
    case AnisotropyIndicator::MinOnly: return rep.lambda_min;
    case AnisotropyIndicator::MaxOnly: return rep.lambda_max;
  }
  throw std::logic_error("indicator_value: unreachable");
}

double design_independent_diffusivity(const MaterialPair& mat) {
  const double d0 = mat.k_ins / mat.c_ins;
  const double d1 = mat.k_con / mat.c_con;
  const double lo = std::min(d0, d1), hi = std::max(d0, d1);

  // The interpolated diffusivity must not escape [D(0), D(1)] anywhere on
  // the design interval, otherwise min/max over a level would depend on the
  // design and the fixed path would be wrong.
  constexpr int kSamples = 1001;
  constexpr double kTol = 1e-9;
  for (int i = 0; i < kSamples; ++i) {
    const double chi = static_cast<double>(i) / (kSamples - 1);
    const ElementMaterial m = simp_eval(chi, mat);
    const double d = m.k / m.c;
    if (d < lo * (1.0 - kTol) || d > hi * (1.0 + kTol))
      throw std::invalid_argument(
          "design_independent_diffusivity: interpolated diffusivity has an "
          "interior extremum; the design-independent indicator is invalid "
          "for this material pair");
  }
  return std::sqrt(d0 * d1);
}

const char* strategy_name(PlanStrategy s) {
  switch (s) {
    case PlanStrategy::Uniform: return "uniform";
    case PlanStrategy::Contrast: return "contrast";
    case PlanStrategy::Resolution: return "resolution";
    case PlanStrategy::DesignIndependent: return "design-independent";
  }
  return "?";
}

std::string path_to_string(const CoarseningPath& path) {
  std::string s;
  for (std::size_t i = 0; i < path.dirs.size(); ++i) {
    if (i) s += ',';
    s += direction_name(path.dirs[i]);
  }
  return s;
}

CoarseningPath plan_coarsening(const SpaceTimeGrid& fine,
                               const PlanRequest& req) {
  if (req.n_levels < 1)
    throw std::invalid_argument("plan_coarsening: need at least one level");
  if (req.lambda_crit <= 0.0)
    throw std::invalid_argument("plan_coarsening: lambda_crit must be positive");

  double fixed_d_eff = 0.0;
  if (req.strategy == PlanStrategy::DesignIndependent) {
    if (req.mat == nullptr)
      throw std::invalid_argument(
          "plan_coarsening: design-independent planning needs the material pair");
    fixed_d_eff = design_independent_diffusivity(*req.mat);
  } else if (!fine.has_materials()) {
    throw std::invalid_argument("plan_coarsening: grid has no materials");
  }

  CoarseningPath path;
  path.strategy = req.strategy;
  path.lambda_crit = req.lambda_crit;
  path.min_elements = req.min_elements;

  SpaceTimeGrid level = fine;
  DesignField chi_level;
  const bool track_chi =
      req.reassembly == ReassemblyMethod::D &&
      req.strategy != PlanStrategy::DesignIndependent;
  if (track_chi) {
    if (req.chi == nullptr || req.mat == nullptr)
      throw std::invalid_argument(
          "plan_coarsening: D reassembly needs the design field and materials");
    chi_level = *req.chi;
  }

  for (int l = 1; l < req.n_levels; ++l) {
    double lambda = 0.0;
    switch (req.strategy) {
      case PlanStrategy::Uniform: {
        for (std::size_t e = 1; e < level.k.size(); ++e)
          if (level.k[e] != level.k[0] || level.c[e] != level.c[0])
            throw std::invalid_argument(
                "plan_coarsening: uniform strategy on non-uniform materials");
        lambda = (level.k[0] / level.c[0]) * level.dt / (level.dx * level.dx);
        break;
      }
      case PlanStrategy::Contrast:
      case PlanStrategy::Resolution:
        lambda = effective_lambda(level);
        break;
      case PlanStrategy::DesignIndependent:
        lambda = fixed_d_eff * level.dt / (level.dx * level.dx);
        break;
    }

    const bool guard_blocks_x =
        req.strategy == PlanStrategy::Resolution &&
        level.n_el / 2 < req.min_elements;
    const bool want_time = lambda < req.lambda_crit || guard_blocks_x;

    const bool x_possible = level.n_el % 2 == 0 && level.n_el >= 2;
    const bool t_possible = level.n_t % 2 == 0 && level.n_t >= 2;

    CoarseningDirection dir;
    if (want_time) {
      if (t_possible) {
        dir = CoarseningDirection::TimeT;
      } else if (guard_blocks_x) {
        // The resolution guard forbids space-coarsening; refusing to plan is
        // better than silently violating the element floor.
        throw std::runtime_error(
            "plan_coarsening: forced time-coarsening impossible and the "
            "element floor forbids space-coarsening");
      } else if (x_possible) {
        dir = CoarseningDirection::SpaceX;  // structural fallback
      } else {
        throw std::runtime_error("plan_coarsening: no legal coarsening step");
      }
    } else {
      if (x_possible) {
        dir = CoarseningDirection::SpaceX;
      } else if (t_possible) {
        dir = CoarseningDirection::TimeT;  // structural fallback
      } else {
        throw std::runtime_error("plan_coarsening: no legal coarsening step");
      }
    }

    path.dirs.push_back(dir);
    path.indicator_at_decision.push_back(lambda);

    // Advance to the next level: geometry plus (where needed) materials.
    SpaceTimeGrid next = coarsen_grid(level, dir);
    if (req.strategy != PlanStrategy::DesignIndependent) {
      CoarsenedMaterials cm =
          coarsen_materials(level, dir, req.reassembly,
                            track_chi ? &chi_level : nullptr, req.mat);
      next.k = std::move(cm.k);
      next.c = std::move(cm.c);
      if (track_chi) {
        if (!cm.chi)
          throw std::logic_error("plan_coarsening: design field not propagated");
        chi_level = std::move(*cm.chi);
      }
    }
    level = std::move(next);
  }
  return path;
}

}  // namespace stmg
