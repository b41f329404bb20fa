#include "stmg/rediscretisation.hpp"

#include <stdexcept>

namespace stmg {

std::string method_name(const RediscretisationMethod& m) {
  std::string s;
  s += m.interp == InterpolationMethod::Causal ? 'C' : 'B';
  switch (m.reassembly) {
    case ReassemblyMethod::K: s += 'K'; break;
    case ReassemblyMethod::D: s += 'D'; break;
    case ReassemblyMethod::R: s += 'R'; break;
    case ReassemblyMethod::P: s += 'P'; break;
  }
  return s;
}

RediscretisationMethod parse_method(std::string_view name) {
  if (name.size() != 2)
    throw std::invalid_argument("parse_method: expected two letters");
  RediscretisationMethod m;
  switch (name[0]) {
    case 'C': m.interp = InterpolationMethod::Causal; break;
    case 'B': m.interp = InterpolationMethod::Bilinear; break;
    default:
      throw std::invalid_argument("parse_method: unknown interpolation letter");
  }
  switch (name[1]) {
    case 'K': m.reassembly = ReassemblyMethod::K; break;
    case 'D': m.reassembly = ReassemblyMethod::D; break;
    case 'R': m.reassembly = ReassemblyMethod::R; break;
    case 'P': m.reassembly = ReassemblyMethod::P; break;
    default:
      throw std::invalid_argument("parse_method: unknown reassembly letter");
  }
  return m;
}

const std::vector<RediscretisationMethod>& all_methods() {
  static const std::vector<RediscretisationMethod> ms = [] {
    std::vector<RediscretisationMethod> v;
    for (const auto interp :
         {InterpolationMethod::Causal, InterpolationMethod::Bilinear})
      for (const auto re : {ReassemblyMethod::K, ReassemblyMethod::D,
                            ReassemblyMethod::R, ReassemblyMethod::P})
        v.push_back({interp, re});
    return v;
  }();
  return ms;
}

CoarsenedMaterials coarsen_materials(const SpaceTimeGrid& fine,
                                     CoarseningDirection dir,
                                     ReassemblyMethod method,
                                     const DesignField* chi,
                                     const MaterialPair* mat) {
  if (!fine.has_materials())
    throw std::invalid_argument("coarsen_materials: grid has no materials");

  CoarsenedMaterials out;
  if (dir == CoarseningDirection::TimeT) {
    out.k = fine.k;
    out.c = fine.c;
    if (chi) out.chi = *chi;
    return out;
  }
  if (fine.n_el % 2 != 0)
    throw std::invalid_argument("coarsen_materials: odd element count");

  const int n_coarse = fine.n_el / 2;
  out.k.resize(n_coarse);
  out.c.resize(n_coarse);

  switch (method) {
    case ReassemblyMethod::K:
    case ReassemblyMethod::P:
      // Arithmetic averages; for P these are only an indicator surrogate.
      for (int e = 0; e < n_coarse; ++e) {
        out.k[e] = 0.5 * (fine.k[2 * e] + fine.k[2 * e + 1]);
        out.c[e] = 0.5 * (fine.c[2 * e] + fine.c[2 * e + 1]);
      }
      break;
    case ReassemblyMethod::R:
      // Merging two elements in series adds resistivities, hence the
      // harmonic mean for k; capacity stays additive (arithmetic).
      for (int e = 0; e < n_coarse; ++e) {
        const double a = fine.k[2 * e], b = fine.k[2 * e + 1];
        out.k[e] = 2.0 * a * b / (a + b);
        out.c[e] = 0.5 * (fine.c[2 * e] + fine.c[2 * e + 1]);
      }
      break;
    case ReassemblyMethod::D: {
      if (chi == nullptr || mat == nullptr)
        throw std::invalid_argument(
            "coarsen_materials: D method needs the design field and materials");
      if (static_cast<int>(chi->size()) != fine.n_el)
        throw std::invalid_argument(
            "coarsen_materials: design field size mismatch");
      DesignField coarse_chi;
      coarse_chi.chi.resize(n_coarse);
      for (int e = 0; e < n_coarse; ++e)
        coarse_chi.chi[e] = 0.5 * (chi->chi[2 * e] + chi->chi[2 * e + 1]);
      apply_design(out.k, out.c, coarse_chi, *mat);
      out.chi = std::move(coarse_chi);
      break;
    }
  }
  return out;
}

SparseMatrix galerkin_operator(const SparseMatrix& R, const SparseMatrix& J,
                               const SparseMatrix& P) {
  return SparseMatrix::multiply(SparseMatrix::multiply(R, J), P);
}

}  // namespace stmg
