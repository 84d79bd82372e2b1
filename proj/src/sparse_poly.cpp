#include "ratrec/sparse_poly.hpp"

namespace ratrec {

SparsePoly homogenize(const SparsePoly& poly, std::uint32_t t_degree) {
  SparsePoly out(poly.field(), poly.n_vars() + 1);
  for (const auto& [e, c] : poly.terms()) {
    std::uint32_t d = total_degree(e);
    if (d > t_degree)
      throw std::invalid_argument("homogenize: term total degree " + std::to_string(d) +
                                  " exceeds t-degree " + std::to_string(t_degree));
    ExpVec full(poly.n_vars() + 1);
    full[0] = t_degree - d;
    for (std::uint32_t i = 0; i < poly.n_vars(); ++i) full[i + 1] = e[i];
    out.add_term(full, FieldElement(poly.field(), c));
  }
  return out;
}

} // namespace ratrec
