#ifndef RATREC_VANDERMONDE_HPP
#define RATREC_VANDERMONDE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ratrec/field.hpp"

namespace ratrec {

// Solves sum_j c_j * v_j^i = b_i for i = 1..T via the master-polynomial
// technique in O(T^2) time and O(T) space. Nodes must be nonzero and pairwise
// distinct; a repeated node throws UnluckyEvaluationError (too small cyclic
// group order).
std::vector<FieldElement> solve_shifted_vandermonde_nodes(std::span<const FieldElement> nodes,
                                                          std::span<const FieldElement> values);

// Univariate form: nodes are y^degrees[j], values are f(y^i) for i = 1..T.
std::vector<FieldElement> solve_shifted_vandermonde(const std::vector<std::uint32_t>& degrees,
                                                    const FieldElement& y,
                                                    std::span<const FieldElement> values);

// Dense Gaussian elimination with partial pivoting; rows are modified in
// place. Throws UnluckyEvaluationError when the matrix is singular. Retained
// as the general solver for the pruned t-systems and as a test oracle for the
// structured solvers.
std::vector<std::uint64_t> solve_dense(std::vector<std::uint64_t>& matrix,
                                       std::vector<std::uint64_t>& rhs,
                                       std::size_t n, const PrimeField& f);

} // namespace ratrec

#endif
