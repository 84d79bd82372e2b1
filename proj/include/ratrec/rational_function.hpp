#ifndef RATREC_RATIONAL_FUNCTION_HPP
#define RATREC_RATIONAL_FUNCTION_HPP

#include <span>
#include <string>
#include <vector>

#include "ratrec/dense_poly.hpp"
#include "ratrec/sparse_poly.hpp"

namespace ratrec {

// Univariate rational function over the field, numerator/denominator form.
struct UnivariateRational {
  DensePolyFF num;
  DensePolyFF den;

  // Scales both sides so the lowest nonzero denominator coefficient is 1.
  void normalize();
  FieldElement eval(const FieldElement& t) const; // throws ZeroDivisorError at poles
};

// Multivariate rational function over a prime field. Canonical form: the
// denominator's minimal-degree term (graded-lex smallest) has coefficient 1.
class RationalFunctionFF {
public:
  RationalFunctionFF(SparsePoly num, SparsePoly den);

  const SparsePoly& num() const { return num_; }
  const SparsePoly& den() const { return den_; }
  std::uint32_t n_vars() const { return num_.n_vars(); }
  const PrimeField& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }

  void canonicalize();
  FieldElement eval(std::span<const FieldElement> point) const;

  bool operator==(const RationalFunctionFF& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

private:
  SparsePoly num_;
  SparsePoly den_;
};

// The final artifact: exact rational coefficients, same canonical form over Q.
class RationalFunctionQ {
public:
  RationalFunctionQ(SparsePolyQ num, SparsePolyQ den);

  const SparsePolyQ& num() const { return num_; }
  const SparsePolyQ& den() const { return den_; }
  std::uint32_t n_vars() const { return num_.n_vars(); }
  bool is_zero() const { return num_.is_zero(); }

  void canonicalize();
  // Image modulo p (throws BadPrimeError when a denominator vanishes mod p).
  RationalFunctionFF to_field(const PrimeField& f) const;
  FieldElement eval_field(const PrimeField& f, std::span<const FieldElement> point) const;

  // Canonical infix text, re-parseable by the expression parser.
  std::string str(const std::vector<std::string>& var_names) const;

  bool operator==(const RationalFunctionQ& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

private:
  SparsePolyQ num_;
  SparsePolyQ den_;
};

// Canonical polynomial text: terms sorted by total degree then lexicographic
// exponent vector, coefficients as num/den with den omitted when 1.
std::string polynomial_str(const SparsePolyQ& p, const std::vector<std::string>& var_names);

} // namespace ratrec

#endif
