#include "ratrec/rational_function.hpp"

#include <sstream>

#include "ratrec/errors.hpp"

namespace ratrec {

void UnivariateRational::normalize() {
  if (den.is_zero()) throw std::domain_error("UnivariateRational: zero denominator");
  std::size_t low = 0;
  while (den.coeff(low).is_zero()) ++low;
  FieldElement inv = den.coeff(low).inv();
  num = num.scaled(inv);
  den = den.scaled(inv);
}

FieldElement UnivariateRational::eval(const FieldElement& t) const {
  return num.eval(t) / den.eval(t);
}

RationalFunctionFF::RationalFunctionFF(SparsePoly num, SparsePoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RationalFunctionFF: zero denominator");
  canonicalize();
}

void RationalFunctionFF::canonicalize() {
  // minimal-degree denominator term: lowest total degree, then lexicographic
  const ExpVec* min_e = nullptr;
  for (const auto& [e, c] : den_.terms()) {
    if (!min_e || GradedLexLess{}(e, *min_e)) min_e = &e;
  }
  FieldElement inv = den_.coeff(*min_e).inv();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

FieldElement RationalFunctionFF::eval(std::span<const FieldElement> point) const {
  return num_.eval(point) / den_.eval(point);
}

RationalFunctionQ::RationalFunctionQ(SparsePolyQ num, SparsePolyQ den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RationalFunctionQ: zero denominator");
  canonicalize();
}

void RationalFunctionQ::canonicalize() {
  const ExpVec* min_e = nullptr;
  for (const auto& [e, c] : den_.terms()) {
    if (!min_e || GradedLexLess{}(e, *min_e)) min_e = &e;
  }
  BigRational c = den_.terms().at(*min_e);
  BigRational inv = BigRational(1) / c;
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RationalFunctionFF RationalFunctionQ::to_field(const PrimeField& f) const {
  return RationalFunctionFF(num_.to_field(f), den_.to_field(f));
}

FieldElement RationalFunctionQ::eval_field(const PrimeField& f,
                                           std::span<const FieldElement> point) const {
  return num_.eval_field(f, point) / den_.eval_field(f, point);
}

namespace {

void append_monomial(std::ostringstream& os, const ExpVec& e,
                     const std::vector<std::string>& names, bool lead_star) {
  bool first = !lead_star;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << names[i];
    if (e[i] > 1) os << "^" << e[i];
  }
}

std::string abs_str(const BigRational& c) {
  BigRational a = c.numerator() < 0 ? -c : c;
  return a.str();
}

} // namespace

std::string polynomial_str(const SparsePolyQ& p, const std::vector<std::string>& var_names) {
  if (var_names.size() != p.n_vars())
    throw std::invalid_argument("polynomial_str: variable name count mismatch");
  if (p.is_zero()) return "0";

  // graded-lex order for deterministic output
  std::vector<const std::pair<const ExpVec, BigRational>*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) {
    return GradedLexLess{}(a->first, b->first);
  });

  std::ostringstream os;
  bool first = true;
  for (auto* t : terms) {
    const auto& [e, c] = *t;
    const bool negative = c.numerator() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? "-" : "+");
    }
    first = false;
    const bool constant = total_degree(e) == 0;
    const bool unit = abs_str(c) == "1";
    if (constant || !unit) {
      os << abs_str(c);
      append_monomial(os, e, var_names, true);
    } else {
      append_monomial(os, e, var_names, false);
    }
  }
  return os.str();
}

std::string RationalFunctionQ::str(const std::vector<std::string>& var_names) const {
  std::string num = polynomial_str(num_, var_names);
  // denominator == 1?
  if (den_.n_terms() == 1) {
    const auto& [e, c] = *den_.terms().begin();
    if (total_degree(e) == 0 && c == BigRational(1)) return num;
  }
  std::string den = polynomial_str(den_, var_names);
  // the denominator may stay bare only if it is a single power of a single
  // variable with coefficient one; anything else needs parentheses
  bool bare = false;
  if (den_.n_terms() == 1) {
    const auto& [e, c] = *den_.terms().begin();
    int nontrivial = 0;
    for (auto x : e)
      if (x != 0) ++nontrivial;
    bare = (c == BigRational(1)) && nontrivial == 1;
  }
  std::string out = "(" + num + ")/";
  if (bare)
    out += den;
  else
    out += "(" + den + ")";
  return out;
}

} // namespace ratrec
