#ifndef RATREC_SPARSE_POLY_HPP
#define RATREC_SPARSE_POLY_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "ratrec/field.hpp"
#include "ratrec/rational.hpp"

namespace ratrec {

using ExpVec = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const ExpVec& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded ordering used for canonical output: total degree, then lexicographic.
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Multivariate polynomial over a prime field as exponent-vector -> coefficient.
// No zero coefficients are stored; all exponent vectors share one length.
class SparsePoly {
public:
  using TermMap = std::map<ExpVec, std::uint64_t>;

  SparsePoly(const PrimeField& f, std::uint32_t n_vars) : f_(&f), n_(n_vars) {}

  const PrimeField& field() const { return *f_; }
  std::uint32_t n_vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t n_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const ExpVec& e, const FieldElement& c) {
    if (e.size() != n_) throw std::invalid_argument("SparsePoly: exponent vector length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c.value());
    if (!inserted) {
      FieldElement s = FieldElement(*f_, it->second) + c;
      if (s.is_zero())
        terms_.erase(it);
      else
        it->second = s.value();
    }
  }

  FieldElement coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return FieldElement(*f_, it == terms_.end() ? 0 : it->second);
  }

  SparsePoly operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, FieldElement(*f_, c));
    return r;
  }
  SparsePoly operator-(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -FieldElement(*f_, c));
    return r;
  }
  SparsePoly scaled(const FieldElement& k) const {
    SparsePoly r(*f_, n_);
    if (k.is_zero()) return r;
    for (const auto& [e, c] : terms_)
      r.terms_.emplace(e, detail::mulmod(c, k.value(), f_->modulus()));
    return r;
  }

  FieldElement eval(std::span<const FieldElement> point) const {
    if (point.size() != n_) throw std::invalid_argument("SparsePoly::eval: arity mismatch");
    FieldElement acc(*f_, 0);
    for (const auto& [e, c] : terms_) {
      FieldElement t(*f_, c);
      for (std::uint32_t i = 0; i < n_; ++i)
        if (e[i] != 0) t = t * point[i].pow(e[i]);
      acc = acc + t;
    }
    return acc;
  }

  std::uint32_t max_total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  bool operator==(const SparsePoly& o) const {
    return f_->modulus() == o.f_->modulus() && terms_ == o.terms_;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

private:
  const PrimeField* f_;
  std::uint32_t n_;
  TermMap terms_;
};

// Multiplies every term by z_1^(t_degree - total degree), restoring the
// homogenization variable that was fixed to one during interpolation.
// The input has n-1 variables (z_2..z_n); the output has n.
SparsePoly homogenize(const SparsePoly& poly, std::uint32_t t_degree);

// Same skeleton over exact rational coefficients.
class SparsePolyQ {
public:
  using TermMap = std::map<ExpVec, BigRational>;

  explicit SparsePolyQ(std::uint32_t n_vars) : n_(n_vars) {}

  std::uint32_t n_vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t n_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const ExpVec& e, const BigRational& c) {
    if (e.size() != n_) throw std::invalid_argument("SparsePolyQ: exponent vector length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      BigRational s = it->second + c;
      if (s.is_zero())
        terms_.erase(it);
      else
        it->second = s;
    }
  }

  SparsePolyQ operator+(const SparsePolyQ& o) const {
    SparsePolyQ r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  SparsePolyQ operator*(const SparsePolyQ& o) const {
    SparsePolyQ r(n_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        ExpVec e(n_);
        for (std::uint32_t i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  SparsePolyQ scaled(const BigRational& k) const {
    SparsePolyQ r(n_);
    if (k.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
    return r;
  }

  // Image modulo p; throws BadPrimeError if any denominator vanishes.
  SparsePoly to_field(const PrimeField& f) const {
    SparsePoly r(f, n_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.to_field(f));
    return r;
  }

  FieldElement eval_field(const PrimeField& f, std::span<const FieldElement> point) const {
    if (point.size() != n_) throw std::invalid_argument("SparsePolyQ::eval: arity mismatch");
    FieldElement acc(f, 0);
    for (const auto& [e, c] : terms_) {
      FieldElement t = c.to_field(f);
      for (std::uint32_t i = 0; i < n_; ++i)
        if (e[i] != 0) t = t * point[i].pow(e[i]);
      acc = acc + t;
    }
    return acc;
  }

  bool operator==(const SparsePolyQ& o) const { return terms_ == o.terms_; }
  bool operator!=(const SparsePolyQ& o) const { return !(*this == o); }

private:
  std::uint32_t n_;
  TermMap terms_;
};

} // namespace ratrec

#endif
