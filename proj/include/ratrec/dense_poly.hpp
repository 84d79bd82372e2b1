#ifndef RATREC_DENSE_POLY_HPP
#define RATREC_DENSE_POLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ratrec/field.hpp"

namespace ratrec {

// Univariate polynomial over a prime field; coefficient i belongs to z^i.
// Trailing zeros are trimmed, the zero polynomial is the empty list.
class DensePolyFF {
public:
  explicit DensePolyFF(const PrimeField& f) : f_(&f) {}
  DensePolyFF(const PrimeField& f, std::vector<std::uint64_t> coeffs) : f_(&f) {
    c_.reserve(coeffs.size());
    for (auto v : coeffs) c_.push_back(v % f.modulus());
    trim();
  }

  const PrimeField& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }

  FieldElement coeff(std::size_t i) const {
    return FieldElement(*f_, i < c_.size() ? c_[i] : 0);
  }
  void set_coeff(std::size_t i, const FieldElement& v) {
    if (i >= c_.size()) c_.resize(i + 1, 0);
    c_[i] = v.value();
    trim();
  }
  FieldElement leading() const {
    if (c_.empty()) throw std::domain_error("DensePolyFF: zero polynomial has no leading coefficient");
    return FieldElement(*f_, c_.back());
  }

  FieldElement eval(const FieldElement& x) const {
    FieldElement acc(*f_, 0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + FieldElement(*f_, c_[i]);
    return acc;
  }

  DensePolyFF operator+(const DensePolyFF& g) const {
    DensePolyFF r(*f_);
    r.c_.resize(std::max(c_.size(), g.c_.size()), 0);
    const std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      std::uint64_t s = (i < c_.size() ? c_[i] : 0) + (i < g.c_.size() ? g.c_[i] : 0);
      r.c_[i] = s >= p ? s - p : s;
    }
    r.trim();
    return r;
  }
  DensePolyFF operator-(const DensePolyFF& g) const {
    DensePolyFF r(*f_);
    r.c_.resize(std::max(c_.size(), g.c_.size()), 0);
    const std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      std::uint64_t a = i < c_.size() ? c_[i] : 0;
      std::uint64_t b = i < g.c_.size() ? g.c_[i] : 0;
      r.c_[i] = a >= b ? a - b : a + p - b;
    }
    r.trim();
    return r;
  }
  DensePolyFF operator*(const DensePolyFF& g) const {
    DensePolyFF r(*f_);
    if (is_zero() || g.is_zero()) return r;
    const std::uint64_t p = f_->modulus();
    r.c_.assign(c_.size() + g.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < g.c_.size(); ++j) {
        if (g.c_[j] == 0) continue;
        std::uint64_t s = r.c_[i + j] + detail::mulmod(c_[i], g.c_[j], p);
        r.c_[i + j] = s >= p ? s - p : s;
      }
    }
    r.trim();
    return r;
  }
  DensePolyFF scaled(const FieldElement& k) const {
    DensePolyFF r(*f_);
    if (k.is_zero()) return r;
    const std::uint64_t p = f_->modulus();
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::mulmod(c_[i], k.value(), p);
    r.trim();
    return r;
  }

  // this = q * d + r with deg r < deg d.
  std::pair<DensePolyFF, DensePolyFF> divrem(const DensePolyFF& d) const {
    if (d.is_zero()) throw std::domain_error("DensePolyFF: division by zero polynomial");
    DensePolyFF q(*f_), r = *this;
    if (degree() < d.degree()) return {q, r};
    const std::uint64_t p = f_->modulus();
    const FieldElement inv_lead = d.leading().inv();
    q.c_.assign(c_.size() - d.c_.size() + 1, 0);
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t k = r.c_.size() - d.c_.size();
      std::uint64_t factor = detail::mulmod(r.c_.back(), inv_lead.value(), p);
      q.c_[k] = factor;
      for (std::size_t i = 0; i < d.c_.size(); ++i) {
        std::uint64_t sub = detail::mulmod(factor, d.c_[i], p);
        std::uint64_t a = r.c_[i + k];
        r.c_[i + k] = a >= sub ? a - sub : a + p - sub;
      }
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  DensePolyFF mod(const DensePolyFF& d) const { return divrem(d).second; }

  DensePolyFF monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
  }

  DensePolyFF derivative() const {
    DensePolyFF r(*f_);
    if (c_.size() <= 1) return r;
    const std::uint64_t p = f_->modulus();
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_[i - 1] = detail::mulmod(c_[i], i % p, p);
    r.trim();
    return r;
  }

  // Coefficient list reversed: z^deg * P(1/z).
  DensePolyFF reversed() const {
    DensePolyFF r(*f_);
    r.c_.assign(c_.rbegin(), c_.rend());
    r.trim();
    return r;
  }

  static DensePolyFF gcd(DensePolyFF a, DensePolyFF b) {
    while (!b.is_zero()) {
      DensePolyFF r = a.mod(b);
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  bool operator==(const DensePolyFF& g) const {
    return f_->modulus() == g.f_->modulus() && c_ == g.c_;
  }
  bool operator!=(const DensePolyFF& g) const { return !(*this == g); }

  const std::vector<std::uint64_t>& coeffs() const { return c_; }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const PrimeField* f_;
  std::vector<std::uint64_t> c_;
};

} // namespace ratrec

#endif
