#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients, stored lowest order first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs);

  /// Degree after dropping exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const noexcept;
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
  cplx coefficient(int m) const noexcept;
  cplx leading() const noexcept;
  double max_abs_coefficient() const noexcept;

  cplx operator()(cplx z) const noexcept;
  Polynomial derivative() const;
  /// p(-z) as a polynomial.
  Polynomial reflected() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

}  // namespace qcorr
