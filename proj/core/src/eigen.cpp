#include "deltak/eigen.hpp"

namespace deltak {

UPoly characteristic_polynomial(const Matrix<Rational>& m) {
  if (!m.is_square()) throw PreconditionError("characteristic_polynomial: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
  Matrix<Rational> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const Matrix<Rational> am = m * mk;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<unsigned long>(k);
  }
  return UPoly(std::move(c));
}

RationalEigenResult rational_eigen(const Matrix<Rational>& m) {
  if (!m.is_square()) throw PreconditionError("rational_eigen: matrix is not square");
  RationalEigenResult result;
  result.characteristic_polynomial = characteristic_polynomial(m);
  const UPoly integral = result.characteristic_polynomial.primitive_integer();
  unsigned accounted = 0;
  for (const auto& [value, mult] : rational_roots(integral)) {
    Matrix<Rational> shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= value;
    result.pairs.push_back({value, mult, shifted.nullspace()});
    accounted += mult;
  }
  result.non_rational_spectrum = accounted < m.rows();
  return result;
}

}  // namespace deltak
