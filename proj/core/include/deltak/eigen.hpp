#pragma once

#include <vector>

#include "deltak/matrix.hpp"
#include "deltak/upoly.hpp"

namespace deltak {

struct RationalEigenpair {
  Rational value;
  unsigned algebraic_multiplicity = 0;
  /// Nullspace basis of M - value*I.
  std::vector<std::vector<Rational>> eigenvectors;
};

struct RationalEigenResult {
  /// Ascending by eigenvalue.
  std::vector<RationalEigenpair> pairs;
  /// det(x*I - M).
  UPoly characteristic_polynomial;
  /// Set when some eigenvalue is irrational or complex; those are omitted.
  bool non_rational_spectrum = false;
};

/// Characteristic polynomial det(x*I - M) by the Faddeev-LeVerrier recursion.
UPoly characteristic_polynomial(const Matrix<Rational>& m);

/// Rational eigenvalues (rational roots of the integer-normalised
/// characteristic polynomial) with eigenspace bases. Throws
/// PreconditionError for non-square input.
RationalEigenResult rational_eigen(const Matrix<Rational>& m);

}  // namespace deltak
