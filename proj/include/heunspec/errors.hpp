#pragma once

#include <stdexcept>
#include <string>

namespace heunspec {

/// Precondition or invariant violation (bad arguments, mismatched variable tags, ...).
class contract_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial division by the zero polynomial.
class division_by_zero : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The three-term recurrence pivot (j+1)(j*alpha1 + beta0) vanished.
class singular_pivot_error : public std::domain_error {
public:
  singular_pivot_error(int j, const std::string& what)
      : std::domain_error(what), pivot_index(j) {}
  int pivot_index;
};

/// The Eq-17-style rescaling from C_j to the orthogonal sequence is undefined.
class bridge_undefined : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A critical-polynomial division left a nonzero remainder.
class factorization_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A guaranteed root count (real, simple) was not observed.
class solvability_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Moment order not pinned by the finite sequence.
class underdetermined_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Parameter constraint violation; the message names the violated inequality.
class weight_domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Finite-difference grid cannot resolve the requested states.
class resolution_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quadrature or series evaluation failed to reach the requested accuracy.
class accuracy_error : public std::runtime_error {
public:
  accuracy_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

} // namespace heunspec
