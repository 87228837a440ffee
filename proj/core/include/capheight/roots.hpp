#pragma once

#include <complex>
#include <span>
#include <vector>

#include "capheight/intpoly.hpp"

namespace capheight {

// Numerical roots of an integer polynomial, listed with multiplicity.
struct RootSet {
  std::vector<Complex> roots;
  // max over roots of |P(x)| / sum_i |a_i| |x|^i (relative backward error),
  // evaluated in double-double.
  double residual_bound = 0.0;
  bool converged = true;
  int max_multiplicity = 1;
  int iterations = 0;

  std::size_t size() const noexcept { return roots.size(); }
};

struct RootOptions {
  int max_iterations = 2000;
  // residual_bound above this marks the set as not converged
  double residual_tolerance = 1e-12;
};

// Aberth-Ehrlich simultaneous iteration in double-double precision from
// Newton-polygon circle guesses. Repeated roots are split off by an exact
// squarefree decomposition first; real polynomials get exactly conjugate
// pairs, with the number of real roots fixed by a Sturm count.
RootSet find_roots(const IntPolynomial& p, const RootOptions& options = {});

// Double-precision Aberth iteration for complex coefficients (ascending).
// `initial` may supply warm-start guesses (size = degree).
std::vector<Complex> complex_roots(std::span<const Complex> coefficients,
                                   std::span<const Complex> initial = {}, bool* converged = nullptr);

}  // namespace capheight
