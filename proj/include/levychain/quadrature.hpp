#ifndef LEVYCHAIN_QUADRATURE_HPP
#define LEVYCHAIN_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levychain/common.hpp"

namespace levychain {

// Adaptive Gauss-Kronrod on [a, b] to an absolute tolerance. Throws
// quadrature_error with the achieved error estimate on non-convergence.
template <class Fn>
double integrate(const Fn& f, double a, double b, double abs_tol,
                 unsigned max_depth = 17) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  const double v = gk::integrate(f, a, b, max_depth, 1e-14, &err);
  if (!(err <= abs_tol) && !(err <= 1e-12 * std::abs(v))) {
    throw quadrature_error("quadrature did not reach requested tolerance", err);
  }
  return v;
}

}  // namespace levychain

#endif
