// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "krein/error.hpp"
#include "krein/matrix.hpp"

namespace krein {

/// Integral over [0, inf) of a complex integrand bounded by C exp(-decay t).
/// Adaptive Gauss-Kronrod on [0, T] with exp(-decay T) < 1e-16; the
/// discarded tail is below `tail_bound` = C exp(-decay T) / decay.
template <class F>
complex integrate_half_line(F&& f, double decay, double envelope = 1.0,
                            double* tail_bound = nullptr) {
  if (!(decay > 0.0)) throw error(errc::bad_range, "integrate_half_line: decay must be positive");
  using boost::math::quadrature::gauss_kronrod;
  const double upper = std::log(1e16) / decay;
  constexpr unsigned max_depth = 30;
  constexpr double tol = 1e-13;
  const double re = gauss_kronrod<double, 31>::integrate(
      [&](double t) { return f(t).real(); }, 0.0, upper, max_depth, tol);
  const double im = gauss_kronrod<double, 31>::integrate(
      [&](double t) { return f(t).imag(); }, 0.0, upper, max_depth, tol);
  if (tail_bound != nullptr) *tail_bound = envelope * std::exp(-decay * upper) / decay;
  return {re, im};
}

}  // namespace krein
