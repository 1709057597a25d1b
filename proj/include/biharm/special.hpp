#pragma once

// Cylinder functions of integer order. Thin wrappers over Boost.Math so the rest
// of the library has one place that knows about the backend and its policies.

#include <boost/math/special_functions/bessel.hpp>

#include "biharm/core.hpp"

namespace biharm::special {

namespace detail {
// Report domain problems through our own exception types; let overflow saturate.
using Policy = boost::math::policies::policy<
    boost::math::policies::domain_error<boost::math::policies::throw_on_error>,
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::underflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::promote_double<false>>;

inline double sign_for_negative_order(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }
}  // namespace detail

inline double bessel_j(int m, double x) {
  if (m < 0) return detail::sign_for_negative_order(m) * bessel_j(-m, x);
  return boost::math::cyl_bessel_j(m, x, detail::Policy());
}

inline double bessel_y(int m, double x) {
  if (x <= 0.0) throw DomainError("bessel_y requires a positive argument");
  if (m < 0) return detail::sign_for_negative_order(m) * bessel_y(-m, x);
  return boost::math::cyl_neumann(m, x, detail::Policy());
}

inline double bessel_k(int m, double x) {
  if (x <= 0.0) throw DomainError("bessel_k requires a positive argument");
  return boost::math::cyl_bessel_k(m < 0 ? -m : m, x, detail::Policy());
}

inline double bessel_i(int m, double x) {
  return boost::math::cyl_bessel_i(m < 0 ? -m : m, x, detail::Policy());
}

inline Complex hankel1(int m, double x) { return {bessel_j(m, x), bessel_y(m, x)}; }

// Derivatives via the standard order-lowering relations.
inline double bessel_j_prime(int m, double x) {
  return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}
inline Complex hankel1_prime(int m, double x) {
  return 0.5 * (hankel1(m - 1, x) - hankel1(m + 1, x));
}
inline double bessel_k_prime(int m, double x) {
  return -0.5 * (bessel_k(m - 1, x) + bessel_k(m + 1, x));
}

}  // namespace biharm::special
