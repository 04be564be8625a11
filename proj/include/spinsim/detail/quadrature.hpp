#ifndef SPINSIM_DETAIL_QUADRATURE_HPP_
#define SPINSIM_DETAIL_QUADRATURE_HPP_

#include <cmath>

namespace spinsim {
namespace detail {

template <typename F>
double simpson_step(F& f, double lo, double hi, double f_lo, double f_mid, double f_hi,
                    double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double f_lm = f(lm);
  const double f_rm = f(rm);
  const double left = (mid - lo) / 6 * (f_lo + 4 * f_lm + f_mid);
  const double right = (hi - mid) / 6 * (f_mid + 4 * f_rm + f_hi);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) {
    return left + right + diff / 15;
  }
  return simpson_step(f, lo, mid, f_lo, f_lm, f_mid, left, tol / 2, depth - 1) +
         simpson_step(f, mid, hi, f_mid, f_rm, f_hi, right, tol / 2, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate(F&& f, double lo, double hi, double tol) {
  if (hi == lo) return 0;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  const double f_mid = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6 * (f_lo + 4 * f_mid + f_hi);
  return detail::simpson_step(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 50);
}

}  // namespace spinsim

#endif  // SPINSIM_DETAIL_QUADRATURE_HPP_
