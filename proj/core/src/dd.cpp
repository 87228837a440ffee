#include "capheight/dd.hpp"

#include <algorithm>

namespace capheight {

DoubleDouble sqrt(DoubleDouble a) {
  if (a.hi <= 0.0) return DoubleDouble(0.0);
  // One Newton step on the double approximation doubles the precision.
  double x = std::sqrt(a.hi);
  DoubleDouble xx = dd_detail::two_prod(x, x);
  DoubleDouble r = a - xx;
  return DoubleDouble(x) + DoubleDouble(r.hi / (2.0 * x));
}

ComplexDD operator/(ComplexDD a, ComplexDD b) {
  // Scale by the larger component of b to avoid overflow in |b|^2.
  double br = static_cast<double>(b.re);
  double bi = static_cast<double>(b.im);
  double scale = std::max(std::abs(br), std::abs(bi));
  if (scale == 0.0) {
    return {DoubleDouble(a.re.hi / 0.0), DoubleDouble(a.im.hi / 0.0)};
  }
  DoubleDouble s(1.0 / scale);
  ComplexDD bs{b.re * s, b.im * s};
  ComplexDD as{a.re * s, a.im * s};
  DoubleDouble den = bs.re * bs.re + bs.im * bs.im;
  ComplexDD num = as * conj(bs);
  return {num.re / den, num.im / den};
}

}  // namespace capheight
