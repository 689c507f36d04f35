#ifndef MTCHAN_INVERSION_HPP_
#define MTCHAN_INVERSION_HPP_

#include "mtchan/stable.hpp"

namespace mtchan::inversion {

// Direct Fourier inversion of the standard characteristic function:
//
//   f(x) = (1/pi) int_0^inf Re[phi(t) e^{-jxt}] dt
//   F(x) = 1/2 - (1/pi) int_0^inf Im[phi(t) e^{-jxt}] / t dt   (Gil-Pelaez)
//
// The integration range is cut where |phi| < 1e-16 and split into panels no
// wider than the local oscillation period. Cost grows linearly with |x|, so
// this is a cross-check route, not the production path.
double pdf(const StandardStable& s, double x);
double cdf(const StandardStable& s, double x);

}  // namespace mtchan::inversion

#endif  // MTCHAN_INVERSION_HPP_
