#pragma once

#include "mmlink/quad.hpp"

namespace mmlink {

// Bessel function of the first kind, order zero. Absolute error <= 1e-12 on |x| <= 50.
double bessel_j0(double x);

// Sine integral Si(z) = int_0^z sin(t)/t dt for z >= 0. Absolute error <= 1e-10 on
// z <= 100.
double sine_integral(double z);

// Normalized sinc: sin(pi x)/(pi x), with sinc(0) = 1.
double sinc(double x);

} // namespace mmlink
