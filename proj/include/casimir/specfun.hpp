#pragma once

// Auxiliary functions for the Laplace kernel
//   I(r) = int_0^inf dx exp(-2 r x / c) / (x^2 + omega0^2) = f(2 r omega0 / c) / omega0
// and its r-derivatives.

#include <vector>

#include "casimir/core_model.hpp"

namespace casimir {

struct KernelEval {
  double value;
  double abs_error_estimate;
};

/// Highest derivative order accepted by kernel_deriv.
inline constexpr int kMaxKernelOrder = 8;

/// f(z) = int_0^inf exp(-z t) / (1 + t^2) dt, z > 0.
double auxiliary_f(double z);

/// h_m(z) = int_0^inf t^m exp(-z t) / (1 + t^2) dt. h_0 is auxiliary_f.
/// Quadrature below z = 40 + 3m, asymptotic series above.
double aux_moment(int m, double z);

/// All of h_0 .. h_mmax at one z.
std::vector<double> aux_moments(int mmax, double z);

KernelEval laplace_kernel(double r, const AtomParams& p);

/// d^n/dr^n [ I(r) / r ], 0 <= n <= kMaxKernelOrder. Analytic (Leibniz rule on
/// the moment representation of I^(m)).
KernelEval kernel_deriv(double r, int n, const AtomParams& p);

/// Orders 0 .. nmax in one pass.
std::vector<KernelEval> kernel_derivs(double r, int nmax, const AtomParams& p);

/// d^n/dr^n of K(r) = int_0^inf dk sin(2kr) / (2kr (kc + omega0)), using
/// K(r) = pi / (4 r omega0) - I(r) / (2r). Orders 0 .. nmax.
std::vector<KernelEval> sinc_kernel_derivs(double r, int nmax, const AtomParams& p);
KernelEval sinc_kernel_deriv(double r, int n, const AtomParams& p);

}  // namespace casimir
