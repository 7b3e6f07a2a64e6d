#pragma once

// Data-parallel loops. Every kernel writes result i into slot i and reduces
// nothing across threads, so the serial and OpenMP paths are bit-identical.

#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace hyperlevy::kernels {

enum class Exec { serial, openmp };

/// Number of threads the OpenMP path would use (1 when built without OpenMP).
int max_threads();

/// body(i) for i in [0, n). Exceptions from any iteration are rethrown (the
/// one with the smallest index wins so the report is schedule-independent).
void parallel_for(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

/// f(x_j) = (dt / pi) [1/2 + sum_{m=1}^{M} Re(phi_m e^{-i t_m x_j})], t_m = m dt.
/// phi[0] must be phi(0) = 1 and is not read.
void fourier_inversion(const std::vector<std::complex<double>>& phi, double dt, double x0, double dx,
                       std::vector<double>& out, Exec exec);

}  // namespace hyperlevy::kernels
