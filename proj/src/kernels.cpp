#include "hyperlevy/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperlevy::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(hyperlevy_parallel_for_error)
            {
                if (static_cast<std::size_t>(i) < first_index) {
                    first_index = static_cast<std::size_t>(i);
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

double inversion_point(const std::vector<std::complex<double>>& phi, double dt, double x) {
    double sum = 0.5;
    for (std::size_t m = 1; m < phi.size(); ++m) {
        const double angle = static_cast<double>(m) * dt * x;
        sum += phi[m].real() * std::cos(angle) + phi[m].imag() * std::sin(angle);
    }
    return sum * dt / std::numbers::pi;
}

}  // namespace

void fourier_inversion(const std::vector<std::complex<double>>& phi, double dt, double x0, double dx,
                       std::vector<double>& out, Exec exec) {
    const std::size_t n = out.size();
    if (exec == Exec::serial) {
        for (std::size_t j = 0; j < n; ++j) out[j] = inversion_point(phi, dt, x0 + static_cast<double>(j) * dx);
        return;
    }
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < count; ++j) {
        out[j] = inversion_point(phi, dt, x0 + static_cast<double>(j) * dx);
    }
}

}  // namespace hyperlevy::kernels
