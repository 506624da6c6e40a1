#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the channel, power and oracle code.
//
// Every kernel exists in a scalar reference form and, on x86-64 builds, an
// AVX2 form.  The unqualified entry points dispatch through function pointers
// chosen at startup from CPU feature detection; tests exercise both variants
// directly through the nested namespaces and require them to agree (exactly
// for min/scale/divide, to accumulation tolerance for the reductions).
//
// Preconditions: sum_recip and sum_log2 require strictly positive, normal,
// finite inputs; min_value requires n >= 1.

namespace gridcast::kernels {

enum class Backend { Scalar, Avx2 };

// Backend selected for the unqualified entry points.
Backend active_backend();

// Force a backend.  Returns false (and changes nothing) if the requested
// backend is not available on this host.
bool set_backend(Backend b);

const char* backend_name(Backend b);

// dst[i] = min(dst[i], src[i])
void min_inplace(double* dst, const double* src, std::size_t n);

// smallest element of x[0..n)
double min_value(const double* x, std::size_t n);

// dst[i] = src[i] * c   (dst may alias src)
void scale(double* dst, const double* src, double c, std::size_t n);

// dst[i] = src[i] / c   (dst may alias src)
void divide(double* dst, const double* src, double c, std::size_t n);

// sum of x[0..n)
double sum(const double* x, std::size_t n);

// sum of 1/x[i]
double sum_recip(const double* x, std::size_t n);

// sum of log2(x[i])
double sum_log2(const double* x, std::size_t n);

namespace scalar {
void min_inplace(double* dst, const double* src, std::size_t n);
double min_value(const double* x, std::size_t n);
void scale(double* dst, const double* src, double c, std::size_t n);
void divide(double* dst, const double* src, double c, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_recip(const double* x, std::size_t n);
double sum_log2(const double* x, std::size_t n);
}  // namespace scalar

#if GRIDCAST_HAVE_AVX2
namespace avx2 {
void min_inplace(double* dst, const double* src, std::size_t n);
double min_value(const double* x, std::size_t n);
void scale(double* dst, const double* src, double c, std::size_t n);
void divide(double* dst, const double* src, double c, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_recip(const double* x, std::size_t n);
double sum_log2(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace gridcast::kernels
