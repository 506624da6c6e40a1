#include "gridcast/kernels.hpp"

#include <cassert>
#include <cmath>

namespace gridcast::kernels {

namespace scalar {

void min_inplace(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (src[i] < dst[i]) dst[i] = src[i];
    }
}

double min_value(const double* x, std::size_t n) {
    assert(n >= 1);
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] < m) m = x[i];
    }
    return m;
}

void scale(double* dst, const double* src, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * c;
}

void divide(double* dst, const double* src, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] / c;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_recip(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += 1.0 / x[i];
    return acc;
}

double sum_log2(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        assert(x[i] > 0.0 && std::isfinite(x[i]));
        acc += std::log2(x[i]);
    }
    return acc;
}

}  // namespace scalar

namespace {

struct Dispatch {
    Backend backend;
    void (*min_inplace)(double*, const double*, std::size_t);
    double (*min_value)(const double*, std::size_t);
    void (*scale)(double*, const double*, double, std::size_t);
    void (*divide)(double*, const double*, double, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*sum_recip)(const double*, std::size_t);
    double (*sum_log2)(const double*, std::size_t);
};

constexpr Dispatch kScalarTable = {
    Backend::Scalar,    scalar::min_inplace, scalar::min_value,
    scalar::scale,      scalar::divide,      scalar::sum,
    scalar::sum_recip,  scalar::sum_log2,
};

#if GRIDCAST_HAVE_AVX2
constexpr Dispatch kAvx2Table = {
    Backend::Avx2,    avx2::min_inplace, avx2::min_value,
    avx2::scale,      avx2::divide,      avx2::sum,
    avx2::sum_recip,  avx2::sum_log2,
};

bool host_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Dispatch* initial_table() {
#if GRIDCAST_HAVE_AVX2
    if (host_has_avx2()) return &kAvx2Table;
#endif
    return &kScalarTable;
}

const Dispatch* g_table = initial_table();

}  // namespace

Backend active_backend() { return g_table->backend; }

bool set_backend(Backend b) {
    switch (b) {
        case Backend::Scalar:
            g_table = &kScalarTable;
            return true;
        case Backend::Avx2:
#if GRIDCAST_HAVE_AVX2
            if (host_has_avx2()) {
                g_table = &kAvx2Table;
                return true;
            }
#endif
            return false;
    }
    return false;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

void min_inplace(double* dst, const double* src, std::size_t n) {
    g_table->min_inplace(dst, src, n);
}
double min_value(const double* x, std::size_t n) { return g_table->min_value(x, n); }
void scale(double* dst, const double* src, double c, std::size_t n) {
    g_table->scale(dst, src, c, n);
}
void divide(double* dst, const double* src, double c, std::size_t n) {
    g_table->divide(dst, src, c, n);
}
double sum(const double* x, std::size_t n) { return g_table->sum(x, n); }
double sum_recip(const double* x, std::size_t n) { return g_table->sum_recip(x, n); }
double sum_log2(const double* x, std::size_t n) { return g_table->sum_log2(x, n); }

}  // namespace gridcast::kernels
