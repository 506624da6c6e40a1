#pragma once

#include <vector>

namespace gridcast {

// Dense row-major matrix of doubles, just enough for (node x user) and
// (node x subchannel) tables.
struct Mat2 {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Mat2() = default;
    Mat2(int r, int c, double fill = 0.0) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
    double* row(int r) { return v.data() + static_cast<std::size_t>(r) * cols; }
    const double* row(int r) const { return v.data() + static_cast<std::size_t>(r) * cols; }
};

}  // namespace gridcast
