#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

// Dense two-phase simplex for small test problems:
//   minimize c.x  subject to  A x <= b,  x >= 0
// (b may be negative).  Bland's rule, so it cannot cycle.  Only meant for
// the handful-of-variables oracles in this test suite.
namespace testsupport {

class SimplexLP {
  public:
    SimplexLP(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    // Returns the optimal objective; throws on infeasible/unbounded.
    double solve() {
        const int m = static_cast<int>(a_.size());
        const int n = m ? static_cast<int>(a_[0].size()) : 0;

        // Normalize rows to nonnegative rhs; rows flipped from <= to >= get
        // an artificial variable, plain <= rows use their slack as basis.
        std::vector<int> art_rows;
        for (int i = 0; i < m; ++i) {
            if (b_[i] < 0.0) {
                for (auto& v : a_[i]) v = -v;
                b_[i] = -b_[i];
                art_rows.push_back(i);
            }
        }
        const int num_art = static_cast<int>(art_rows.size());
        const int cols = n + m + num_art;  // x, slacks, artificials

        // tableau rows: m constraints + objective row
        tab_.assign(m + 1, std::vector<double>(cols + 1, 0.0));
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) tab_[i][j] = a_[i][j];
            tab_[i][cols] = b_[i];
        }
        {
            int k = 0;
            for (int i = 0; i < m; ++i) {
                bool flipped = false;
                for (int r : art_rows) {
                    if (r == i) flipped = true;
                }
                // Slack: +1 for <= rows, -1 (surplus) for flipped rows.
                tab_[i][n + i] = flipped ? -1.0 : 1.0;
                if (flipped) {
                    tab_[i][n + m + k] = 1.0;
                    basis_[i] = n + m + k;
                    ++k;
                } else {
                    basis_[i] = n + i;
                }
            }
        }

        if (num_art > 0) {
            // Phase 1: minimize the artificial sum.
            for (int i = 0; i < m; ++i) {
                if (basis_[i] >= n + m) {
                    for (int j = 0; j <= cols; ++j) tab_[m][j] -= tab_[i][j];
                }
            }
            iterate(cols);
            if (tab_[m][cols] < -1e-8) throw std::runtime_error("simplex: infeasible");
            // Drive any artificial still in the basis out if possible.
            for (int i = 0; i < m; ++i) {
                if (basis_[i] >= n + m) {
                    for (int j = 0; j < n + m; ++j) {
                        if (std::abs(tab_[i][j]) > 1e-9) {
                            pivot(i, j);
                            break;
                        }
                    }
                }
            }
        }

        // Phase 2 objective.
        for (auto& v : tab_[m]) v = 0.0;
        for (int j = 0; j < n; ++j) tab_[m][j] = c_[j];
        for (int i = 0; i < m; ++i) {
            const int bj = basis_[i];
            if (bj < n && std::abs(c_[bj]) > 0.0) {
                for (int j = 0; j <= cols; ++j) tab_[m][j] -= c_[bj] * tab_[i][j];
            }
        }
        // Forbid artificials from re-entering.
        forbidden_from_ = n + m;
        iterate(cols);
        return -tab_[m][cols];
    }

  private:
    void pivot(int row, int col) {
        const int m = static_cast<int>(tab_.size()) - 1;
        const int w = static_cast<int>(tab_[0].size());
        const double p = tab_[row][col];
        for (int j = 0; j < w; ++j) tab_[row][j] /= p;
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < w; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    void iterate(int cols) {
        const int m = static_cast<int>(tab_.size()) - 1;
        for (int guard = 0; guard < 10000; ++guard) {
            int col = -1;
            for (int j = 0; j < cols; ++j) {  // Bland: first negative
                if (forbidden_from_ >= 0 && j >= forbidden_from_) break;
                if (tab_[m][j] < -1e-10) {
                    col = j;
                    break;
                }
            }
            if (col < 0) return;
            int row = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (tab_[i][col] > 1e-10) {
                    const double ratio = tab_[i].back() / tab_[i][col];
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (row < 0 || basis_[i] < basis_[row]))) {
                        best = ratio;
                        row = i;
                    }
                }
            }
            if (row < 0) throw std::runtime_error("simplex: unbounded");
            pivot(row, col);
        }
        throw std::runtime_error("simplex: iteration limit");
    }

    std::vector<std::vector<double>> a_;
    std::vector<double> b_;
    std::vector<double> c_;
    std::vector<std::vector<double>> tab_;
    std::vector<int> basis_;
    int forbidden_from_ = -1;
};

// Minimum total on-grid power over all credit exchanges:
//   min sum s_i   s.t.  s_i >= P_i - E_i + u_i - v_i,  u_i <= E_i,
//                       theta*sum(u) - sum(v) >= 0,   u, v, s >= 0
// with delta_i = u_i - v_i.
inline double settlement_lp_optimum(const std::vector<double>& node_power_w,
                                    const std::vector<double>& energy_rates_w, double theta) {
    const int n = static_cast<int>(node_power_w.size());
    const int nv = 3 * n;  // u, v, s
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < n; ++i) {  // u_i - v_i - s_i <= E_i - P_i
        std::vector<double> row(nv, 0.0);
        row[i] = 1.0;
        row[n + i] = -1.0;
        row[2 * n + i] = -1.0;
        a.push_back(row);
        b.push_back(energy_rates_w[i] - node_power_w[i]);
    }
    for (int i = 0; i < n; ++i) {  // u_i <= E_i
        std::vector<double> row(nv, 0.0);
        row[i] = 1.0;
        a.push_back(row);
        b.push_back(energy_rates_w[i]);
    }
    {  // sum(v) - theta*sum(u) <= 0
        std::vector<double> row(nv, 0.0);
        for (int i = 0; i < n; ++i) {
            row[i] = -theta;
            row[n + i] = 1.0;
        }
        a.push_back(row);
        b.push_back(0.0);
    }
    std::vector<double> c(nv, 0.0);
    for (int i = 0; i < n; ++i) c[2 * n + i] = 1.0;
    return SimplexLP(a, b, c).solve();
}

}  // namespace testsupport
