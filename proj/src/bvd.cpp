#include "hocus/bvd.hpp"

#include <algorithm>

namespace hocus {

namespace {

double tbv_sum(const std::vector<LinePair>& pairs, int j) {
    double s = 0.0;
    for (const auto& p : pairs) s += tbv(p, j);
    return s;
}

void copy_face(std::vector<LinePair>& baseline,
               const std::vector<LinePair>& src, int k) {
    for (std::size_t c = 0; c < baseline.size(); ++c) {
        baseline[c].left[k] = src[c].left[k];
        baseline[c].right[k] = src[c].right[k];
    }
}

// Interfaces 0 and n of a periodic line are the same physical face; both
// copies must change together or the seam fluxes diverge and the update
// stops telescoping.
void overwrite(std::vector<LinePair>& baseline,
               const std::vector<LinePair>& src, int k_lo, int k_hi, int n,
               bool periodic) {
    if (!periodic) {
        k_lo = std::max(k_lo, 0);
        k_hi = std::min(k_hi, n);
        for (int k = k_lo; k <= k_hi; ++k) copy_face(baseline, src, k);
        return;
    }
    for (int k = k_lo; k <= k_hi; ++k) {
        const int m = ((k % n) + n) % n;
        copy_face(baseline, src, m);
        if (m == 0) copy_face(baseline, src, n);
    }
}

} // namespace

int select_hocus(int n, bool periodic, std::vector<LinePair>& baseline,
                 const std::vector<LinePair>& shock,
                 const std::vector<LinePair>& c5,
                 const std::vector<LineView>* gate) {
    std::vector<char> mark(n, 0);
    int count = 0;
    for (int j = 0; j < n; ++j) {
        if (!(tbv_sum(shock, j) < tbv_sum(c5, j))) continue;
        if (gate) {
            bool non_monotone = false;
            for (const auto& u : *gate)
                if ((u[j + 1] - u[j]) * (u[j] - u[j - 1]) < 0.0) {
                    non_monotone = true;
                    break;
                }
            if (!non_monotone) continue;
        }
        mark[j] = 1;
        ++count;
    }
    for (int j = 0; j < n; ++j)
        if (mark[j]) overwrite(baseline, shock, j - 1, j + 2, n, periodic);
    return count;
}

int select_c5t2(int n, bool periodic, std::vector<LinePair>& baseline,
                const std::vector<LinePair>& thinc1,
                const std::vector<LinePair>& thinc2) {
    std::vector<char> mark(n, 0);
    int count = 0;
    for (int j = 0; j < n; ++j)
        if (tbv_sum(thinc1, j) < tbv_sum(baseline, j)) {
            mark[j] = 1;
            ++count;
        }
    for (int j = 0; j < n; ++j)
        if (mark[j]) overwrite(baseline, thinc1, j - 1, j + 2, n, periodic);

    std::fill(mark.begin(), mark.end(), 0);
    for (int j = 0; j < n; ++j)
        if (tbv_sum(thinc2, j) < tbv_sum(baseline, j)) {
            mark[j] = 1;
            ++count;
        }
    for (int j = 0; j < n; ++j)
        if (mark[j]) overwrite(baseline, thinc2, j, j + 1, n, periodic);
    return count;
}

int select_hocus_wenoz(int n, bool periodic, std::vector<LinePair>& baseline,
                       const std::vector<LinePair>& wz,
                       const std::vector<LineView>& cells,
                       double s_threshold) {
    const auto pow4 = [](double x) {
        const double x2 = x * x;
        return x2 * x2;
    };
    std::vector<char> mark(n, 0);
    int count = 0;
    for (int j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < wz.size(); ++c) {
            const double num = pow4(wz[c].left[j] - wz[c].right[j]) +
                               pow4(wz[c].left[j + 1] - wz[c].right[j + 1]);
            const double den = pow4(cells[c][j] - cells[c][j - 1]) +
                               pow4(cells[c][j] - cells[c][j + 1]) + 1e-20;
            const double ratio = num / den;
            const double s = (1.0 - ratio) / std::max(ratio, 1e-20);
            if (s < s_threshold) {
                mark[j] = 1;
                ++count;
                break;
            }
        }
    }
    for (int j = 0; j < n; ++j)
        if (mark[j]) overwrite(baseline, wz, j, j + 1, n, periodic);
    return count;
}

} // namespace hocus
