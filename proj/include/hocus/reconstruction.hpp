#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hocus/euler.hpp"

namespace hocus {

// One component along one grid line. data points at interior cell 0; valid
// indices run -n_ghost .. n + n_ghost - 1.
struct LineView {
    const double* data = nullptr;
    int n = 0;
    int n_ghost = 3;
    double operator[](int i) const { return data[i]; }
};

inline double sgn(double a) { return (a > 0.0) - (a < 0.0); }

inline double minmod2(double a, double b) {
    return 0.5 * (sgn(a) + sgn(b)) * std::min(std::abs(a), std::abs(b));
}

inline double minmod4(double w, double a, double b, double c) {
    return 0.125 * (sgn(w) + sgn(a)) *
           std::abs((sgn(w) + sgn(b)) * (sgn(w) + sgn(c))) *
           std::min(std::min(std::abs(w), std::abs(a)),
                    std::min(std::abs(b), std::abs(c)));
}

// Unlimited fifth-order upwind interface value from cell averages
// (v0..v4) = (u_{j-2}, .., u_{j+2}) for the interface j+1/2.
inline double linear5(double v0, double v1, double v2, double v3, double v4) {
    return (2.0 * v0 - 13.0 * v1 + 47.0 * v2 + 27.0 * v3 - 3.0 * v4) / 60.0;
}

// Monotonicity-preserving limit of linear5. alpha bounds the admissible
// steepening (4 standalone, 7 as a BVD candidate); eps keeps roundoff-level
// curvature from activating the limiter.
double mp5_limit(double v0, double v1, double v2, double v3, double v4,
                 double alpha, double eps = 1e-20);

// Fifth-order WENO with the tau5 global smoothness weights (q = 1,
// eps = 1e-40) on the same stencil orientation as linear5.
double weno_z(double v0, double v1, double v2, double v3, double v4);

// Solves the tridiagonal system (sub, diag, sup) x = rhs. sub[0] and
// sup[n-1] are ignored. Throws on a vanishing pivot.
std::vector<double> thomas_solve(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& sup,
                                 const std::vector<double>& rhs);

// Scratch buffers reused across per-line reconstruction calls.
struct ReconScratch {
    std::vector<double> diag, rhs, rev, rev_sol;
};

// Left/right-biased interface values at interfaces 0..n (arrays of n+1).

// Explicit MP5: left[k] limits the upwind stencil of the cell left of
// interface k; right[k] the mirrored stencil of the cell to its right.
void reconstruct_mp5(const LineView& u, double alpha, std::vector<double>& left,
                     std::vector<double>& right);

void reconstruct_weno_z(const LineView& u, std::vector<double>& left,
                        std::vector<double>& right);

// Upwind compact fifth-order pair. Interior rows couple (1/2, 1, 1/6) with
// the three-cell right-hand side; the first and last interface of each
// biased sweep are pinned to the MP5 value (same closure for periodic and
// wall lines). The right-biased sweep solves the left-biased system on the
// reversed line, so mirrored data yields bitwise-mirrored results.
void reconstruct_c5(const LineView& u, double alpha, std::vector<double>& left,
                    std::vector<double>& right, ReconScratch& scratch);

// Sixth-order central pair: both sides take the average of the C5 pair.
void average_c6(const std::vector<double>& c5_left,
                const std::vector<double>& c5_right, std::vector<double>& left,
                std::vector<double>& right);

// Second-order TVD pair (kappa = 1/3 variant, expansion factor omega = 4).
void reconstruct_muscl(const LineView& u, std::vector<double>& left,
                       std::vector<double>& right, double eta = 1.0 / 3.0,
                       double omega = 4.0);

// Tanh-profile sharpening; cells without strict one-sided monotonicity fall
// back to the cell average on both faces.
void reconstruct_thinc(const LineView& u, double beta, std::vector<double>& left,
                       std::vector<double>& right, double eps = 1e-20);

} // namespace hocus
