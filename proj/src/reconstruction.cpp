#include "hocus/reconstruction.hpp"

#include <algorithm>

namespace hocus {

double mp5_limit(double v0, double v1, double v2, double v3, double v4,
                 double alpha, double eps) {
    const double p5 = linear5(v0, v1, v2, v3, v4);
    const double u_mp = v2 + minmod2(v3 - v2, alpha * (v2 - v1));
    if ((p5 - v2) * (p5 - u_mp) <= eps) return p5;

    const double dm = v0 - 2.0 * v1 + v2;
    const double d0 = v1 - 2.0 * v2 + v3;
    const double dp = v2 - 2.0 * v3 + v4;
    const double dm4_plus = minmod4(4.0 * d0 - dp, 4.0 * dp - d0, d0, dp);
    const double dm4_minus = minmod4(4.0 * d0 - dm, 4.0 * dm - d0, d0, dm);

    const double u_ul = v2 + alpha * (v2 - v1);
    const double u_av = 0.5 * (v2 + v3);
    const double u_md = u_av - 0.5 * dm4_plus;
    const double u_lc = v2 + 0.5 * (v2 - v1) + (4.0 / 3.0) * dm4_minus;

    const double u_min = std::max(std::min(std::min(v2, v3), u_md),
                                  std::min(std::min(v2, u_ul), u_lc));
    const double u_max = std::min(std::max(std::max(v2, v3), u_md),
                                  std::max(std::max(v2, u_ul), u_lc));
    return p5 + minmod2(u_min - p5, u_max - p5);
}

double weno_z(double v0, double v1, double v2, double v3, double v4) {
    constexpr double eps = 1e-40;
    const double b0 = (13.0 / 12.0) * (v0 - 2.0 * v1 + v2) * (v0 - 2.0 * v1 + v2) +
                      0.25 * (v0 - 4.0 * v1 + 3.0 * v2) * (v0 - 4.0 * v1 + 3.0 * v2);
    const double b1 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) * (v1 - 2.0 * v2 + v3) +
                      0.25 * (v1 - v3) * (v1 - v3);
    const double b2 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) * (v2 - 2.0 * v3 + v4) +
                      0.25 * (3.0 * v2 - 4.0 * v3 + v4) * (3.0 * v2 - 4.0 * v3 + v4);
    const double tau5 = std::abs(b0 - b2);
    const double a0 = 0.1 * (1.0 + tau5 / (b0 + eps));
    const double a1 = 0.6 * (1.0 + tau5 / (b1 + eps));
    const double a2 = 0.3 * (1.0 + tau5 / (b2 + eps));
    const double q0 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0;
    const double q1 = (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0;
    const double q2 = (2.0 * v2 + 5.0 * v3 - v4) / 6.0;
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

std::vector<double> thomas_solve(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& sup,
                                 const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> b(diag), d(rhs), x(n);
    for (std::size_t i = 1; i < n; ++i) {
        if (b[i - 1] == 0.0) throw SolverError("tridiagonal solve: zero pivot");
        const double m = sub[i] / b[i - 1];
        b[i] -= m * sup[i - 1];
        d[i] -= m * d[i - 1];
    }
    if (b[n - 1] == 0.0) throw SolverError("tridiagonal solve: zero pivot");
    x[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - sup[i] * x[i + 1]) / b[i];
    return x;
}

void reconstruct_mp5(const LineView& u, double alpha, std::vector<double>& left,
                     std::vector<double>& right) {
    left.resize(u.n + 1);
    right.resize(u.n + 1);
    for (int k = 0; k <= u.n; ++k) {
        left[k] = mp5_limit(u[k - 3], u[k - 2], u[k - 1], u[k], u[k + 1], alpha);
        right[k] = mp5_limit(u[k + 2], u[k + 1], u[k], u[k - 1], u[k - 2], alpha);
    }
}

void reconstruct_weno_z(const LineView& u, std::vector<double>& left,
                        std::vector<double>& right) {
    left.resize(u.n + 1);
    right.resize(u.n + 1);
    for (int k = 0; k <= u.n; ++k) {
        left[k] = weno_z(u[k - 3], u[k - 2], u[k - 1], u[k], u[k + 1]);
        right[k] = weno_z(u[k + 2], u[k + 1], u[k], u[k - 1], u[k - 2]);
    }
}

namespace {

// Left-biased compact sweep with MP5-pinned end rows; constant interior
// coefficients (1/2, 1, 1/6) are eliminated in place.
void c5_left_sweep(const LineView& u, double alpha, std::vector<double>& out,
                   std::vector<double>& diag, std::vector<double>& rhs) {
    const int m = u.n + 1;
    diag.resize(m);
    rhs.resize(m);
    out.resize(m);
    diag[0] = 1.0;
    rhs[0] = mp5_limit(u[-3], u[-2], u[-1], u[0], u[1], alpha);
    for (int k = 1; k < u.n; ++k) {
        diag[k] = 1.0;
        rhs[k] = (1.0 / 18.0) * u[k - 2] + (19.0 / 18.0) * u[k - 1] +
                 (5.0 / 9.0) * u[k];
    }
    diag[u.n] = 1.0;
    rhs[u.n] = mp5_limit(u[u.n - 3], u[u.n - 2], u[u.n - 1], u[u.n], u[u.n + 1], alpha);

    // Forward elimination: sub = 1/2 and sup = 1/6 on rows 1..n-1, both 0 on
    // the pinned rows 0 and n.
    for (int k = 1; k < m; ++k) {
        const double sub = (k < u.n) ? 0.5 : 0.0;
        const double sup_prev = (k - 1 >= 1) ? (1.0 / 6.0) : 0.0;
        const double f = sub / diag[k - 1];
        diag[k] -= f * sup_prev;
        rhs[k] -= f * rhs[k - 1];
    }
    out[m - 1] = rhs[m - 1] / diag[m - 1];
    for (int k = m - 2; k >= 0; --k) {
        const double sup = (k >= 1) ? (1.0 / 6.0) : 0.0;
        out[k] = (rhs[k] - sup * out[k + 1]) / diag[k];
    }
}

} // namespace

void reconstruct_c5(const LineView& u, double alpha, std::vector<double>& left,
                    std::vector<double>& right, ReconScratch& s) {
    c5_left_sweep(u, alpha, left, s.diag, s.rhs);

    // Right-biased values solve the mirrored system: reverse the line
    // (ghosts included), run the left-biased sweep, reverse the result.
    const int total = u.n + 2 * u.n_ghost;
    s.rev.resize(total);
    for (int i = 0; i < total; ++i) s.rev[i] = u.data[u.n - 1 + u.n_ghost - i];
    LineView ur{s.rev.data() + u.n_ghost, u.n, u.n_ghost};
    c5_left_sweep(ur, alpha, s.rev_sol, s.diag, s.rhs);
    right.resize(u.n + 1);
    for (int k = 0; k <= u.n; ++k) right[k] = s.rev_sol[u.n - k];
}

void average_c6(const std::vector<double>& c5_left,
                const std::vector<double>& c5_right, std::vector<double>& left,
                std::vector<double>& right) {
    const std::size_t m = c5_left.size();
    left.resize(m);
    right.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double avg = 0.5 * (c5_left[k] + c5_right[k]);
        left[k] = avg;
        right[k] = avg;
    }
}

void reconstruct_muscl(const LineView& u, std::vector<double>& left,
                       std::vector<double>& right, double eta, double omega) {
    left.resize(u.n + 1);
    right.resize(u.n + 1);
    for (int c = -1; c <= u.n; ++c) {
        const double dm = u[c] - u[c - 1];
        const double dp = u[c + 1] - u[c];
        const double s_plus = minmod2(dp, omega * dm);
        const double s_minus = minmod2(dm, omega * dp);
        if (c + 1 <= u.n)
            left[c + 1] = u[c] + 0.25 * ((1.0 - eta) * s_minus + (1.0 + eta) * s_plus);
        if (c >= 0)
            right[c] = u[c] - 0.25 * ((1.0 - eta) * s_plus + (1.0 + eta) * s_minus);
    }
}

void reconstruct_thinc(const LineView& u, double beta, std::vector<double>& left,
                       std::vector<double>& right, double eps) {
    left.resize(u.n + 1);
    right.resize(u.n + 1);
    const double tb = std::tanh(beta);
    const double ch = std::cosh(beta);
    for (int c = -1; c <= u.n; ++c) {
        double face_l = u[c], face_r = u[c];
        if ((u[c + 1] - u[c]) * (u[c] - u[c - 1]) > 0.0) {
            const double lo = std::min(u[c - 1], u[c + 1]);
            const double jump = std::max(u[c - 1], u[c + 1]) - lo;
            const double theta = sgn(u[c + 1] - u[c - 1]);
            const double C = (u[c] - lo + eps) / (jump + eps);
            const double B = std::exp(theta * beta * (2.0 * C - 1.0));
            const double A = (B / ch - 1.0) / tb;
            face_l = lo + 0.5 * jump * (1.0 + theta * (tb + A) / (1.0 + A * tb));
            face_r = lo + 0.5 * jump * (1.0 + theta * A);
        }
        if (c + 1 <= u.n) left[c + 1] = face_l;
        if (c >= 0) right[c] = face_r;
    }
}

} // namespace hocus
