#include "nlqw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlqw {

namespace {

double sech(double x) {
    const double ax = std::abs(x);
    return ax > 350.0 ? 0.0 : 1.0 / std::cosh(ax);
}

// Solve the symmetric 3x3 system A h = g by Gaussian elimination.
bool solve3(double A[3][3], const double g[3], double h[3]) {
    double M[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) M[r][c] = A[r][c];
        M[r][3] = g[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-300) return false;
        std::swap(M[col], M[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
        }
    }
    for (int r = 0; r < 3; ++r) h[r] = M[r][3] / M[r][r];
    return true;
}

}  // namespace

SolitonFit fit_sech2(const std::vector<double>& x,
                     const std::vector<double>& P) {
    if (x.size() != P.size() || x.size() < 5)
        throw std::invalid_argument("fit_sech2: bad profile size");
    const std::size_t n = x.size();

    std::vector<double> sorted = P;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(n / 2),
                     sorted.end());
    const double median = sorted[n / 2];
    std::size_t ipk = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (P[i] > P[ipk]) ipk = i;
    if (!(P[ipk] > 0.0) || (median > 0.0 && P[ipk] < 10.0 * median))
        throw std::runtime_error("no localized structure");

    // Initial guess: peak height/location, width from the half-maximum span.
    double A = P[ipk], x0 = x[ipk];
    double half_span = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (P[i] > 0.5 * A) half_span = std::max(half_span, std::abs(x[i] - x0));
    // sech^2(b*h) = 1/2 at b*h ~ 0.8814
    double b = half_span > 0.0 ? 0.8814 / half_span : 1.0;

    auto chi2 = [&](double Av, double bv, double x0v) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = sech(bv * (x[i] - x0v));
            const double r = Av * e * e - P[i];
            s += r * r;
        }
        return s;
    };

    double lambda = 1e-3;
    double best = chi2(A, b, x0);
    for (int iter = 0; iter < 200; ++iter) {
        double JtJ[3][3] = {{0}}, Jtr[3] = {0};
        for (std::size_t i = 0; i < n; ++i) {
            const double z = b * (x[i] - x0);
            const double e = sech(z);
            const double f = A * e * e;
            const double t = std::tanh(z);
            const double J0 = e * e;                    // d/dA
            const double J1 = -2.0 * f * t * (x[i] - x0);  // d/db
            const double J2 = 2.0 * f * t * b;             // d/dx0
            const double r = f - P[i];
            const double J[3] = {J0, J1, J2};
            for (int a2 = 0; a2 < 3; ++a2) {
                Jtr[a2] += J[a2] * r;
                for (int b2 = 0; b2 < 3; ++b2) JtJ[a2][b2] += J[a2] * J[b2];
            }
        }
        double Aug[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                Aug[r][c] = JtJ[r][c] + (r == c ? lambda * JtJ[r][c] : 0.0);
        double g[3] = {-Jtr[0], -Jtr[1], -Jtr[2]};
        double h[3];
        if (!solve3(Aug, g, h)) break;
        const double An = A + h[0], bn = b + h[1], x0n = x0 + h[2];
        const double c2 = chi2(An, bn, x0n);
        if (c2 < best) {
            A = An;
            b = std::abs(bn);
            x0 = x0n;
            if (best - c2 < 1e-15 * (1.0 + best)) {
                best = c2;
                break;
            }
            best = c2;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }

    SolitonFit fit;
    fit.amplitude = A;
    fit.beta = b;
    fit.center = x0;
    fit.rms_residual = std::sqrt(best / static_cast<double>(n));
    return fit;
}

}  // namespace nlqw
