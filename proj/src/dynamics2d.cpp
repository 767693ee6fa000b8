#include "nlqw/dynamics2d.hpp"

#include <cmath>
#include <stdexcept>

#include "nlqw/dynamics1d.hpp"

namespace nlqw {

namespace {

SpinorField2D coin2d(const SpinorField2D& psi, const WalkParams& p) {
    SpinorField2D out(psi.grid_x(), psi.grid_y());
    for (std::size_t i = 0; i < psi.sites().size(); ++i) {
        const Spinor& s = psi.sites()[i];
        const double th = nonlinear_angle(s, p);
        const double c = std::cos(th), sn = std::sin(th);
        out.sites()[i].u = c * s.u - sn * s.d;
        out.sites()[i].d = sn * s.u + c * s.d;
    }
    return out;
}

enum class Axis { x, y };

SpinorField2D shift2d(const SpinorField2D& psi, Axis axis, Boundary boundary) {
    SpinorField2D out(psi.grid_x(), psi.grid_y());
    const int xlo = psi.grid_x().j_min, xhi = psi.grid_x().j_max;
    const int ylo = psi.grid_y().j_min, yhi = psi.grid_y().j_max;
    const bool periodic = boundary == Boundary::periodic;
    for (int jy = ylo; jy <= yhi; ++jy) {
        for (int jx = xlo; jx <= xhi; ++jx) {
            const Spinor& s = psi.at(jx, jy);
            int ux = jx, uy = jy, dx = jx, dy = jy;
            if (axis == Axis::x) {
                ux = jx + 1;
                dx = jx - 1;
                if (periodic) {
                    if (ux > xhi) ux = xlo;
                    if (dx < xlo) dx = xhi;
                }
            } else {
                uy = jy + 1;
                dy = jy - 1;
                if (periodic) {
                    if (uy > yhi) uy = ylo;
                    if (dy < ylo) dy = yhi;
                }
            }
            if (!periodic) {
                if ((ux > xhi || uy > yhi) && s.u != cplx{})
                    throw std::runtime_error(
                        "shift2d: wavefront reached the open boundary");
                if ((dx < xlo || dy < ylo) && s.d != cplx{})
                    throw std::runtime_error(
                        "shift2d: wavefront reached the open boundary");
            }
            if (ux <= xhi && uy <= yhi) out.at(ux, uy).u += s.u;
            if (dx >= xlo && dy >= ylo) out.at(dx, dy).d += s.d;
        }
    }
    return out;
}

}  // namespace

SpinorField2D step2d(const SpinorField2D& psi, const WalkParams& p) {
    // S_y C S_x C, with the nonlinear coin angle recomputed from the
    // intermediate (post-S_x) state before the second coin.
    SpinorField2D r = shift2d(coin2d(psi, p), Axis::x, p.boundary);
    return shift2d(coin2d(r, p), Axis::y, p.boundary);
}

SpinorField2D pad_field2d(const SpinorField2D& psi, int margin) {
    if (margin < 0) throw std::invalid_argument("pad_field2d: negative margin");
    GridSpec gx = psi.grid_x(), gy = psi.grid_y();
    gx.j_min -= margin;
    gx.j_max += margin;
    gy.j_min -= margin;
    gy.j_max += margin;
    SpinorField2D out(gx, gy);
    for (int jy = psi.grid_y().j_min; jy <= psi.grid_y().j_max; ++jy)
        for (int jx = psi.grid_x().j_min; jx <= psi.grid_x().j_max; ++jx)
            out.at(jx, jy) = psi.at(jx, jy);
    return out;
}

Snapshot2DStats measure2d(const SpinorField2D& psi, long t) {
    Snapshot2DStats s;
    s.t = t;
    const int xlo = psi.grid_x().j_min, xhi = psi.grid_x().j_max;
    const int ylo = psi.grid_y().j_min, yhi = psi.grid_y().j_max;
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    const double eps = psi.epsilon();
    for (int jy = ylo; jy <= yhi; ++jy) {
        for (int jx = xlo; jx <= xhi; ++jx) {
            const double P = psi.at(jx, jy).probability();
            s.norm += P;
            s.peak_probability = std::max(s.peak_probability, P);
            const double x = eps * jx, y = eps * jy;
            sx += x * P;
            sy += y * P;
            sxx += x * x * P;
            syy += y * y * P;
        }
    }
    if (s.norm <= 0.0) throw std::domain_error("measure2d: zero-norm state");
    const double mx = sx / s.norm, my = sy / s.norm;
    s.variance = (sxx / s.norm - mx * mx) + (syy / s.norm - my * my);
    return s;
}

Evolve2DResult evolve2d(const SpinorField2D& psi0, const WalkParams& p, long T,
                        long record_every) {
    if (T < 0) throw std::invalid_argument("evolve2d: negative step count");
    if (record_every < 1)
        throw std::invalid_argument("evolve2d: record_every must be >= 1");
    SpinorField2D psi = (p.boundary == Boundary::open_auto_pad)
                            ? pad_field2d(psi0, static_cast<int>(T) + 8)
                            : psi0;
    Evolve2DResult res{{}, psi};
    res.records.push_back(measure2d(psi, 0));
    for (long t = 0; t < T; ++t) {
        psi = step2d(psi, p);
        const long now = t + 1;
        if (now % record_every == 0 || now == T)
            res.records.push_back(measure2d(psi, now));
    }
    res.final_state = psi;
    return res;
}

DispersionDiagnostics dispersion_diagnostics(
    const std::vector<Snapshot2DStats>& records, long t_fit_min,
    long t_fit_max) {
    if (records.size() < 2)
        throw std::invalid_argument(
            "dispersion_diagnostics: need at least two records");
    DispersionDiagnostics d;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& r : records) {
        d.t.push_back(r.t);
        d.variance.push_back(r.variance);
        d.peak_probability.push_back(r.peak_probability);
        if (r.t >= t_fit_min && r.t <= t_fit_max && r.t > 0 && r.variance > 0) {
            const double lx = std::log(static_cast<double>(r.t));
            const double ly = std::log(r.variance);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
    }
    if (n >= 2) {
        const double nn = static_cast<double>(n);
        d.loglog_slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    }
    return d;
}

}  // namespace nlqw
