#include "nlqw/dynamics1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlqw {

Boundary boundary_from_string(const std::string& s) {
    if (s == "open_auto_pad") return Boundary::open_auto_pad;
    if (s == "periodic") return Boundary::periodic;
    throw std::invalid_argument("unknown boundary: " + s);
}

std::string to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "open_auto_pad";
}

double nonlinear_angle(const Spinor& s, const WalkParams& p) {
    // alpha * Im(u conj(d)) == alpha * |u||d| sin(arg u - arg d), without the
    // arg-extraction singularity at zero amplitude.
    return p.theta0 + p.alpha * std::imag(s.u * std::conj(s.d));
}

SpinorField1D apply_coin(const SpinorField1D& psi, const WalkParams& p) {
    SpinorField1D out(psi.grid());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const Spinor& s = psi.sites()[i];
        const double th = nonlinear_angle(s, p);
        const double c = std::cos(th), sn = std::sin(th);
        out.sites()[i].u = c * s.u - sn * s.d;
        out.sites()[i].d = sn * s.u + c * s.d;
    }
    return out;
}

SpinorField1D apply_shift(const SpinorField1D& psi, Boundary boundary) {
    SpinorField1D out(psi.grid());
    const int lo = psi.j_min(), hi = psi.j_max();
    if (boundary == Boundary::periodic) {
        for (int j = lo; j <= hi; ++j) {
            out.at(j == hi ? lo : j + 1).u = psi.at(j).u;
            out.at(j == lo ? hi : j - 1).d = psi.at(j).d;
        }
        return out;
    }
    if (psi.at(hi).u != cplx{} || psi.at(lo).d != cplx{})
        throw std::runtime_error("apply_shift: wavefront reached the open boundary");
    for (int j = lo; j < hi; ++j) out.at(j + 1).u = psi.at(j).u;
    for (int j = lo + 1; j <= hi; ++j) out.at(j - 1).d = psi.at(j).d;
    return out;
}

SpinorField1D apply_electric_phase(const SpinorField1D& psi, double phi) {
    SpinorField1D out(psi.grid());
    for (int j = psi.j_min(); j <= psi.j_max(); ++j) {
        const cplx ph = std::polar(1.0, phi * j);
        out.at(j).u = ph * psi.at(j).u;
        out.at(j).d = ph * psi.at(j).d;
    }
    return out;
}

SpinorField1D step(const SpinorField1D& psi, const WalkParams& p, long t) {
    SpinorField1D out = apply_shift(apply_coin(psi, p), p.boundary);
    if (p.phi != 0.0 && t >= p.electric_start)
        out = apply_electric_phase(out, p.phi);
    return out;
}

SpinorField1D pad_field(const SpinorField1D& psi, int margin) {
    if (margin < 0) throw std::invalid_argument("pad_field: negative margin");
    GridSpec g = psi.grid();
    g.j_min -= margin;
    g.j_max += margin;
    SpinorField1D out(g);
    for (int j = psi.j_min(); j <= psi.j_max(); ++j) out.at(j) = psi.at(j);
    return out;
}

EvolveResult evolve(const SpinorField1D& psi0, const WalkParams& p, long T,
                    const EvolveOptions& opt) {
    if (T < 0) throw std::invalid_argument("evolve: negative step count");
    if (opt.record_every < 1)
        throw std::invalid_argument("evolve: record_every must be >= 1");

    SpinorField1D psi = (p.boundary == Boundary::open_auto_pad)
                            ? pad_field(psi0, static_cast<int>(T) + 8)
                            : psi0;

    EvolveResult res{{}, {}, {}, psi, psi.j_min()};
    auto record = [&](long t) {
        res.series.records.push_back(measure(psi, t));
        if (opt.record_heatmap) {
            res.heatmap_times.push_back(t);
            res.heatmap.push_back(probability_density(psi));
        }
    };
    record(0);
    for (long t = 0; t < T; ++t) {
        psi = step(psi, p, t);
        const long now = t + 1;
        if (now % opt.record_every == 0 || now == T) record(now);
    }
    res.final_state = psi;
    return res;
}

}  // namespace nlqw
