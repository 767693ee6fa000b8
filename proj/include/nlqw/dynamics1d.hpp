#pragma once

#include <vector>

#include "nlqw/field.hpp"
#include "nlqw/observables.hpp"
#include "nlqw/params.hpp"

namespace nlqw {

// Intensity-dependent coin angle at one site:
//   theta = theta0 + alpha * |u||d| sin(arg u - arg d)
//         = theta0 + alpha * Im(u * conj(d)).
double nonlinear_angle(const Spinor& s, const WalkParams& p);

// Site-local rotation R(theta_j) with theta_j computed from the input state.
SpinorField1D apply_coin(const SpinorField1D& psi, const WalkParams& p);

// u moves to j+1, d moves to j-1. For the open boundary any nonzero
// amplitude that would leave the lattice is an error (the caller is expected
// to have padded the lattice); periodic wraps.
SpinorField1D apply_shift(const SpinorField1D& psi, Boundary boundary);

// Multiply each site by exp(i * phi * j), j the signed site index.
SpinorField1D apply_electric_phase(const SpinorField1D& psi, double phi);

// One full step at time t: shift(coin(psi)), then the electric phase when
// phi != 0 and t >= electric_start.
SpinorField1D step(const SpinorField1D& psi, const WalkParams& p, long t);

// Grow the lattice by `margin` zero sites on each side.
SpinorField1D pad_field(const SpinorField1D& psi, int margin);

struct EvolveOptions {
    long record_every = 1;
    bool record_heatmap = false;  // store probability profiles at record times
};

struct EvolveResult {
    ObservableSeries series;
    std::vector<long> heatmap_times;
    std::vector<std::vector<double>> heatmap;  // one profile per recorded time
    SpinorField1D final_state;
    int heatmap_j_min = 0;
};

// Run T steps from psi0, recording observables at t = 0, at every multiple of
// record_every, and at t = T. open_auto_pad pads by T + 8 sites up front.
EvolveResult evolve(const SpinorField1D& psi0, const WalkParams& p, long T,
                    const EvolveOptions& opt = {});

}  // namespace nlqw
