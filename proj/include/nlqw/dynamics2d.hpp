#pragma once

#include <vector>

#include "nlqw/field.hpp"
#include "nlqw/params.hpp"

namespace nlqw {

// One split-step: coin, shift along x (u -> x+1, d -> x-1), coin again with
// angles recomputed from the intermediate state, shift along y. Open
// boundaries require zero amplitude at the edges, as in 1D.
SpinorField2D step2d(const SpinorField2D& psi, const WalkParams& p);

SpinorField2D pad_field2d(const SpinorField2D& psi, int margin);

struct Snapshot2DStats {
    long t = 0;
    double norm = 0.0;
    double variance = 0.0;  // var_x + var_y about the center of mass
    double peak_probability = 0.0;
};

Snapshot2DStats measure2d(const SpinorField2D& psi, long t);

struct Evolve2DResult {
    std::vector<Snapshot2DStats> records;
    SpinorField2D final_state;
};

// Run T steps, recording stats at t = 0, every record_every steps, and T.
// open_auto_pad pads by T + 8 in each direction up front.
Evolve2DResult evolve2d(const SpinorField2D& psi0, const WalkParams& p, long T,
                        long record_every = 1);

struct DispersionDiagnostics {
    std::vector<long> t;
    std::vector<double> variance;
    std::vector<double> peak_probability;
    double loglog_slope = 0.0;  // variance vs t, fitted over [t_fit_min, t_fit_max]
};

// Summarizes a recorded series; the log-log slope is fitted by least squares
// over records with t in [t_fit_min, t_fit_max].
DispersionDiagnostics dispersion_diagnostics(
    const std::vector<Snapshot2DStats>& records, long t_fit_min,
    long t_fit_max);

}  // namespace nlqw
