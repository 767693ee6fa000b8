#pragma once

#include "nlqw/field.hpp"

namespace nlqw {

// u_j = N sech(beta*eps*(j-c)), d_j = i*u_j, N fixed by the discrete
// normalization sum P_j = 1 on the actual grid. delta = -pi/2 everywhere.
SpinorField1D bright_soliton(double beta, const GridSpec& grid, int center_j = 0);

// Same profile with a velocity phase ramp on d:
//   d_j = i * exp(i * nu * tanh(beta*eps*(j-c))) * N sech(beta*eps*(j-c)).
SpinorField1D moving_soliton(double beta, double nu, const GridSpec& grid,
                             int center_j = 0);

// (u_j, d_j) = sqrt(I) * tanh(beta*eps*(j-c)) * (1, -i). Not normalized:
// the flanks approach intensity I per component (P -> 2I). delta = +pi/2
// wherever defined. intensity < 0 selects the default I = beta.
SpinorField1D dark_soliton(double beta, const GridSpec& grid, int center_j = 0,
                           double intensity = -1.0);

enum class BlockScaling {
    unit_total,          // scale so sum P_j = 1
    per_site_intensity,  // site spinor = sqrt(2*I) * coin, so |u|^2 = I for
                         // a balanced coin
};

// Constant spinor `coin` on [j_lo, j_hi] (or on its complement when invert),
// zero elsewhere. `coin` must have unit norm.
SpinorField1D uniform_block(int j_lo, int j_hi, const Spinor& coin,
                            const GridSpec& grid, bool invert = false,
                            BlockScaling scaling = BlockScaling::unit_total,
                            double intensity = 0.0);

// Site-wise sum of two states on the same grid.
SpinorField1D superpose(const SpinorField1D& a, const SpinorField1D& b);

}  // namespace nlqw
