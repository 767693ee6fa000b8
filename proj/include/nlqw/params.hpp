#pragma once

#include <stdexcept>
#include <string>

namespace nlqw {

enum class Boundary {
    open_auto_pad,  // lattice padded so the causal cone never meets the edge
    periodic,
};

Boundary boundary_from_string(const std::string& s);
std::string to_string(Boundary b);

// Parameters of one walk step. theta0/alpha are the lattice-scale coin
// parameters; phi is the electric phase per site, applied after the shift
// once t >= electric_start.
struct WalkParams {
    double theta0 = 0.0;
    double alpha = 0.0;
    double phi = 0.0;
    long electric_start = 0;
    Boundary boundary = Boundary::open_auto_pad;
};

}  // namespace nlqw
