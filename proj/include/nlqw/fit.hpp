#pragma once

#include <vector>

namespace nlqw {

struct SolitonFit {
    double amplitude = 0.0;
    double beta = 0.0;
    double center = 0.0;
    double rms_residual = 0.0;
};

// Levenberg-Marquardt fit of A*sech^2(beta*(x - x0)) to a probability
// profile. Throws std::runtime_error("no localized structure") when the
// profile has no peak above 10x its median.
SolitonFit fit_sech2(const std::vector<double>& x,
                     const std::vector<double>& P);

}  // namespace nlqw
