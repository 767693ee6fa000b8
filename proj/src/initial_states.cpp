#include "nlqw/initial_states.hpp"

#include <cmath>
#include <stdexcept>

namespace nlqw {

namespace {

// sech without overflow for large arguments.
double sech(double x) {
    const double ax = std::abs(x);
    return ax > 350.0 ? 0.0 : 1.0 / std::cosh(ax);
}

}  // namespace

SpinorField1D bright_soliton(double beta, const GridSpec& grid, int center_j) {
    return moving_soliton(beta, 0.0, grid, center_j);
}

SpinorField1D moving_soliton(double beta, double nu, const GridSpec& grid,
                             int center_j) {
    if (!(beta > 0.0))
        throw std::invalid_argument("moving_soliton: beta must be positive");
    SpinorField1D psi(grid);
    double total = 0.0;
    for (int j = grid.j_min; j <= grid.j_max; ++j) {
        const double arg = beta * grid.epsilon * (j - center_j);
        const double env = sech(arg);
        psi.at(j).u = env;
        psi.at(j).d = cplx(0.0, 1.0) * std::polar(1.0, nu * std::tanh(arg)) * env;
        total += psi.at(j).probability();
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& s : psi.sites()) {
        s.u *= scale;
        s.d *= scale;
    }
    return psi;
}

SpinorField1D dark_soliton(double beta, const GridSpec& grid, int center_j,
                           double intensity) {
    if (!(beta > 0.0))
        throw std::invalid_argument("dark_soliton: beta must be positive");
    const double I = intensity < 0.0 ? beta : intensity;
    if (!(I > 0.0))
        throw std::invalid_argument("dark_soliton: intensity must be positive");
    SpinorField1D psi(grid);
    const double amp = std::sqrt(I);
    for (int j = grid.j_min; j <= grid.j_max; ++j) {
        const double th = std::tanh(beta * grid.epsilon * (j - center_j));
        psi.at(j).u = amp * th;
        psi.at(j).d = cplx(0.0, -1.0) * amp * th;
    }
    return psi;
}

SpinorField1D uniform_block(int j_lo, int j_hi, const Spinor& coin,
                            const GridSpec& grid, bool invert,
                            BlockScaling scaling, double intensity) {
    if (j_lo > j_hi || j_lo < grid.j_min || j_hi > grid.j_max)
        throw std::invalid_argument("uniform_block: bad support interval");
    const double cn = coin.probability();
    if (std::abs(cn - 1.0) > 1e-9)
        throw std::invalid_argument("uniform_block: coin state must have unit norm");
    if (invert && j_lo == grid.j_min && j_hi == grid.j_max)
        throw std::invalid_argument("uniform_block: inverted support is empty");

    SpinorField1D psi(grid);
    std::size_t n_occ = 0;
    for (int j = grid.j_min; j <= grid.j_max; ++j) {
        const bool inside = (j >= j_lo && j <= j_hi);
        if (inside != invert) {
            psi.at(j) = coin;
            ++n_occ;
        }
    }
    double scale;
    if (scaling == BlockScaling::unit_total) {
        scale = 1.0 / std::sqrt(static_cast<double>(n_occ));
    } else {
        if (!(intensity > 0.0))
            throw std::invalid_argument(
                "uniform_block: per-site intensity must be positive");
        scale = std::sqrt(2.0 * intensity);
    }
    for (auto& s : psi.sites()) {
        s.u *= scale;
        s.d *= scale;
    }
    return psi;
}

SpinorField1D superpose(const SpinorField1D& a, const SpinorField1D& b) {
    if (a.j_min() != b.j_min() || a.j_max() != b.j_max() ||
        a.epsilon() != b.epsilon())
        throw std::invalid_argument("superpose: grids differ");
    SpinorField1D out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.sites()[i].u = a.sites()[i].u + b.sites()[i].u;
        out.sites()[i].d = a.sites()[i].d + b.sites()[i].d;
    }
    return out;
}

}  // namespace nlqw
