#pragma once

#include <optional>
#include <vector>

#include "nlqw/field.hpp"

namespace nlqw {

// Per-site probability P_j = |u_j|^2 + |d_j|^2, ordered j_min..j_max.
std::vector<double> probability_density(const SpinorField1D& psi);

// Per-site phase difference delta_j = arg(u_j) - arg(d_j), folded into
// (-pi, pi]. Sites where either component magnitude is <= mask_tol are
// masked (nullopt) since the phase is numerically meaningless there.
std::vector<std::optional<double>> phase_difference(const SpinorField1D& psi,
                                                    double mask_tol = 1e-12);

// Fold an angle into (-pi, pi].
double fold_angle(double a);

struct Moments {
    double norm = 0.0;            // total probability
    double center_of_mass = 0.0;  // sum x_j P_j / norm
    double width = 0.0;           // sqrt(<x^2> - <x>^2)
    double ipr = 0.0;             // sum P_j^2 / norm^2
};

// Throws std::domain_error when the state has zero norm.
Moments moments(const SpinorField1D& psi);

struct ObservableRecord {
    long t = 0;
    Moments m;
    double peak_probability = 0.0;
    int peak_site = 0;
};

struct ObservableSeries {
    std::vector<ObservableRecord> records;
};

ObservableRecord measure(const SpinorField1D& psi, long t);

}  // namespace nlqw
