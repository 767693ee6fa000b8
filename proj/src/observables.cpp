#include "nlqw/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlqw {

std::vector<double> probability_density(const SpinorField1D& psi) {
    std::vector<double> out;
    out.reserve(psi.size());
    for (const auto& s : psi.sites()) out.push_back(s.probability());
    return out;
}

double fold_angle(double a) {
    constexpr double pi = std::numbers::pi;
    double r = std::remainder(a, 2.0 * pi);  // lands in [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

std::vector<std::optional<double>> phase_difference(const SpinorField1D& psi,
                                                    double mask_tol) {
    std::vector<std::optional<double>> out;
    out.reserve(psi.size());
    for (const auto& s : psi.sites()) {
        if (std::abs(s.u) <= mask_tol || std::abs(s.d) <= mask_tol) {
            out.emplace_back(std::nullopt);
        } else {
            out.emplace_back(fold_angle(std::arg(s.u) - std::arg(s.d)));
        }
    }
    return out;
}

Moments moments(const SpinorField1D& psi) {
    Moments m;
    double sx = 0.0, sxx = 0.0, sp2 = 0.0;
    for (int j = psi.j_min(); j <= psi.j_max(); ++j) {
        const double P = psi.at(j).probability();
        const double x = psi.x_phys(j);
        m.norm += P;
        sx += x * P;
        sxx += x * x * P;
        sp2 += P * P;
    }
    if (m.norm <= 0.0) throw std::domain_error("moments: zero-norm state");
    m.center_of_mass = sx / m.norm;
    const double var = sxx / m.norm - m.center_of_mass * m.center_of_mass;
    m.width = std::sqrt(std::max(var, 0.0));
    m.ipr = sp2 / (m.norm * m.norm);
    return m;
}

ObservableRecord measure(const SpinorField1D& psi, long t) {
    ObservableRecord r;
    r.t = t;
    r.m = moments(psi);
    r.peak_probability = 0.0;
    r.peak_site = psi.j_min();
    for (int j = psi.j_min(); j <= psi.j_max(); ++j) {
        const double P = psi.at(j).probability();
        if (P > r.peak_probability) {
            r.peak_probability = P;
            r.peak_site = j;
        }
    }
    return r;
}

}  // namespace nlqw
