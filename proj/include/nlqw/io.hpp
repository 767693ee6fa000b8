#pragma once

#include <string>
#include <vector>

#include "nlqw/continuum.hpp"
#include "nlqw/field.hpp"
#include "nlqw/observables.hpp"

namespace nlqw {

// Columns: j, x_phys, P, delta_or_NA, re_u, im_u, re_d, im_d. Masked phase
// differences are written as the literal NA.
void write_profile_csv(const std::string& path, const SpinorField1D& psi,
                       double mask_tol = 1e-12);

struct ProfileData {
    std::vector<int> j;
    std::vector<double> x;
    std::vector<double> P;
};

ProfileData read_profile_csv(const std::string& path);

// Rows = recorded times, columns = sites.
void write_heatmap_csv(const std::string& path,
                       const std::vector<long>& times,
                       const std::vector<std::vector<double>>& rows);

void write_series_csv(const std::string& path, const ObservableSeries& series);

// Matrix with axis headers: first row the kappa axis, first column the a
// axis, values max Re(lambda) * theta0_t.
void write_stability_csv(const std::string& path, const StabilityMap& map);

void write_grid_csv(const std::string& path,
                    const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nlqw
