#include "nlqw/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nlqw {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << std::setprecision(17);
    return f;
}

}  // namespace

void write_profile_csv(const std::string& path, const SpinorField1D& psi,
                       double mask_tol) {
    auto f = open_out(path);
    f << "j,x_phys,P,delta_or_NA,re_u,im_u,re_d,im_d\n";
    const auto delta = phase_difference(psi, mask_tol);
    for (int j = psi.j_min(); j <= psi.j_max(); ++j) {
        const Spinor& s = psi.at(j);
        const auto& dl = delta[static_cast<std::size_t>(j - psi.j_min())];
        f << j << ',' << psi.x_phys(j) << ',' << s.probability() << ',';
        if (dl)
            f << *dl;
        else
            f << "NA";
        f << ',' << s.u.real() << ',' << s.u.imag() << ',' << s.d.real() << ','
          << s.d.imag() << '\n';
    }
}

ProfileData read_profile_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open profile: " + path);
    ProfileData out;
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("empty profile file: " + path);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        out.j.push_back(std::stoi(tok));
        std::getline(ss, tok, ',');
        out.x.push_back(std::stod(tok));
        std::getline(ss, tok, ',');
        out.P.push_back(std::stod(tok));
    }
    return out;
}

void write_heatmap_csv(const std::string& path, const std::vector<long>& times,
                       const std::vector<std::vector<double>>& rows) {
    if (times.size() != rows.size())
        throw std::invalid_argument("write_heatmap_csv: time/row mismatch");
    auto f = open_out(path);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        f << times[r];
        for (double v : rows[r]) f << ',' << v;
        f << '\n';
    }
}

void write_series_csv(const std::string& path, const ObservableSeries& series) {
    auto f = open_out(path);
    f << "t,norm,center_of_mass,width,ipr,peak_probability,peak_site\n";
    for (const auto& r : series.records) {
        f << r.t << ',' << r.m.norm << ',' << r.m.center_of_mass << ','
          << r.m.width << ',' << r.m.ipr << ',' << r.peak_probability << ','
          << r.peak_site << '\n';
    }
}

void write_stability_csv(const std::string& path, const StabilityMap& map) {
    auto f = open_out(path);
    f << "aI_over_theta0\\k2_over_theta0sq";
    for (double kv : map.kappa_values) f << ',' << kv;
    f << '\n';
    for (std::size_t i = 0; i < map.a_values.size(); ++i) {
        f << map.a_values[i];
        for (double v : map.max_growth[i]) f << ',' << v;
        f << '\n';
    }
}

void write_grid_csv(const std::string& path,
                    const std::vector<std::vector<double>>& rows) {
    auto f = open_out(path);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            f << (c ? "," : "") << row[c];
        f << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    auto f = open_out(path);
    f << content;
}

}  // namespace nlqw
