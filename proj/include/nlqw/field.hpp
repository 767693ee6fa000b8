#pragma once

// Spinor lattice containers for the 1D and 2D walks. Site indices are signed
// integers with j = 0 at the lattice center; the physical coordinate of site
// j is x = epsilon * j.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nlqw {

using cplx = std::complex<double>;

struct Spinor {
    cplx u{0.0, 0.0};
    cplx d{0.0, 0.0};

    double probability() const { return std::norm(u) + std::norm(d); }
};

struct GridSpec {
    int j_min = 0;
    int j_max = 0;
    double epsilon = 1.0;

    void validate() const {
        if (j_min > j_max)
            throw std::invalid_argument("GridSpec: j_min exceeds j_max");
        if (!(epsilon > 0.0))
            throw std::invalid_argument("GridSpec: epsilon must be positive");
    }
    std::size_t size() const { return static_cast<std::size_t>(j_max - j_min) + 1; }
};

class SpinorField1D {
public:
    explicit SpinorField1D(const GridSpec& grid) : grid_(grid) {
        grid_.validate();
        sites_.resize(grid_.size());
    }

    int j_min() const { return grid_.j_min; }
    int j_max() const { return grid_.j_max; }
    double epsilon() const { return grid_.epsilon; }
    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return sites_.size(); }

    double x_phys(int j) const { return grid_.epsilon * j; }

    Spinor& at(int j) { return sites_[index_of(j)]; }
    const Spinor& at(int j) const { return sites_[index_of(j)]; }

    std::vector<Spinor>& sites() { return sites_; }
    const std::vector<Spinor>& sites() const { return sites_; }

    double total_probability() const {
        double s = 0.0;
        for (const auto& sp : sites_) s += sp.probability();
        return s;
    }

private:
    std::size_t index_of(int j) const {
        if (j < grid_.j_min || j > grid_.j_max)
            throw std::out_of_range("SpinorField1D: site index out of range");
        return static_cast<std::size_t>(j - grid_.j_min);
    }

    GridSpec grid_;
    std::vector<Spinor> sites_;
};

// Square-product grid: independent signed index ranges along x and y.
class SpinorField2D {
public:
    SpinorField2D(const GridSpec& gx, const GridSpec& gy) : gx_(gx), gy_(gy) {
        gx_.validate();
        gy_.validate();
        if (gx_.epsilon != gy_.epsilon)
            throw std::invalid_argument("SpinorField2D: mismatched epsilon");
        sites_.resize(gx_.size() * gy_.size());
    }

    const GridSpec& grid_x() const { return gx_; }
    const GridSpec& grid_y() const { return gy_; }
    double epsilon() const { return gx_.epsilon; }
    std::size_t nx() const { return gx_.size(); }
    std::size_t ny() const { return gy_.size(); }

    Spinor& at(int jx, int jy) { return sites_[index_of(jx, jy)]; }
    const Spinor& at(int jx, int jy) const { return sites_[index_of(jx, jy)]; }

    std::vector<Spinor>& sites() { return sites_; }
    const std::vector<Spinor>& sites() const { return sites_; }

    double total_probability() const {
        double s = 0.0;
        for (const auto& sp : sites_) s += sp.probability();
        return s;
    }

private:
    std::size_t index_of(int jx, int jy) const {
        if (jx < gx_.j_min || jx > gx_.j_max || jy < gy_.j_min || jy > gy_.j_max)
            throw std::out_of_range("SpinorField2D: site index out of range");
        return static_cast<std::size_t>(jy - gy_.j_min) * gx_.size() +
               static_cast<std::size_t>(jx - gx_.j_min);
    }

    GridSpec gx_, gy_;
    std::vector<Spinor> sites_;
};

}  // namespace nlqw
