#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lpr {

/// Dense row-major 2-D array.
template <typename T>
class Array2D {
public:
    Array2D() = default;
    Array2D(std::size_t rows, std::size_t cols, T init = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    T* row(std::size_t r) { return data_.data() + r * cols_; }
    const T* row(std::size_t r) const { return data_.data() + r * cols_; }

    std::vector<T>& storage() { return data_; }
    const std::vector<T>& storage() const { return data_; }

    void fill(T v) { data_.assign(data_.size(), v); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

enum class GridKind { cartesian, polar, logpolar_fine, logpolar_sector };

struct AxisSpec {
    std::size_t count = 0;
    double origin = 0.0;   ///< coordinate of sample index 0
    double spacing = 0.0;
};

/// Lattice descriptor: sample i on an axis sits at origin + i * spacing.
struct GridSpec {
    GridKind kind = GridKind::cartesian;
    AxisSpec axis0;   ///< row axis
    AxisSpec axis1;   ///< column axis

    std::size_t rows() const { return axis0.count; }
    std::size_t cols() const { return axis1.count; }
    double coord0(std::size_t i) const { return axis0.origin + double(i) * axis0.spacing; }
    double coord1(std::size_t j) const { return axis1.origin + double(j) * axis1.spacing; }
};

/// N x N raster on the Cartesian grid X. Rows index x2 (vertical), columns x1.
struct Image {
    Array2D<double> pixels;
    GridSpec grid;
};

/// N_theta x N_s raster on the polar grid. Rows index theta, columns s.
struct Sinogram {
    Array2D<double> values;
    GridSpec grid;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace lpr
