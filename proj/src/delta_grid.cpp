#include "decaycent/delta_grid.hpp"

#include <string>

namespace decaycent {

DeltaGrid::DeltaGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("delta grid is empty");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double d = values_[k];
        if (!(d > 0.0 && d < 1.0)) {
            throw std::invalid_argument("delta grid value " + std::to_string(d) + " outside (0,1)");
        }
        if (k > 0 && !(values_[k - 1] < d)) {
            throw std::invalid_argument("delta grid must be strictly increasing");
        }
    }
}

DeltaGrid DeltaGrid::uniform(std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("delta grid needs at least one point");
    }
    std::vector<double> v(points);
    const double denom = static_cast<double>(points + 1);
    for (std::size_t k = 1; k <= points; ++k) {
        v[k - 1] = static_cast<double>(k) / denom;
    }
    return DeltaGrid(std::move(v));
}

}  // namespace decaycent
