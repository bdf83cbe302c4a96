#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace decaycent {

/// Strictly increasing decay parameters, all strictly inside (0, 1).
class DeltaGrid {
public:
    /// Throws std::invalid_argument if empty, non-monotone, or out of range.
    explicit DeltaGrid(std::vector<double> values);

    /// `points` equally spaced values k/(points+1), k = 1..points. The default
    /// 99 points give 0.01, 0.02, ..., 0.99.
    static DeltaGrid uniform(std::size_t points = 99);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }

private:
    std::vector<double> values_;
};

}  // namespace decaycent
