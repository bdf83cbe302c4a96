#pragma once

// Degree, farness, closeness, decay centrality, and the higher-order
// farness/closeness vectors.
//
// Everything integer-valued (degrees, farness, higher-order farness, profile
// differences) is exact; decay centrality is evaluated in double precision.

#include <cstdint>
#include <span>
#include <vector>

#include "decaycent/delta_grid.hpp"
#include "decaycent/graph.hpp"
#include "decaycent/wide_int.hpp"

namespace decaycent {

/// Closeness kept as the exact rational 1/farness.
struct Closeness {
    std::int64_t farness = 0;

    double value() const { return farness == 0 ? 0.0 : 1.0 / static_cast<double>(farness); }

    /// Exact comparison: larger closeness means smaller farness.
    friend auto operator<=>(const Closeness& a, const Closeness& b) { return b.farness <=> a.farness; }
    friend bool operator==(const Closeness&, const Closeness&) = default;
};

struct NodeCentrality {
    NodeId node = 0;
    std::int64_t degree = 0;
    DistanceProfile profile;
    std::int64_t farness = 0;
    Closeness closeness;
    /// fvec[k-1] = (-1)^(k-1) * sum_{l>=k} C(l,k) D^l
    std::vector<WideInt> fvec;
    /// cvec[k-1] = 1/fvec[k-1], or 0 when fvec[k-1] == 0
    std::vector<double> cvec;
};

struct CentralityTable {
    std::size_t n = 0;
    std::vector<NodeCentrality> nodes;
};

/// Requires a connected graph with n >= 2.
CentralityTable centrality_table(const Graph& g);

/// Higher-order farness vector of length n-1. Exact; throws
/// std::overflow_error if an entry does not fit in 128 bits.
std::vector<WideInt> higher_order_farness(const DistanceProfile& profile);

/// Reciprocals of a farness vector, with the zero-maps-to-zero convention.
std::vector<double> higher_order_closeness(std::span<const WideInt> fvec);

/// sum_l delta^l D^l via Horner's scheme from the highest nonzero power.
/// Throws std::invalid_argument unless 0 < delta < 1.
double decay_centrality(const DistanceProfile& profile, double delta);

/// decay_centrality at every grid point.
std::vector<double> decay_curve(const DistanceProfile& profile, const DeltaGrid& grid);

/// Coefficients of DC_i - DC_j as a polynomial in delta (a) and in
/// eps = 1 - delta (b). Both sum to zero exactly.
struct DifferenceCoefficients {
    std::vector<std::int64_t> a;  // a[l-1] = D_i^l - D_j^l
    std::vector<WideInt> b;       // b[k-1] = F_i^k - F_j^k
};

/// Throws std::invalid_argument when the profiles have different lengths.
DifferenceCoefficients dc_difference_coeffs(const DistanceProfile& pi, const DistanceProfile& pj);

/// delta(1-delta) * [S_1 + S_2 delta + ... + S_{n-2} delta^{n-3}], S_k the
/// prefix sums of `a`. Throws std::invalid_argument if `a` does not sum to 0.
double dc_difference_factored(std::span<const std::int64_t> a, double delta);

/// -eps(1-eps) * [T_1 + T_2 eps + ... + T_{n-2} eps^{n-3}], eps = 1 - delta,
/// T_k the prefix sums of `b`. Throws std::invalid_argument if `b` does not
/// sum to 0.
double dc_difference_factored_eps(std::span<const WideInt> b, double delta);

/// Exact sign of DC_i(delta) - DC_j(delta) at the double value `delta`:
/// +1, 0 or -1. Identical profiles short-circuit to 0; otherwise a Horner
/// evaluation with a rigorous error bound decides, falling back to
/// arbitrary-precision arithmetic when the bound is inconclusive.
int compare_decay(const DistanceProfile& pi, const DistanceProfile& pj, double delta);

/// Same, from the difference coefficients a = D_i - D_j.
int decay_difference_sign(std::span<const std::int64_t> a, double delta);

}  // namespace decaycent
