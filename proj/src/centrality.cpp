#include "decaycent/centrality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace decaycent {

namespace {

void require_open_unit(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("decay parameter must lie in (0,1), got " + std::to_string(delta));
    }
}

// Horner evaluation of c[0] + c[1] x + ... + c[m-1] x^(m-1).
template <typename T>
double horner(std::span<const T> c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k > 0; --k) {
        acc = acc * x + static_cast<double>(c[k - 1]);
    }
    return acc;
}

}  // namespace

std::vector<WideInt> higher_order_farness(const DistanceProfile& profile) {
    const std::size_t len = profile.counts.size();
    const std::size_t ecc = profile.eccentricity();
    std::vector<WideInt> f(len, 0);
    // row[k] = C(l, k) for the current l
    std::vector<WideInt> row(ecc + 1, 0);
    row[0] = 1;
    for (std::size_t l = 1; l <= ecc; ++l) {
        for (std::size_t k = l; k >= 1; --k) {
            row[k] = checked_add(row[k], row[k - 1]);
        }
        const WideInt d = profile.counts[l - 1];
        if (d == 0) {
            continue;
        }
        for (std::size_t k = 1; k <= l; ++k) {
            f[k - 1] = checked_add(f[k - 1], checked_mul(row[k], d));
        }
    }
    for (std::size_t k = 2; k <= ecc; k += 2) {
        f[k - 1] = -f[k - 1];
    }
    return f;
}

std::vector<double> higher_order_closeness(std::span<const WideInt> fvec) {
    std::vector<double> c(fvec.size(), 0.0);
    for (std::size_t k = 0; k < fvec.size(); ++k) {
        if (fvec[k] != 0) {
            c[k] = 1.0 / static_cast<double>(fvec[k]);
        }
    }
    return c;
}

CentralityTable centrality_table(const Graph& g) {
    if (g.node_count() < 2) {
        throw GraphError("centrality table needs at least two nodes");
    }
    CentralityTable table;
    table.n = g.node_count();
    auto profiles = all_profiles(g);
    table.nodes.reserve(profiles.size());
    for (auto& p : profiles) {
        NodeCentrality nc;
        nc.node = p.node;
        nc.degree = p.degree();
        nc.farness = p.farness();
        nc.closeness = Closeness{nc.farness};
        nc.fvec = higher_order_farness(p);
        nc.cvec = higher_order_closeness(nc.fvec);
        nc.profile = std::move(p);
        table.nodes.push_back(std::move(nc));
    }
    return table;
}

double decay_centrality(const DistanceProfile& profile, double delta) {
    require_open_unit(delta);
    const std::span<const std::int64_t> c(profile.counts.data(), profile.eccentricity());
    return delta * horner(c, delta);
}

std::vector<double> decay_curve(const DistanceProfile& profile, const DeltaGrid& grid) {
    const std::span<const std::int64_t> c(profile.counts.data(), profile.eccentricity());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double d : grid.values()) {
        out.push_back(d * horner(c, d));
    }
    return out;
}

DifferenceCoefficients dc_difference_coeffs(const DistanceProfile& pi, const DistanceProfile& pj) {
    if (pi.counts.size() != pj.counts.size()) {
        throw std::invalid_argument("distance profiles have different lengths");
    }
    DifferenceCoefficients out;
    out.a.resize(pi.counts.size());
    for (std::size_t l = 0; l < pi.counts.size(); ++l) {
        out.a[l] = pi.counts[l] - pj.counts[l];
    }
    const auto fi = higher_order_farness(pi);
    const auto fj = higher_order_farness(pj);
    out.b.resize(fi.size());
    for (std::size_t k = 0; k < fi.size(); ++k) {
        out.b[k] = checked_sub(fi[k], fj[k]);
    }
    return out;
}

double dc_difference_factored(std::span<const std::int64_t> a, double delta) {
    require_open_unit(delta);
    std::vector<std::int64_t> prefix;
    prefix.reserve(a.size());
    std::int64_t running = 0;
    for (auto v : a) {
        running += v;
        prefix.push_back(running);
    }
    if (running != 0) {
        throw std::invalid_argument("difference coefficients must sum to zero");
    }
    if (prefix.size() < 2) {
        return 0.0;
    }
    prefix.pop_back();
    return delta * (1.0 - delta) * horner(std::span<const std::int64_t>(prefix), delta);
}

double dc_difference_factored_eps(std::span<const WideInt> b, double delta) {
    require_open_unit(delta);
    std::vector<WideInt> prefix;
    prefix.reserve(b.size());
    WideInt running = 0;
    for (auto v : b) {
        running = checked_add(running, v);
        prefix.push_back(running);
    }
    if (running != 0) {
        throw std::invalid_argument("farness difference coefficients must sum to zero");
    }
    if (prefix.size() < 2) {
        return 0.0;
    }
    prefix.pop_back();
    const double eps = 1.0 - delta;
    return -eps * (1.0 - eps) * horner(std::span<const WideInt>(prefix), eps);
}

int decay_difference_sign(std::span<const std::int64_t> a, double delta) {
    require_open_unit(delta);
    std::size_t top = a.size();
    while (top > 0 && a[top - 1] == 0) {
        --top;
    }
    if (top == 0) {
        return 0;
    }
    // DC_i - DC_j = delta * sum_l a_l delta^(l-1); only the sum's sign matters.
    const auto coeffs = a.first(top);
    double value = 0.0;
    double magnitude = 0.0;
    for (std::size_t k = top; k > 0; --k) {
        value = value * delta + static_cast<double>(coeffs[k - 1]);
        magnitude = magnitude * delta + std::abs(static_cast<double>(coeffs[k - 1]));
    }
    // Horner error is at most gamma_{2m} * sum |a_l| delta^(l-1); doubled for margin.
    const double unit = std::numeric_limits<double>::epsilon() / 2.0;
    const double bound = 2.0 * (2.0 * static_cast<double>(top) + 2.0) * unit * magnitude;
    if (std::abs(value) > bound) {
        return value > 0.0 ? 1 : -1;
    }

    // Exact evaluation: delta = m * 2^-s with m odd.
    using boost::multiprecision::cpp_int;
    int exponent = 0;
    const double frac = std::frexp(delta, &exponent);
    auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
    int shift = 53 - exponent;
    while ((mantissa & 1) == 0) {
        mantissa >>= 1;
        --shift;
    }
    // acc_l = acc_{l+1} * m + a_l * 2^(s(L-l)); sign(acc_1) = sign(sum a_l delta^(l-1)).
    cpp_int acc = coeffs[top - 1];
    for (std::size_t l = top - 1; l >= 1; --l) {
        cpp_int term = coeffs[l - 1];
        term <<= static_cast<unsigned>(shift) * static_cast<unsigned>(top - l);
        acc = acc * mantissa + term;
    }
    return acc.sign();
}

int compare_decay(const DistanceProfile& pi, const DistanceProfile& pj, double delta) {
    if (pi.counts.size() != pj.counts.size()) {
        throw std::invalid_argument("distance profiles have different lengths");
    }
    if (pi.counts == pj.counts) {
        require_open_unit(delta);
        return 0;
    }
    std::vector<std::int64_t> a(pi.counts.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        a[l] = pi.counts[l] - pj.counts[l];
    }
    return decay_difference_sign(a, delta);
}

}  // namespace decaycent
