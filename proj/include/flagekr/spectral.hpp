#pragma once

#include <flagekr/dense_graph.hpp>
#include <flagekr/integer.hpp>

#include <optional>
#include <vector>

namespace flagekr {

struct Spectrum {
    /// Ascending.
    std::vector<double> values;
    double spectral_radius = 0;
    /// max |A x - lambda x| over the extreme eigenpairs.
    double residual = 0;

    auto smallest() const -> double { return values.front(); }
    auto largest() const -> double { return values.back(); }
};

/// Full adjacency spectrum via a dense symmetric eigensolver. Throws
/// NumericalError when the solver fails or the residual exceeds
/// `tolerance` times the spectral radius.
auto adjacency_spectrum(const DenseGraph & g, double tolerance = 1e-9) -> Spectrum;

struct InertiaCounts {
    std::size_t positive = 0;
    std::size_t zero = 0;
    std::size_t negative = 0;
};

/// Eigenvalues within zero_tolerance * spectral_radius of 0 count as zero.
auto inertia(const Spectrum & s, double zero_tolerance = 1e-7) -> InertiaCounts;

/// floor(x) for a floating value with a safety margin: when x lies within
/// `margin` of an integer m, `value` is m (the side that keeps an upper
/// bound valid) and `other` is m-1.
struct GuardedFloor {
    BigInt value;
    std::optional<BigInt> other;
};

auto guarded_floor(double x, double margin = 1e-6) -> GuardedFloor;

}
