#include <flagekr/errors.hpp>
#include <flagekr/spectral.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

namespace flagekr {

auto adjacency_spectrum(const DenseGraph & g, double tolerance) -> Spectrum
{
    const auto size = static_cast<Eigen::Index>(g.size());
    Spectrum result;
    if (size == 0)
        return result;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t u = 0; u < g.size(); ++u)
        for (int v : g.neighbours(u))
            a(static_cast<Eigen::Index>(u), v) = 1.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver did not converge");
    const auto & values = solver.eigenvalues();
    result.values.assign(values.data(), values.data() + size);
    result.spectral_radius = std::max(std::abs(result.values.front()), std::abs(result.values.back()));

    for (Eigen::Index k : {Eigen::Index{0}, size - 1}) {
        Eigen::VectorXd x = solver.eigenvectors().col(k);
        double r = (a * x - values(k) * x).norm();
        result.residual = std::max(result.residual, r);
    }
    if (result.residual > tolerance * std::max(1.0, result.spectral_radius))
        throw NumericalError("eigenpair residual " + std::to_string(result.residual) + " above tolerance");
    return result;
}

auto inertia(const Spectrum & s, double zero_tolerance) -> InertiaCounts
{
    InertiaCounts counts;
    const double eps = zero_tolerance * s.spectral_radius;
    for (double x : s.values) {
        if (x > eps)
            ++counts.positive;
        else if (x < -eps)
            ++counts.negative;
        else
            ++counts.zero;
    }
    return counts;
}

auto guarded_floor(double x, double margin) -> GuardedFloor
{
    double nearest = std::round(x);
    if (std::abs(x - nearest) < margin) {
        auto m = static_cast<long long>(nearest);
        return {BigInt(m), BigInt(m - 1)};
    }
    return {BigInt(static_cast<long long>(std::floor(x))), std::nullopt};
}

}
