#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace siri {

enum class KernelFamily { TruncatedExponential, Uniform, PointMass };

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

/// Incubation-period distribution g on [0, h], discretized on the uniform
/// node grid the integrator steps on, with composite-trapezoid weights.
///
/// The stored density is renormalized so that the kernel's own quadrature
/// integrates it to 1; the raw quadrature integral of the density as
/// supplied is kept in normalization_factor() so a caller can rescale the
/// transmission coefficient when it hands in an unnormalized density.
/// Immutable after construction.
class DelayKernel {
public:
    /// Discretize an arbitrary non-negative density on [0, h] over n_nodes
    /// uniformly spaced nodes (n_nodes >= 2, h > 0).
    static DelayKernel from_density(std::function<double(double)> density,
                                    double h, std::size_t n_nodes);

    /// Degenerate h = 0 kernel: a unit point mass at tau = 0. Turns the
    /// delayed model into the corresponding un-delayed ODE.
    static DelayKernel point_mass();

    double h() const { return h_; }
    std::size_t size() const { return nodes_.size(); }
    std::span<const double> nodes() const { return nodes_; }
    /// Composite-trapezoid weights (all positive).
    std::span<const double> weights() const { return weights_; }
    /// weights[j] * density(nodes[j]) after renormalization; sums to 1.
    std::span<const double> weight_density() const { return weight_density_; }
    /// Renormalized density at an arbitrary tau in [0, h].
    double density(double tau) const;
    /// Raw quadrature integral of the density as supplied.
    double normalization_factor() const { return normalization_factor_; }
    double node_spacing() const { return spacing_; }
    bool is_point_mass() const { return nodes_.size() == 1; }

    /// Quadrature of evaluand against the kernel:
    /// sum_j weights[j] * density(nodes[j]) * evaluand(nodes[j]).
    double convolve(const std::function<double(double)>& evaluand) const;

private:
    DelayKernel() = default;

    double h_ = 0.0;
    double spacing_ = 0.0;
    double normalization_factor_ = 1.0;
    std::function<double(double)> density_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> weight_density_;
};

/// Build one of the named kernel families. PointMass requires h = 0; the
/// continuous families require h > 0 and n_nodes >= 2.
DelayKernel make_kernel(KernelFamily family, double h, std::size_t n_nodes);

}  // namespace siri
