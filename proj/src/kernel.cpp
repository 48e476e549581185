#include "siri/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "siri/simd.hpp"

namespace siri {

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "truncated_exponential") return KernelFamily::TruncatedExponential;
    if (name == "uniform") return KernelFamily::Uniform;
    if (name == "point_mass") return KernelFamily::PointMass;
    throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::TruncatedExponential: return "truncated_exponential";
        case KernelFamily::Uniform: return "uniform";
        case KernelFamily::PointMass: return "point_mass";
    }
    throw std::logic_error("unreachable kernel family");
}

DelayKernel DelayKernel::from_density(std::function<double(double)> density,
                                      double h, std::size_t n_nodes) {
    if (!density) throw std::invalid_argument("kernel density must be callable");
    if (!(h > 0.0)) throw std::invalid_argument("kernel support h must be positive");
    if (n_nodes < 2) throw std::invalid_argument("kernel needs at least 2 nodes");

    DelayKernel k;
    k.h_ = h;
    k.spacing_ = h / static_cast<double>(n_nodes - 1);
    k.nodes_.resize(n_nodes);
    k.weights_.resize(n_nodes);
    k.weight_density_.resize(n_nodes);

    for (std::size_t j = 0; j < n_nodes; ++j)
        k.nodes_[j] = h * static_cast<double>(j) / static_cast<double>(n_nodes - 1);
    // Exact endpoints; interior nodes land on the step grid by construction.
    k.nodes_.front() = 0.0;
    k.nodes_.back() = h;

    for (std::size_t j = 0; j < n_nodes; ++j)
        k.weights_[j] = (j == 0 || j + 1 == n_nodes) ? 0.5 * k.spacing_ : k.spacing_;

    double raw = 0.0;
    std::vector<double> g(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        g[j] = density(k.nodes_[j]);
        if (!(g[j] >= 0.0))
            throw std::invalid_argument("kernel density must be non-negative on [0, h]");
        raw += k.weights_[j] * g[j];
    }
    if (!(raw > 0.0))
        throw std::invalid_argument("kernel density integrates to zero on [0, h]");
    k.normalization_factor_ = raw;

    // Renormalize so the discrete mass is exactly 1: the discretized model
    // then has the same equilibria as the analytic one.
    double sum = 0.0;
    for (std::size_t j = 0; j < n_nodes; ++j) {
        k.weight_density_[j] = k.weights_[j] * g[j] / raw;
        sum += k.weight_density_[j];
    }
    double fix = 1.0 / sum;
    for (double& wd : k.weight_density_) wd *= fix;

    k.density_ = [density = std::move(density), raw](double tau) {
        return density(tau) / raw;
    };
    return k;
}

DelayKernel DelayKernel::point_mass() {
    DelayKernel k;
    k.h_ = 0.0;
    k.spacing_ = 0.0;
    k.normalization_factor_ = 1.0;
    k.nodes_ = {0.0};
    k.weights_ = {1.0};
    k.weight_density_ = {1.0};
    k.density_ = [](double) { return 1.0; };
    return k;
}

double DelayKernel::density(double tau) const {
    if (tau < 0.0 || tau > h_)
        throw std::out_of_range("kernel density evaluated outside [0, h]");
    return density_(tau);
}

double DelayKernel::convolve(const std::function<double(double)>& evaluand) const {
    std::vector<double> vals(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) vals[j] = evaluand(nodes_[j]);
    return simd::ops().dot(weight_density_.data(), vals.data(), vals.size());
}

DelayKernel make_kernel(KernelFamily family, double h, std::size_t n_nodes) {
    switch (family) {
        case KernelFamily::PointMass:
            if (h != 0.0)
                throw std::invalid_argument("point_mass kernel requires h = 0");
            return DelayKernel::point_mass();
        case KernelFamily::TruncatedExponential: {
            if (!(h > 0.0))
                throw std::invalid_argument("truncated_exponential kernel requires h > 0");
            const double norm = 1.0 - std::exp(-h);
            return DelayKernel::from_density(
                [norm](double tau) { return std::exp(-tau) / norm; }, h, n_nodes);
        }
        case KernelFamily::Uniform:
            if (!(h > 0.0))
                throw std::invalid_argument("uniform kernel requires h > 0");
            return DelayKernel::from_density([h](double) { return 1.0 / h; }, h,
                                             n_nodes);
    }
    throw std::logic_error("unreachable kernel family");
}

}  // namespace siri
