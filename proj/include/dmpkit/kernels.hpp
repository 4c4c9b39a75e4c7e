#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dmpkit {

// Comparison slack on the truncation boundary. Support edges like
// c_N + theta = 1 only hold in real arithmetic; the slack keeps exact-edge
// phases inside the support. Far below kernel spacing for any practical N.
inline constexpr double kSupportSlack = 1e-12;

// Gaussian basis on phase in [0,1]: evenly spaced midpoint centers
// c_i = (2i-1)/(2N), so unit-width supports tile [0,1] edge to edge.
// Truncated kernels vanish outside |x - c| <= theta; the full-Gaussian
// variant has no cutoff (and, as a separate historical convention, no 1/2
// factor in the exponent).
struct KernelBank {
    std::vector<double> centers;
    std::vector<double> shapes;      // h_i
    double half_width = 0.0;         // theta, shared by all kernels
    double width_factor = 1.0;       // width in units of 1/N
    double edge_value = 0.5;         // psi at the truncation edge
    bool truncated = true;

    std::size_t size() const { return centers.size(); }
};

// Builds N kernels of width width_factor/N. The shape h follows from
// requiring psi = edge_value at the support edge: h = 2*ln(1/edge)/theta^2.
inline KernelBank build_bank(std::size_t count, double width_factor,
                             bool truncated, double edge_value = 0.5)
{
    if (count == 0)
        throw std::invalid_argument("bank: kernel count must be at least 1");
    if (!(width_factor > 0.0))
        throw std::invalid_argument("bank: width_factor must be positive");
    if (!(edge_value > 0.0) || !(edge_value < 1.0))
        throw std::invalid_argument("bank: edge_value must be in (0, 1)");

    KernelBank bank;
    bank.width_factor = width_factor;
    bank.edge_value = edge_value;
    bank.truncated = truncated;
    bank.half_width = width_factor / (2.0 * static_cast<double>(count));
    const double h = 2.0 * std::log(1.0 / edge_value) /
                     (bank.half_width * bank.half_width);
    bank.centers.resize(count);
    bank.shapes.assign(count, h);
    for (std::size_t i = 0; i < count; ++i)
        bank.centers[i] = (2.0 * static_cast<double>(i) + 1.0) /
                          (2.0 * static_cast<double>(count));
    return bank;
}

// psi_i(x) = exp(-h/2 (x-c)^2) for every kernel; the truncated variant is
// the same bell cut to exactly 0 outside the support, so the two variants
// agree everywhere inside it.
inline void activations(const KernelBank& bank, double x, std::span<double> out)
{
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("activations: phase outside [0, 1]");
    if (out.size() != bank.size())
        throw std::invalid_argument("activations: output size mismatch");
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const double d = x - bank.centers[i];
        if (bank.truncated && std::abs(d) > bank.half_width + kSupportSlack)
            out[i] = 0.0;
        else
            out[i] = std::exp(-0.5 * bank.shapes[i] * d * d);
    }
}

inline std::vector<double> activations(const KernelBank& bank, double x)
{
    std::vector<double> psi(bank.size());
    activations(bank, x, psi);
    return psi;
}

// Activation matrix over a phase sequence: result[i][t] = psi_i(x_t).
inline std::vector<std::vector<double>>
activation_matrix(const KernelBank& bank, std::span<const double> phase)
{
    std::vector<std::vector<double>> psi(bank.size(),
                                         std::vector<double>(phase.size()));
    std::vector<double> column(bank.size());
    for (std::size_t t = 0; t < phase.size(); ++t) {
        activations(bank, phase[t], column);
        for (std::size_t i = 0; i < bank.size(); ++i)
            psi[i][t] = column[i];
    }
    return psi;
}

// Normalized weighted sum scaled by phase: f = (sum psi*w / sum psi) * x.
// Where no kernel is active (gap between separated supports) f is 0 and the
// spring-damper alone governs.
inline double forcing_value(const KernelBank& bank,
                            std::span<const double> weights, double x)
{
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("forcing: phase outside [0, 1]");
    if (weights.size() != bank.size())
        throw std::invalid_argument("forcing: weight count mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const double d = x - bank.centers[i];
        if (bank.truncated && std::abs(d) > bank.half_width + kSupportSlack)
            continue;
        const double psi = std::exp(-0.5 * bank.shapes[i] * d * d);
        num += psi * weights[i];
        den += psi;
    }
    if (den == 0.0)
        return 0.0;
    return num / den * x;
}

} // namespace dmpkit
