#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include <npchange/series.hpp>

namespace npchange {

/// X_t = ar * X_{t-1} + u_t + ma * u_{t-1}, Gaussian innovations.
struct Arma11 {
    double ar = 0.5;
    double ma = 0.5;
    double innov_sd = 1.0;
};

/// (1 - L)^d X_t = u_t, |d| < 0.5, Gaussian innovations.
struct Arfima0d0 {
    double d = 0.15;
    double innov_sd = 1.0;
};

using ProcessKind = std::variant<Arma11, Arfima0d0>;

struct DgpSpec {
    ProcessKind process;
    std::size_t n = 0;
    std::size_t burn_in = 0; // discarded warm-up draws
    std::uint64_t seed = 0;
};

/// Specs with the module's burn-in defaults filled in.
DgpSpec arma_spec(double ar, double ma, double innov_sd, std::size_t n, std::uint64_t seed,
                  std::size_t burn_in = 500);
DgpSpec arfima_spec(double d, double innov_sd, std::size_t n, std::uint64_t seed,
                    std::size_t burn_in = 1000);

std::vector<double> gen_arma11(const DgpSpec& spec);

/// Fractional integration: the full-history recursion
/// X_t = sum_{j>=1} pi_j X_{t-j} + u_t with pi_j = pi_{j-1} (j-1-d)/j sign
/// convention folded in, truncation lag = n + burn_in, started from zeros.
/// Computed via the equivalent truncated MA convolution (FFT) so that the
/// 1e6-draw validation runs in O(N log N). d = 0 returns the white-noise
/// path bit-identically.
std::vector<double> gen_arfima0d0(const DgpSpec& spec);

/// Dispatch on the process variant.
std::vector<double> generate(const DgpSpec& spec);

enum class ChangeModel {
    LinearToQuadratic, // y = 1 + x before the change, y = x^2 after
    QuadraticShift     // y = x^2 before, y = (x + delta_phi)^2 after
};

struct ChangeModelSpec {
    ChangeModel model = ChangeModel::LinearToQuadratic;
    double theta = 0.4;    // change index k = floor(theta * n)
    double delta_phi = 0.0; // QuadraticShift only
};

/// Assemble Y_t = phi(X_t) + eps_t with the regression function switching
/// after k = floor(theta * n).
PairedSeries apply_change_model(const std::vector<double>& x, const std::vector<double>& eps,
                                const ChangeModelSpec& model);

std::size_t change_index(std::size_t n, double theta);

} // namespace npchange
