#include <npchange/dgp.hpp>

#include <cmath>
#include <mutex>
#include <random>

#include <fftw3.h>

#include <npchange/errors.hpp>
#include <npchange/rng.hpp>

namespace npchange {

DgpSpec arma_spec(double ar, double ma, double innov_sd, std::size_t n, std::uint64_t seed,
                  std::size_t burn_in) {
    return DgpSpec{Arma11{ar, ma, innov_sd}, n, burn_in, seed};
}

DgpSpec arfima_spec(double d, double innov_sd, std::size_t n, std::uint64_t seed,
                    std::size_t burn_in) {
    return DgpSpec{Arfima0d0{d, innov_sd}, n, burn_in, seed};
}

namespace {

std::vector<double> draw_innovations(std::size_t count, double sd, std::uint64_t seed) {
    auto engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, sd);
    std::vector<double> u(count);
    for (auto& v : u)
        v = normal(engine);
    return u;
}

// fftw planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Linear convolution x = psi * u truncated to the first |u| outputs.
std::vector<double> fft_convolve_prefix(const std::vector<double>& psi,
                                        const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::size_t m = 1;
    while (m < 2 * n)
        m *= 2;

    std::vector<double> a(m, 0.0), b(m, 0.0), out(m, 0.0);
    std::copy(psi.begin(), psi.end(), a.begin());
    std::copy(u.begin(), u.end(), b.begin());
    std::vector<fftw_complex> fa(m / 2 + 1), fb(m / 2 + 1);

    fftw_plan pa, pb, pinv;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        pa = fftw_plan_dft_r2c_1d(static_cast<int>(m), a.data(), fa.data(), FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(static_cast<int>(m), b.data(), fb.data(), FFTW_ESTIMATE);
        pinv = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_execute(pinv);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pinv);
    }

    std::vector<double> result(n);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i)
        result[i] = out[i] * scale;
    return result;
}

} // namespace

std::vector<double> gen_arma11(const DgpSpec& spec) {
    const auto& p = std::get<Arma11>(spec.process);
    if (!(std::fabs(p.ar) < 1.0))
        throw ConfigError("gen_arma11: |ar| must be < 1 (stationarity)");
    if (!(p.innov_sd > 0.0))
        throw ConfigError("gen_arma11: innov_sd must be positive");
    const std::size_t total = spec.n + spec.burn_in;
    const std::vector<double> u = draw_innovations(total, p.innov_sd, spec.seed);
    std::vector<double> x(total);
    double x_prev = 0.0, u_prev = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
        x[t] = p.ar * x_prev + u[t] + p.ma * u_prev;
        x_prev = x[t];
        u_prev = u[t];
    }
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(spec.burn_in), x.end());
}

std::vector<double> gen_arfima0d0(const DgpSpec& spec) {
    const auto& p = std::get<Arfima0d0>(spec.process);
    if (!(std::fabs(p.d) < 0.5))
        throw ConfigError("gen_arfima0d0: |d| must be < 0.5");
    if (!(p.innov_sd > 0.0))
        throw ConfigError("gen_arfima0d0: innov_sd must be positive");
    const std::size_t total = spec.n + spec.burn_in;
    std::vector<double> u = draw_innovations(total, p.innov_sd, spec.seed);
    if (p.d == 0.0) // zero differencing: exactly the white-noise path
        return std::vector<double>(u.begin() + static_cast<std::ptrdiff_t>(spec.burn_in),
                                   u.end());

    // MA weights of (1 - L)^{-d}: psi_0 = 1, psi_j = psi_{j-1} (j - 1 + d)/j.
    std::vector<double> psi(total);
    psi[0] = 1.0;
    for (std::size_t j = 1; j < total; ++j)
        psi[j] = psi[j - 1] * (static_cast<double>(j) - 1.0 + p.d) / static_cast<double>(j);

    std::vector<double> x = fft_convolve_prefix(psi, u);
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(spec.burn_in), x.end());
}

std::vector<double> generate(const DgpSpec& spec) {
    return std::holds_alternative<Arma11>(spec.process) ? gen_arma11(spec) : gen_arfima0d0(spec);
}

std::size_t change_index(std::size_t n, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ConfigError("change_index: theta must lie in (0, 1)");
    return static_cast<std::size_t>(std::floor(theta * static_cast<double>(n)));
}

PairedSeries apply_change_model(const std::vector<double>& x, const std::vector<double>& eps,
                                const ChangeModelSpec& model) {
    if (x.size() != eps.size())
        throw ConfigError("apply_change_model: x and eps lengths differ");
    const std::size_t n = x.size();
    const std::size_t k = change_index(n, model.theta);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        const bool before = t + 1 <= k; // 1-based time index
        double phi;
        switch (model.model) {
        case ChangeModel::LinearToQuadratic:
            phi = before ? 1.0 + x[t] : x[t] * x[t];
            break;
        case ChangeModel::QuadraticShift:
        default:
            phi = before ? x[t] * x[t]
                         : (x[t] + model.delta_phi) * (x[t] + model.delta_phi);
            break;
        }
        y[t] = phi + eps[t];
    }
    return PairedSeries(std::vector<double>(x), std::move(y));
}

} // namespace npchange
