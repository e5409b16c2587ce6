#include "degenflow/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace degenflow {

double momentum(const State& s) {
    double acc = 0.0;
    for (double vi : s.v) acc += vi;
    return s.h * acc;
}

double energy(const State& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += 0.5 * s.v[i] * s.v[i] + s.w[i];
    return s.h * acc;
}

double heat_content(const State& s) {
    double acc = 0.0;
    for (double wi : s.w) acc += wi;
    return s.h * acc;
}

double entropy(const State& s, const EntropySpec& spec) {
    double acc = 0.0;
    for (double wi : s.w) {
        if (wi < 0.0) throw DomainError("entropy: negative w");
        if (wi == 0.0 && spec.kind != EntropySpec::Kind::log) continue; // sigma(0) = 0
        acc += spec.sigma(wi);
    }
    return s.h * acc;
}

namespace {

double entropy_production_impl(const State& s, const EntropySpec& spec,
                               const std::function<double(double)>& eta_fn,
                               const std::function<double(double)>& kappa_fn,
                               double skip_floor) {
    const std::size_t n = s.size();
    const double h = s.h;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double wl = s.w[i], wr = s.w[i + 1];
        if (wl <= skip_floor && wr <= skip_floor) continue; // degenerate face
        const double wf = 0.5 * (wl + wr);
        const double dv = (s.v[i + 1] - s.v[i]) / h;
        const double dw = (wr - wl) / h;
        acc += h * (-spec.sigma_prime2(wf) * kappa_fn(wf) * dw * dw +
                    spec.sigma_prime(wf) * eta_fn(wf) * dv * dv);
    }
    return acc;
}

} // namespace

double entropy_production(const State& s, const EntropySpec& spec, const Coefficients& c) {
    return entropy_production_impl(
        s, spec, [&](double w) { return eta(w, c); }, [&](double w) { return kappa(w, c); },
        c.eps_floor);
}

double entropy_production(const State& s, const EntropySpec& spec, const CoefficientLaw& law,
                          double skip_floor) {
    return entropy_production_impl(
        s, spec, [&](double w) { return law.eta(w); }, [&](double w) { return law.kappa(w); },
        skip_floor);
}

double lp_norm(const std::vector<double>& f, double h, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : f) m = std::max(m, std::abs(x));
        return m;
    }
    if (p < 1.0) throw ConfigError("lp_norm: p must be >= 1");
    double acc = 0.0;
    if (p == 1.0) {
        for (double x : f) acc += std::abs(x);
        return h * acc;
    }
    if (p == 2.0) {
        for (double x : f) acc += x * x;
        return std::sqrt(h * acc);
    }
    for (double x : f) acc += std::pow(std::abs(x), p);
    return std::pow(h * acc, 1.0 / p);
}

} // namespace degenflow
