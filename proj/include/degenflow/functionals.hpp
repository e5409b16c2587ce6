#pragma once

#include "degenflow/coefficients.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

/// Total momentum: midpoint quadrature of v.
double momentum(const State& s);

/// Total energy: midpoint quadrature of v^2/2 + w.
double energy(const State& s);

/// Integral of w (the heat content).
double heat_content(const State& s);

/// Entropy functional: quadrature of sigma(w). The log kind requires all
/// cells strictly positive.
double entropy(const State& s, const EntropySpec& spec);

/// Discrete entropy production quadrature
///   sum over faces of h * ( -sigma''(wf) kappa(wf) (dw)^2 + sigma'(wf) eta(wf) (dv)^2 )
/// with face-centered gradients and arithmetic face means. Faces whose two
/// adjacent cells both lie at or below the regularization floor contribute 0.
/// Nonnegative term by term for every EntropySpec.
double entropy_production(const State& s, const EntropySpec& spec, const Coefficients& c);

/// Same quadrature driven by a general coefficient law.
double entropy_production(const State& s, const EntropySpec& spec, const CoefficientLaw& law,
                          double skip_floor);

/// Discrete L^p norm of a cell field: (h sum |f|^p)^(1/p); p = inf -> max|f|.
double lp_norm(const std::vector<double>& f, double h, double p);

} // namespace degenflow
