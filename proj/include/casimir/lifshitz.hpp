#pragma once

// Matsubara-sum free energy, zero-temperature energy and entropy.
//
// In dimensionless form
//   F   = k_B T / (8 pi a^2)      sum'_l  Phi(tau l),
//   E   = hbar c / (32 pi^2 a^3)  int_0^inf Phi(x) dx,
//   Phi(x) = sum_alpha int_0^inf u du ln(1 - r_alpha^2(ix, y) e^{-y}),  y = sqrt(x^2 + u^2).
// The u-integral uses one fixed composite Gauss-Kronrod rule for every x, so the
// quadrature error of Phi is a smooth function of x and drops out of sum-minus-integral
// differences. Far from x = 0 the summand is replaced by Chebyshev interpolants.

#include <functional>
#include <string>
#include <vector>

#include "casimir/params.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"
#include "casimir/response.hpp"

namespace casimir {

struct TruncationPolicy {
    enum class Kind { Fixed, Adaptive };
    Kind kind = Kind::Adaptive;
    long count = 0;               // Fixed: highest index l summed
    double tail_rel_tol = 1e-17;  // Adaptive

    static TruncationPolicy fixed(long count) { return {Kind::Fixed, count, 0.0}; }
    static TruncationPolicy adaptive(double tol) { return {Kind::Adaptive, 0, tol}; }
};

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-30;  // J/m^2 (J/(K m^2) for entropies)
    std::size_t max_nodes = 6000;
    TruncationPolicy l_max_policy = TruncationPolicy::adaptive(1e-17);
    double dT_frac = 0.05;

    // Matsubara indices summed from direct evaluations before switching to interpolants
    long exact_terms = 256;
    int cheb_order = 24;
    bool interpolate = true;
    double x_max = 48.0;   // summand treated as zero beyond
    double u_min = 1e-9;   // smallest graded wavenumber panel
    int refine = 0;        // initial panel splitting level
    std::size_t max_stored_terms = 200000;

    void validate() const;
};

/// Wavenumber rule shared by every Phi-type integral.
struct WavenumberRule {
    quad::EmbeddedRule rule;
    int level = 0;
    static WavenumberRule make(const QuadratureConfig& cfg, int level);
    std::size_t size() const { return rule.nodes.size(); }
};

struct PhiValue {
    double tm = 0.0;
    double te = 0.0;
    double err = 0.0;
    double total() const { return tm + te; }
};

/// Phi summand with embedded error estimate. Components: TM, TE (Kronrod), TM, TE (Gauss).
class PhiKernel {
public:
    PhiKernel(Medium<double> medium, WavenumberRule rule);
    quad::Components operator()(double x) const;
    PhiValue value(double x) const;
    const Medium<double>& medium() const { return medium_; }

private:
    Medium<double> medium_;
    WavenumberRule rule_;
};

/// Explicit-correction summand int u du ln[(1 - r_T^2 e^{-y}) / (1 - r_0^2 e^{-y})].
/// Components: exact TM, TE; first-order TM, TE (Kronrod); then the same four (Gauss).
class ShiftKernel {
public:
    ShiftKernel(Medium<double> at_T, Medium<double> at_zero, WavenumberRule rule);
    quad::Components operator()(double x) const;

private:
    Medium<double> at_T_, at_zero_;
    WavenumberRule rule_;
};

/// Primed sum sum'_{l} f(tau l) (l = 0 halved), optionally with (1/tau) int_0^{x_end} f.
struct SumRequest {
    double tau = 0.0;
    std::size_t ncomp = 0;
    std::function<quad::Components(double)> term;
    std::vector<std::size_t> magnitude_comps;  // drive the adaptive stop
    TruncationPolicy policy;
    // Sum l = 0 .. floor(x_max / tau) with the last term halved and integrate to the same
    // endpoint, so that sum and integral share the truncation.
    bool sum_minus_integral = false;
};

struct SumOutcome {
    std::array<quad::DoubleDouble, quad::max_components> sum{};
    quad::Components integral{};
    quad::Components integral_err{};
    quad::Components tail{};
    quad::Components interp_err{};
    quad::Components term0{};  // unweighted l = 0 summand
    long l_max = 0;
    long direct_terms = 0;
    std::size_t panels = 0;
    std::vector<quad::Components> l_terms;  // weighted, up to max_stored_terms
    quad::Components stored_remainder{};
};

SumOutcome matsubara_sum(const SumRequest& req, const QuadratureConfig& cfg);

/// int_0^{x_end} f dx for a vector summand, with x = s^2 near the origin.
quad::AdaptiveResult integrate_summand(const std::function<quad::Components(double)>& f, std::size_t ncomp,
                                       double x_end, double rel_tol);

struct TermPair {
    double tm = 0.0;
    double te = 0.0;
};

struct EnergyResult {
    double value = 0.0;
    double err_est = 0.0;
    double tm = 0.0;
    double te = 0.0;
    std::vector<TermPair> l_terms;  // per-index contributions, l = 0 first (weight 1/2 included)
    TermPair l_terms_remainder;     // contributions beyond the stored range
    long l_max_used = 0;

    // echo and diagnostics
    double a = 0.0, T = 0.0, tau = 0.0;
    ResponseModel model = ResponseModel::NonlocalDrude;
    std::size_t nodes = 0;
    int refine_level = 0;
    long direct_terms = 0;
    std::size_t panels = 0;
    double tail_bound = 0.0;
};

EnergyResult free_energy(const StatePoint& state, const Material& mat, ResponseModel model,
                         const QuadratureConfig& cfg);

EnergyResult zero_t_energy(double a, const Material& mat, ResponseModel model, const QuadratureConfig& cfg);

struct EntropyResult {
    double value = 0.0;
    double err_est = 0.0;
    double h = 0.0;
};

EntropyResult entropy_numeric(const StatePoint& state, const Material& mat, ResponseModel model,
                              const QuadratureConfig& cfg);

/// Runs attempt(rule) on successively refined wavenumber rules until it reports
/// convergence; ConvergenceFailure once the rule would exceed cfg.max_nodes.
template <class R>
R refine_until(const QuadratureConfig& cfg, const std::function<bool(const WavenumberRule&, R&)>& attempt,
               const char* what) {
    R result{};
    for (int level = cfg.refine;; ++level) {
        const auto rule = WavenumberRule::make(cfg, level);
        if (attempt(rule, result)) return result;
        if (rule.size() * 2 > cfg.max_nodes)
            throw ConvergenceFailure(std::string(what) + ": tolerance not met within max_nodes");
    }
}

double prefactor_free_energy(const StatePoint& state);  // k_B T / (8 pi a^2)
double prefactor_energy(double a);                       // hbar c / (32 pi^2 a^3)

}  // namespace casimir
