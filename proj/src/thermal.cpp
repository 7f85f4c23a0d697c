#include "casimir/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

using quad::Components;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

Medium<double> phi_medium(const DimensionlessState& ds, ResponseModel model, PhiMode mode) {
    auto m = medium_for(model, ds, TemperatureMode::ZeroT);
    if (mode == PhiMode::DefectStatic) {
        if (!(ds.gamma_zero_t > 0.0)) throw DomainError("phi: DefectStatic needs gamma0 > 0");
        if (model == ResponseModel::LocalDrude || model == ResponseModel::NonlocalDrude) m.gamma = ds.gamma_zero_t;
    }
    return m;
}

// scalar integral over [0, inf) split into doubling panels, x = s^2 on the first
double integrate_decaying(const std::function<double(double)>& f, double end, double rel_tol) {
    quad::DoubleDouble acc;
    const double first = std::min(1.0, end);
    acc.add(quad::integrate_adaptive([&](double s) { return 2.0 * s * f(s * s); }, 0.0, std::sqrt(first), rel_tol,
                                     1e-300, 200000)
                .value[0]);
    for (double a = first; a < end; a *= 2.0)
        acc.add(quad::integrate_adaptive(f, a, std::min(2.0 * a, end), rel_tol, 1e-300, 200000).value[0]);
    return acc.value();
}

}  // namespace

PhiValue phi(double x, const DimensionlessState& ds, ResponseModel model, PhiMode mode,
             const QuadratureConfig& cfg) {
    cfg.validate();
    return PhiKernel(phi_medium(ds, model, mode), WavenumberRule::make(cfg, cfg.refine)).value(x);
}

ThermalPart implicit_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(state.T > 0.0)) throw DomainError("implicit_correction: requires T > 0");
    const auto ds = to_dimensionless(state, mat);
    const double P = prefactor_free_energy(state);
    return refine_until<ThermalPart>(
        cfg,
        [&](const WavenumberRule& rule, ThermalPart& out) {
            PhiKernel kernel(medium_for(model, ds, TemperatureMode::ZeroT), rule);
            SumRequest req;
            req.tau = ds.tau;
            req.ncomp = 4;
            req.term = [&kernel](double x) { return kernel(x); };
            req.sum_minus_integral = true;
            const auto o = matsubara_sum(req, cfg);
            std::array<double, 4> d{};
            for (int c = 0; c < 4; ++c) d[c] = o.sum[c].value() - o.integral[c];
            out.tm = P * d[0];
            out.te = P * d[1];
            out.value = out.tm + out.te;
            const double noise = 4.0 * eps * (std::abs(o.sum[0].value()) + std::abs(o.sum[1].value())) /
                                 std::sqrt(static_cast<double>(o.l_max + 1));
            const double rule_err = P * (std::abs(d[0] - d[2]) + std::abs(d[1] - d[3]));
            const double fixed_err =
                P * (o.integral_err[0] + o.integral_err[1] + o.interp_err[0] + o.interp_err[1] + noise);
            out.err = rule_err + fixed_err;
            // sum and integral cancel to many digits; their rounding cannot be refined away,
            // and a finer wavenumber rule only reduces rule_err
            const double floor = P * 16.0 * eps * (std::abs(o.sum[0].value()) + std::abs(o.sum[1].value()));
            const double target = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(out.value), floor});
            return out.err <= target || rule_err <= std::max(target, fixed_err);
        },
        "implicit_correction");
}

ExplicitParts explicit_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                  const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(state.T > 0.0)) throw DomainError("explicit_correction: requires T > 0");
    const auto ds = to_dimensionless(state, mat);
    if (!has_explicit_temperature_dependence(model, ds)) return {};
    const double P = prefactor_free_energy(state);
    const auto at_T = medium_for(model, ds, TemperatureMode::FiniteT);
    const auto at_zero = medium_for(model, ds, TemperatureMode::ZeroT);
    return refine_until<ExplicitParts>(
        cfg,
        [&](const WavenumberRule& rule, ExplicitParts& out) {
            ShiftKernel kernel(at_T, at_zero, rule);
            SumRequest req;
            req.tau = ds.tau;
            req.ncomp = 8;
            req.term = [&kernel](double x) { return kernel(x); };
            req.magnitude_comps = {0, 1};
            req.policy = cfg.l_max_policy;
            const auto o = matsubara_sum(req, cfg);
            auto part = [&](int c) { return P * (o.sum[c].value() - 0.5 * o.term0[c]); };
            out.l0 = {P * 0.5 * o.term0[0], P * 0.5 * o.term0[1]};
            out.lge1 = {part(0), part(1)};
            out.l0_first = {P * 0.5 * o.term0[2], P * 0.5 * o.term0[3]};
            out.lge1_first = {part(2), part(3)};
            out.l_max = o.l_max;
            double pe[2], ze[2];
            for (int c = 0; c < 2; ++c) {
                ze[c] = 0.5 * std::abs(o.term0[c] - o.term0[c + 4]) + 4.0 * eps * std::abs(o.term0[c]);
                pe[c] = std::abs(o.sum[c].value() - o.sum[c + 4].value()) + o.tail[c] + o.interp_err[c] +
                        16.0 * eps * std::abs(o.sum[c].value());
            }
            out.l0_err = {P * ze[0], P * ze[1]};
            out.lge1_err = {P * (pe[0] + ze[0]), P * (pe[1] + ze[1])};
            const double floor = 16.0 * eps * (std::abs(o.sum[0].value()) + std::abs(o.sum[1].value()));
            out.err = P * (pe[0] + pe[1]);
            return out.err <= std::max({cfg.abs_tol, cfg.rel_tol * std::abs(out.value()), 2.0 * P * floor});
        },
        "explicit_correction");
}

CorrectionBreakdown thermal_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                       const QuadratureConfig& cfg) {
    const auto imp = implicit_correction(state, mat, model, cfg);
    const auto exp = explicit_correction(state, mat, model, cfg);
    CorrectionBreakdown b;
    b.implicit = imp.value;
    b.implicit_parts = {imp.tm, imp.te};
    b.explicit_l0 = exp.l0;
    b.explicit_lge1 = exp.lge1;
    b.explicit_detail = exp;
    b.total = imp.value + exp.value();
    b.err_est = imp.err + exp.err;
    return b;
}

double abel_plana_difference(const std::function<double(double)>& f, double tau, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(tau > 0.0)) throw DomainError("abel_plana_difference: tau must be positive");
    auto d1 = [&](double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    auto d3 = [&](double x, double h) {
        return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h);
    };
    // per-cell integral of the linear interpolant minus f, so no large sums cancel
    quad::DoubleDouble acc;
    long done = 0;
    double f_left = f(0.0);
    for (double X = 64.0;; X *= 2.0) {
        const long L = static_cast<long>(std::ceil(X / tau));
        for (long l = done; l < L; ++l) {
            const double x0 = tau * l, x1 = tau * (l + 1);
            const double f_right = f(x1);
            const double slope = (f_right - f_left) / tau;
            auto gap = [&](double x) { return f_left + slope * (x - x0) - f(x); };
            const double noise = 1e-16 * tau * (std::abs(f_left) + std::abs(f_right));
            const double cell =
                l == 0 ? quad::integrate_adaptive([&](double s) { return 2.0 * s * gap(s * s); }, 0.0, std::sqrt(x1),
                                                  1e-12, noise, 200000)
                             .value[0]
                       : quad::integrate_adaptive(gap, x0, x1, 1e-12, noise, 200000).value[0];
            acc.add(cell / tau);
            f_left = f_right;
        }
        done = L;
        const double xe = tau * L;
        const double h = xe / 64.0;
        // Euler-Maclaurin remainder of the trapezoidal cut at x_e
        const double c1 = -tau / 12.0 * d1(xe, h);
        const double c3 = tau * tau * tau / 720.0 * d3(xe, h);
        const double result = acc.value() + c1 + c3;
        if (std::abs(c3) <= cfg.rel_tol * 1e-6 * std::max(std::abs(result), 1e-12) || X > 1e7)
            return result;
        if (L > 50000000) throw ConvergenceFailure("abel_plana_difference: slow decay");
    }
}

double abel_plana_contour(const std::function<std::complex<double>(double)>& disc, double tau,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(tau > 0.0)) throw DomainError("abel_plana_contour: tau must be positive");
    const double two_pi = 2.0 * std::numbers::pi;
    // i D / (e^{2 pi t} - 1), real part
    auto g = [&](double t) {
        if (t == 0.0) return 0.0;
        return -disc(t).imag() / std::expm1(two_pi * t);
    };
    return integrate_decaying(g, 16.0, 1e-14);
}

}  // namespace casimir
