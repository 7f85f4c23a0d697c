#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace cst = constants;
using quad::Components;
using quad::DoubleDouble;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// ln(1 - r^2 e^{-y}) with r^2 = (1 - c)^2, accurate both for y -> 0 and for large y
inline double log_mode(double c, double y, double e) {
    if (e < 0.5) return std::log1p(-(1.0 - c) * (1.0 - c) * e);
    return std::log(-std::expm1(-y) + e * c * (2.0 - c));
}

// 1 - r^2 e^{-y}
inline double mode_factor(double c, double y, double e) {
    if (e < 0.5) return 1.0 - (1.0 - c) * (1.0 - c) * e;
    return -std::expm1(-y) + e * c * (2.0 - c);
}

std::vector<double> panel_breaks(double lo, double hi) {
    std::vector<double> b = {lo};
    double p = lo;
    while (p < hi) {
        double next = std::min({p * 2.0, p + 4.0, hi});
        if (hi - next < 0.25 * (next - p)) next = hi;
        b.push_back(next);
        p = next;
    }
    return b;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadratureConfig: tolerances must be positive");
    if (!(dT_frac > 0.0) || !(dT_frac < 0.5)) throw DomainError("QuadratureConfig: dT_frac must lie in (0, 0.5)");
    if (max_nodes == 0) throw DomainError("QuadratureConfig: max_nodes must be positive");
    if (l_max_policy.kind == TruncationPolicy::Kind::Fixed && l_max_policy.count < 0)
        throw DomainError("QuadratureConfig: fixed l_max must be non-negative");
    if (l_max_policy.kind == TruncationPolicy::Kind::Adaptive && !(l_max_policy.tail_rel_tol > 0.0))
        throw DomainError("QuadratureConfig: tail_rel_tol must be positive");
    if (exact_terms < 1) throw DomainError("QuadratureConfig: exact_terms must be >= 1");
    if (cheb_order < 4) throw DomainError("QuadratureConfig: cheb_order must be >= 4");
    if (!(x_max > 8.0)) throw DomainError("QuadratureConfig: x_max must exceed 8");
    if (!(u_min > 0.0) || !(u_min < 1e-2)) throw DomainError("QuadratureConfig: u_min must lie in (0, 1e-2)");
    if (refine < 0) throw DomainError("QuadratureConfig: refine must be non-negative");
}

WavenumberRule WavenumberRule::make(const QuadratureConfig& cfg, int level) {
    return {quad::gauss_kronrod_composite(quad::graded_breakpoints(cfg.u_min, 4.0, 4.0, cfg.x_max, level)),
            level};
}

PhiKernel::PhiKernel(Medium<double> medium, WavenumberRule rule)
    : medium_(medium), rule_(std::move(rule)) {}

Components PhiKernel::operator()(double x) const {
    const auto& r = rule_.rule;
    double tm_k = 0.0, te_k = 0.0, tm_g = 0.0, te_g = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double u = r.nodes[i];
        const double y = x == 0.0 ? u : std::sqrt(x * x + u * u);
        const auto p = x == 0.0 ? static_reflection(y, medium_) : reflection(x, y, u, medium_);
        const double e = std::exp(-y);
        const double f_tm = u * log_mode(p.c_tm, y, e);
        const double f_te = u * log_mode(p.c_te, y, e);
        tm_k += r.w_kronrod[i] * f_tm;
        te_k += r.w_kronrod[i] * f_te;
        tm_g += r.w_gauss[i] * f_tm;
        te_g += r.w_gauss[i] * f_te;
    }
    return {tm_k, te_k, tm_g, te_g};
}

PhiValue PhiKernel::value(double x) const {
    if (!(x >= 0.0)) throw DomainError("phi: requires x >= 0");
    const auto c = (*this)(x);
    return {c[0], c[1], std::abs(c[0] - c[2]) + std::abs(c[1] - c[3])};
}

ShiftKernel::ShiftKernel(Medium<double> at_T, Medium<double> at_zero, WavenumberRule rule)
    : at_T_(at_T), at_zero_(at_zero), rule_(std::move(rule)) {}

Components ShiftKernel::operator()(double x) const {
    const auto& r = rule_.rule;
    std::array<double, 4> k{}, g{};
    if (at_T_.gamma == at_zero_.gamma) return {};
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double u = r.nodes[i];
        const double y = x == 0.0 ? u : std::sqrt(x * x + u * u);
        const auto s = reflection_shift(x, y, at_T_, at_zero_, u);
        const double e = std::exp(-y);
        const std::array<double, 2> c0 = {s.at_zero.c_tm, s.at_zero.c_te};
        const std::array<double, 2> c1 = {s.at_T.c_tm, s.at_T.c_te};
        const std::array<double, 2> dc = {s.dc_tm, s.dc_te};
        for (int m = 0; m < 2; ++m) {
            const double a0 = mode_factor(c0[m], y, e);
            const double exact = u * std::log1p(e * dc[m] * (2.0 - c1[m] - c0[m]) / a0);
            const double first = u * 2.0 * (1.0 - c0[m]) * dc[m] * e / a0;
            k[m] += r.w_kronrod[i] * exact;
            k[2 + m] += r.w_kronrod[i] * first;
            g[m] += r.w_gauss[i] * exact;
            g[2 + m] += r.w_gauss[i] * first;
        }
    }
    return {k[0], k[1], k[2], k[3], g[0], g[1], g[2], g[3]};
}

quad::AdaptiveResult integrate_summand(const std::function<Components(double)>& f, std::size_t ncomp,
                                       double x_end, double rel_tol) {
    quad::AdaptiveResult total;
    total.converged = true;
    auto merge = [&](const quad::AdaptiveResult& r) {
        for (std::size_t c = 0; c < ncomp; ++c) {
            total.value[c] += r.value[c];
            total.error[c] += r.error[c];
        }
        total.evaluations += r.evaluations;
        total.converged = total.converged && r.converged;
    };
    if (!(x_end > 0.0)) return total;
    constexpr std::size_t budget = 400000;
    const double first = std::min(1.0, x_end);
    // x = s^2 regularises sqrt-type behaviour at the origin
    merge(quad::integrate_adaptive(
        [&](double s) {
            auto v = f(s * s);
            for (std::size_t c = 0; c < ncomp; ++c) v[c] *= 2.0 * s;
            return v;
        },
        ncomp, 0.0, std::sqrt(first), rel_tol, 1e-300, budget));
    for (double a = first; a < x_end;) {
        const double b = std::min({2.0 * a, a + 4.0, x_end});
        merge(quad::integrate_adaptive(f, ncomp, a, b, rel_tol, 1e-300, budget));
        a = b;
    }
    return total;
}

SumOutcome matsubara_sum(const SumRequest& req, const QuadratureConfig& cfg) {
    const double tau = req.tau;
    if (!(tau > 0.0)) throw DomainError("matsubara_sum: tau must be positive");
    const std::size_t nc = req.ncomp;
    SumOutcome out;

    // l beyond l_cap has tau l > x_max and contributes nothing representable
    const long l_cap = static_cast<long>(std::floor(cfg.x_max / tau));
    const bool smi = req.sum_minus_integral;
    const bool adaptive = !smi && req.policy.kind == TruncationPolicy::Kind::Adaptive;
    const long l_end = smi ? std::max(l_cap, 1L)
                           : (adaptive ? l_cap + 1 : std::min(req.policy.count, l_cap + 1));
    const double x_hi = smi ? tau * l_end : cfg.x_max;

    long l_direct = l_end + 1;
    std::vector<quad::ChebyshevPanel> panels;
    if (cfg.interpolate && cfg.exact_terms < l_end) {
        l_direct = cfg.exact_terms;
        const auto breaks = panel_breaks(tau * l_direct, x_hi);
        const std::size_t np = breaks.size() - 1;
        const int n = cfg.cheb_order;
        std::vector<double> xs;
        for (std::size_t p = 0; p < np; ++p) {
            const auto nodes = quad::ChebyshevPanel::nodes(breaks[p], breaks[p + 1], n);
            xs.insert(xs.end(), nodes.begin(), nodes.end());
            // off-node probe for the interpolation error
            const double theta = std::numbers::pi * (n / 2 + 0.5) / n;
            xs.push_back(0.5 * (breaks[p] + breaks[p + 1]) + 0.5 * (breaks[p + 1] - breaks[p]) * std::cos(theta));
        }
        std::vector<Components> vals(xs.size());
        quad::parallel_for(xs.size(), [&](std::size_t i) { vals[i] = req.term(xs[i]); });
        const std::size_t stride = n + 2;
        for (std::size_t p = 0; p < np; ++p) {
            std::vector<Components> v(vals.begin() + p * stride, vals.begin() + p * stride + n + 1);
            quad::ChebyshevPanel panel(breaks[p], breaks[p + 1], n, nc, std::move(v));
            const auto probe = panel(xs[p * stride + n + 1]);
            double spread = 0.0;
            for (std::size_t c = 0; c < nc; ++c)
                spread = std::max(spread, std::abs(probe[c] - vals[p * stride + n + 1][c]));
            panel.set_spread(spread);
            panels.push_back(std::move(panel));
        }
        out.panels = np;
    }
    out.direct_terms = std::min(l_direct, l_end + 1);

    // direct terms, evaluated in fixed-size blocks so the adaptive stop never depends on scheduling
    constexpr long block = 1024;
    std::vector<Components> direct;
    long direct_from = 0;
    auto direct_term = [&](long l) -> const Components& {
        if (l >= direct_from + static_cast<long>(direct.size())) {
            direct_from = l;
            const long count = std::min(block, out.direct_terms - l);
            direct.assign(count, Components{});
            quad::parallel_for(count, [&](std::size_t i) { direct[i] = req.term(tau * (l + static_cast<long>(i))); });
        }
        return direct[l - direct_from];
    };

    std::size_t panel_idx = 0;
    std::vector<long> panel_counts(panels.size(), 0);
    int quiet = 0;
    double prev_mag = 0.0;
    long l = 0;
    Components last{};
    for (; l <= l_end; ++l) {
        Components t;
        if (l < out.direct_terms) {
            t = direct_term(l);
        } else {
            const double x = tau * l;
            if (x > x_hi) break;
            while (panel_idx + 1 < panels.size() && x > panels[panel_idx].b()) ++panel_idx;
            t = panels[panel_idx](x);
            ++panel_counts[panel_idx];
        }
        if (l == 0) out.term0 = t;
        const double w = (l == 0 || (smi && l == l_end)) ? 0.5 : 1.0;
        Components wt{};
        for (std::size_t c = 0; c < nc; ++c) {
            wt[c] = w * t[c];
            out.sum[c].add(wt[c]);
        }
        if (out.l_terms.size() < cfg.max_stored_terms) out.l_terms.push_back(wt);
        else
            for (std::size_t c = 0; c < nc; ++c) out.stored_remainder[c] += wt[c];
        last = t;

        if (adaptive && l >= 1) {
            double mag = 0.0, partial = 0.0;
            for (auto c : req.magnitude_comps) {
                mag += std::abs(t[c]);
                partial += out.sum[c].value();
            }
            const double ratio = prev_mag > 0.0 ? mag / prev_mag : 0.0;
            prev_mag = mag;
            quiet = (mag <= req.policy.tail_rel_tol * std::abs(partial)) ? quiet + 1 : 0;
            if (quiet >= 3) {
                for (std::size_t c = 0; c < nc; ++c)
                    out.tail[c] = ratio > 0.0 && ratio < 1.0 ? std::abs(t[c]) * ratio / (1.0 - ratio)
                                                             : std::abs(t[c]) * static_cast<double>(l_cap - l);
                break;
            }
        }
    }
    out.l_max = std::min(l, l_end);
    if (!smi && !adaptive && req.policy.count > l_cap) out.l_max = req.policy.count;
    if (!adaptive && !smi) {
        // remainder beyond a fixed cut: geometric bound from e^{-x} decay
        const double q = std::exp(-tau);
        for (std::size_t c = 0; c < nc; ++c) out.tail[c] = std::abs(last[c]) * q / (1.0 - q);
    }

    for (std::size_t p = 0; p < panels.size(); ++p)
        for (std::size_t c = 0; c < nc; ++c)
            out.interp_err[c] += panels[p].spread() * static_cast<double>(panel_counts[p] + 1);

    if (smi) {
        const double x_split = panels.empty() ? x_hi : panels.front().a();
        const auto head = integrate_summand(req.term, nc, x_split, 1e-14);
        for (std::size_t c = 0; c < nc; ++c) {
            DoubleDouble acc;
            acc.add(head.value[c]);
            for (const auto& p : panels) acc.add(p.integral()[c]);
            out.integral[c] = acc.value() / tau;
            double interp = 0.0;
            for (const auto& p : panels) interp += p.spread() * (p.b() - p.a());
            out.integral_err[c] = (head.error[c] + interp) / tau;
        }
    }
    return out;
}

double prefactor_free_energy(const StatePoint& state) {
    return cst::k_B * state.T / (8.0 * cst::pi * state.a * state.a);
}

double prefactor_energy(double a) { return cst::hbar * cst::c / (32.0 * cst::pi * cst::pi * a * a * a); }

namespace {

struct FreeSum {
    SumOutcome sum;
    double err = 0.0;  // in units of the unscaled sum
    WavenumberRule rule;
};

FreeSum phi_sum(const DimensionlessState& ds, ResponseModel model, TemperatureMode mode, TruncationPolicy policy,
                const WavenumberRule& rule, const QuadratureConfig& cfg) {
    PhiKernel kernel(medium_for(model, ds, mode), rule);
    SumRequest req;
    req.tau = ds.tau;
    req.ncomp = 4;
    req.term = [&kernel](double x) { return kernel(x); };
    req.magnitude_comps = {0, 1};
    req.policy = policy;
    FreeSum f{matsubara_sum(req, cfg), 0.0, rule};
    const auto& s = f.sum;
    const double total = std::abs(s.sum[0].value() + s.sum[1].value());
    f.err = std::abs(s.sum[0].value() - s.sum[2].value()) + std::abs(s.sum[1].value() - s.sum[3].value()) +
            s.tail[0] + s.tail[1] + s.interp_err[0] + s.interp_err[1] + 64.0 * eps * total;
    return f;
}

EnergyResult energy_from_sum(const StatePoint& state, const DimensionlessState& ds, ResponseModel model,
                             const FreeSum& f) {
    const double P = prefactor_free_energy(state);
    EnergyResult r;
    r.tm = P * f.sum.sum[0].value();
    r.te = P * f.sum.sum[1].value();
    r.value = P * (f.sum.sum[0] + f.sum.sum[1]).value();
    r.err_est = P * f.err;
    r.l_terms.reserve(f.sum.l_terms.size());
    for (const auto& t : f.sum.l_terms) r.l_terms.push_back({P * t[0], P * t[1]});
    r.l_terms_remainder = {P * f.sum.stored_remainder[0], P * f.sum.stored_remainder[1]};
    r.l_max_used = f.sum.l_max;
    r.a = state.a;
    r.T = state.T;
    r.tau = ds.tau;
    r.model = model;
    r.nodes = f.rule.size();
    r.refine_level = f.rule.level;
    r.direct_terms = f.sum.direct_terms;
    r.panels = f.sum.panels;
    r.tail_bound = P * (f.sum.tail[0] + f.sum.tail[1]);
    return r;
}

}  // namespace

EnergyResult free_energy(const StatePoint& state, const Material& mat, ResponseModel model,
                         const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(state.T > 0.0)) throw DomainError("free_energy: requires T > 0 (use zero_t_energy at T = 0)");
    const auto ds = to_dimensionless(state, mat);
    return refine_until<EnergyResult>(
        cfg,
        [&](const WavenumberRule& rule, EnergyResult& out) {
            const auto f = phi_sum(ds, model, TemperatureMode::FiniteT, cfg.l_max_policy, rule, cfg);
            out = energy_from_sum(state, ds, model, f);
            return out.err_est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
        },
        "free_energy");
}

EnergyResult zero_t_energy(double a, const Material& mat, ResponseModel model, const QuadratureConfig& cfg) {
    cfg.validate();
    const StatePoint state(a, 0.0);
    const auto ds = to_dimensionless(state, mat);
    const double P = prefactor_energy(a);
    return refine_until<EnergyResult>(
        cfg,
        [&](const WavenumberRule& rule, EnergyResult& out) {
            PhiKernel kernel(medium_for(model, ds, TemperatureMode::ZeroT), rule);
            const auto I = integrate_summand([&kernel](double x) { return kernel(x); }, 4, cfg.x_max, 1e-14);
            out = EnergyResult{};
            out.tm = P * I.value[0];
            out.te = P * I.value[1];
            out.value = out.tm + out.te;
            out.err_est = P * (std::abs(I.value[0] - I.value[2]) + std::abs(I.value[1] - I.value[3]) +
                               I.error[0] + I.error[1]) +
                          64.0 * eps * std::abs(out.value);
            out.a = a;
            out.model = model;
            out.nodes = rule.size();
            out.refine_level = rule.level;
            return out.err_est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
        },
        "zero_t_energy");
}

EntropyResult entropy_numeric(const StatePoint& state, const Material& mat, ResponseModel model,
                              const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(state.T > 0.0)) throw DomainError("entropy_numeric: requires T > 0");
    const double h = cfg.dT_frac * state.T;
    if (!(h > 0.0) || state.T + 0.5 * h == state.T || state.T - h <= 0.0)
        throw StepUnderflow("entropy_numeric: temperature step underflows");

    // the rule level that meets the tolerance at T serves all shifted temperatures
    const auto base = free_energy(state, mat, model, cfg);
    const auto rule = WavenumberRule::make(cfg, base.refine_level);

    struct Shifted {
        DoubleDouble k, g;
        double noise;
    };
    auto at = [&](double T) {
        const StatePoint s(state.a, T);
        const auto ds = to_dimensionless(s, mat);
        const auto policy = TruncationPolicy::fixed(static_cast<long>(std::floor(cfg.x_max / ds.tau)));
        const auto f = phi_sum(ds, model, TemperatureMode::FiniteT, policy, rule, cfg);
        const double P = prefactor_free_energy(s);
        const auto& o = f.sum;
        return Shifted{(o.sum[0] + o.sum[1]) * P, (o.sum[2] + o.sum[3]) * P,
                       P * (o.interp_err[0] + o.interp_err[1] + o.tail[0] + o.tail[1])};
    };
    const auto up = at(state.T + h), down = at(state.T - h);
    const auto up2 = at(state.T + 0.5 * h), down2 = at(state.T - 0.5 * h);

    auto slope = [](const DoubleDouble& a, const DoubleDouble& b, double step) {
        return -(a - b).value() / (2.0 * step);
    };
    const double s1k = slope(up.k, down.k, h), s2k = slope(up2.k, down2.k, 0.5 * h);
    const double s1g = slope(up.g, down.g, h), s2g = slope(up2.g, down2.g, 0.5 * h);
    const double rk = (4.0 * s2k - s1k) / 3.0;
    const double rg = (4.0 * s2g - s1g) / 3.0;

    EntropyResult r;
    r.value = rk;
    r.h = h;
    r.err_est = std::abs(rk - rg) + std::abs(s2k - s1k) / 3.0 + (up.noise + down.noise) / (2.0 * h) +
                (up2.noise + down2.noise) / h;
    return r;
}

}  // namespace casimir
