#include "casimir/verification.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "casimir/errors.hpp"
#include "casimir/thermal.hpp"

namespace casimir {

namespace {

LawCheck flag_check(const std::string& name, bool pass, std::string note) {
    LawCheck c;
    c.name = name;
    c.exponent_tol = -1.0;
    c.pass = pass;
    c.note = std::move(note);
    return c;
}

std::string num(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<double> temperatures(double a, double tau_lo, double tau_hi, std::size_t n) {
    std::vector<double> T;
    for (double tau : log_grid(tau_lo, tau_hi, n)) T.push_back(temperature_for_tau(tau, a));
    return T;
}

// entropy of the correction -A T^p is p A T^(p-1) with the sign flipped
AsymptoticLaw entropy_of(const AsymptoticLaw& f) { return {-f.exponent * f.amplitude, f.exponent - 1.0, f.label}; }

bool all_positive(const std::vector<ErrSample>& s) {
    return std::all_of(s.begin(), s.end(), [](const ErrSample& e) { return e.value > 0.0; });
}

}  // namespace

bool NernstReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.pass; });
}

const LawCheck* NernstReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw DomainError("log_grid: need 0 < lo <= hi and n > 0");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return g;
}

double policy_t_max(const AsymptoticLaw& lead, const std::vector<AsymptoticLaw>& sub, double frac, double T_guess) {
    auto ratio = [&](double T) {
        double s = 0.0;
        for (const auto& l : sub) s += std::abs(l(T));
        return s / std::abs(lead(T));
    };
    double lo = T_guess, hi = T_guess;
    while (ratio(lo) > frac) lo /= 2.0;
    while (ratio(hi) < frac && hi < 1e6) hi *= 2.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = std::sqrt(lo * hi);
        (ratio(mid) < frac ? lo : hi) = mid;
    }
    return lo;
}

LawCheck check_power_law(const std::string& name, const std::vector<ErrSample>& samples, const AsymptoticLaw& law,
                         double exponent_tol, double amplitude_tol, double floor) {
    LawCheck c;
    c.name = name;
    c.expected_exponent = law.exponent;
    c.expected_amplitude = law.amplitude;
    c.exponent_tol = exponent_tol;
    c.amplitude_tol = amplitude_tol;
    std::vector<Sample> kept;
    for (const auto& s : samples)
        if (s.value != 0.0 && s.err <= floor * std::abs(s.value)) kept.push_back({s.T, s.value});
    c.samples = kept.size();
    try {
        const auto fit = fit_power_law(kept, law.exponent);
        c.fitted_exponent = fit.fitted_exponent;
        c.fitted_amplitude = *fit.pinned_amplitude;
        c.T_lo = fit.window.first;
        c.T_hi = fit.window.second;
        const bool exp_ok = std::abs(c.fitted_exponent - c.expected_exponent) <= exponent_tol;
        const bool amp_ok = std::abs(c.amplitude_ratio() - 1.0) <= amplitude_tol;
        c.pass = exp_ok && amp_ok;
        if (fit.r_squared < 0.999) c.note = "r^2 = " + num(fit.r_squared, 6);
    } catch (const SignMixture&) {
        c.note = "values change sign";
    } catch (const InsufficientData&) {
        c.note = "fewer than 5 samples above the error floor";
    }
    return c;
}

double extrapolate_to_zero(const std::vector<ErrSample>& samples) {
    if (samples.size() < 3) throw InsufficientData("extrapolate_to_zero: at least 3 samples required");
    const auto n = static_cast<Eigen::Index>(samples.size());
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, s.T);
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = samples[i].T / scale;
        A(i, 0) = 1.0;
        A(i, 1) = t;
        A(i, 2) = t * t;
        y(i) = samples[i].value;
    }
    return A.colPivHouseholderQr().solve(y)(0);
}

NernstReport verify_perfect_nonlocal(double a, const Material& mat, const VerifyOptions& opt) {
    if (!std::holds_alternative<PerfectLattice>(mat.relaxation()))
        throw DomainError("verify_perfect_nonlocal: requires a perfect-lattice material");
    const auto& cfg = opt.cfg;
    const auto model = ResponseModel::NonlocalDrude;
    NernstReport rep;

    const auto imp_law = perfect_implicit_law(a, mat);
    const auto l0 = perfect_explicit_l0_laws(a, mat);
    const auto l1 = perfect_explicit_lge1_laws(a, mat);

    std::vector<ErrSample> imp, s_l0_tm, s_l0_te, s_l1_tm, s_l1_te, entropy;
    for (double T : temperatures(a, opt.tau_lo, opt.tau_hi, opt.samples)) {
        const StatePoint st(a, T);
        const auto i = implicit_correction(st, mat, model, cfg);
        const auto e = explicit_correction(st, mat, model, cfg);
        const auto s = entropy_numeric(st, mat, model, cfg);
        imp.push_back({T, i.value, i.err});
        s_l0_tm.push_back({T, e.l0.tm, e.l0_err.tm});
        s_l0_te.push_back({T, e.l0.te, e.l0_err.te});
        s_l1_tm.push_back({T, e.lge1.tm, e.lge1_err.tm});
        s_l1_te.push_back({T, e.lge1.te, e.lge1_err.te});
        entropy.push_back({T, s.value, s.err_est});
    }
    rep.checks.push_back(check_power_law("perfect_implicit", imp, imp_law, 0.05, 0.10, opt.error_floor));
    rep.checks.push_back(check_power_law("perfect_explicit_l0_tm", s_l0_tm, l0.tm, 0.1, 0.10, opt.error_floor));
    rep.checks.push_back(check_power_law("perfect_explicit_l0_te", s_l0_te, l0.te, 0.05, 0.10, opt.error_floor));
    rep.checks.push_back(check_power_law("perfect_explicit_lge1_tm", s_l1_tm, l1.tm, 0.05, 0.15, opt.error_floor));
    rep.checks.push_back(check_power_law("perfect_explicit_lge1_te", s_l1_te, l1.te, 0.05, 0.15, opt.error_floor));
    rep.checks.push_back(flag_check("perfect_entropy_positive", all_positive(entropy),
                                    "T in [" + num(entropy.front().T) + ", " + num(entropy.back().T) + "] K"));

    // total correction and entropy: window closes where the T^2 terms reach the leading term
    const std::vector<AsymptoticLaw> sub{l0.tm, l0.te, l1.tm, l1.te};
    const double T_guess = temperature_for_tau(opt.tau_lo, a);
    const auto total_law = perfect_total_law(a, mat);
    const double Tf = policy_t_max(total_law, sub, opt.subleading_frac, T_guess);
    std::vector<ErrSample> total;
    for (double T : log_grid(Tf / 4.0, Tf, opt.samples)) {
        const auto b = thermal_correction(StatePoint(a, T), mat, model, cfg);
        total.push_back({T, b.total, b.err_est});
    }
    rep.checks.push_back(check_power_law("perfect_total", total, total_law, 0.05, 0.10, opt.error_floor));

    std::vector<AsymptoticLaw> sub_s;
    for (const auto& l : sub) sub_s.push_back(entropy_of(l));
    const auto s_law = perfect_entropy_law(a, mat);
    const double Ts = policy_t_max(s_law, sub_s, opt.subleading_frac, T_guess);
    std::vector<ErrSample> s_win;
    for (double T : log_grid(Ts / 4.0, Ts, opt.samples)) {
        const auto s = entropy_numeric(StatePoint(a, T), mat, model, cfg);
        s_win.push_back({T, s.value, s.err_est});
    }
    rep.checks.push_back(check_power_law("perfect_entropy", s_win, s_law, 0.05, 0.02, opt.error_floor));
    return rep;
}

NernstReport verify_drude_entropy(double a, const Material& mat, const VerifyOptions& opt) {
    NernstReport rep;
    const auto law = drude_entropy_zero(a, mat);
    if (law.warning) rep.notes.push_back(law.note);
    std::vector<ErrSample> s;
    for (double T : temperatures(a, opt.tau_lo, opt.tau_hi, opt.samples)) {
        const auto e = entropy_numeric(StatePoint(a, T), mat, ResponseModel::LocalDrude, opt.cfg);
        s.push_back({T, e.value, e.err_est});
    }
    LawCheck c;
    c.name = "drude_entropy_zero";
    c.exponent_tol = -1.0;
    c.expected_amplitude = law.value;
    c.fitted_amplitude = extrapolate_to_zero(s);
    c.amplitude_tol = 0.05;
    c.T_lo = s.front().T;
    c.T_hi = s.back().T;
    c.samples = s.size();
    c.pass = c.fitted_amplitude < 0.0 && std::abs(c.amplitude_ratio() - 1.0) <= c.amplitude_tol;
    c.note = "entropy at T -> 0, J/(K m^2)";
    rep.checks.push_back(c);
    return rep;
}

NernstReport verify_defect(double a, const Material& mat, const VerifyOptions& opt) {
    const auto L = defect_laws(a, mat);
    const auto& cfg = opt.cfg;
    const auto model = ResponseModel::NonlocalDrude;
    const double g0 = to_dimensionless(StatePoint(a, 0.0), mat).gamma_zero_t;
    NernstReport rep;
    std::vector<ErrSample> total, entropy;
    double worst_share = 0.0;
    for (double T : temperatures(a, opt.defect_lo * g0, opt.defect_hi * g0, opt.samples)) {
        const StatePoint st(a, T);
        const auto b = thermal_correction(st, mat, model, cfg);
        const auto s = entropy_numeric(st, mat, model, cfg);
        total.push_back({T, b.total, b.err_est});
        entropy.push_back({T, s.value, s.err_est});
        // TM below its error bar counts as no share
        const double tm = std::max(0.0, std::abs(b.implicit_parts.tm) - b.err_est);
        worst_share = std::max(worst_share, tm / std::abs(b.implicit_parts.te));
    }
    rep.checks.push_back(check_power_law("defect_total", total, L.total, 0.05, 0.10, opt.error_floor));
    rep.checks.push_back(check_power_law("defect_entropy", entropy, L.entropy, 0.05, 0.10, opt.error_floor));
    const double a_star = defect_sign_change_separation(mat);
    const bool below = a < a_star;
    const bool sign_ok = below ? all_positive(entropy)
                               : std::all_of(entropy.begin(), entropy.end(), [](const ErrSample& e) { return e.value < 0.0; });
    rep.checks.push_back(flag_check("defect_entropy_sign", sign_ok,
                                    std::string(below ? "positive" : "negative") + " expected, a = " + num(a) +
                                        " m, sign change at " + num(a_star) + " m"));
    rep.checks.push_back(flag_check("defect_te_dominance", worst_share < 0.05,
                                    "max TM/TE share " + num(worst_share) + ", law ratio " +
                                        num(std::abs(L.tm.amplitude / L.te.amplitude))));
    return rep;
}

NernstReport verify_vanishing_entropy(double a, const Material& mat, ResponseModel model, const VerifyOptions& opt) {
    NernstReport rep;
    std::vector<ErrSample> s;
    for (double T : temperatures(a, opt.tau_lo, opt.tau_hi, opt.samples)) {
        const auto e = entropy_numeric(StatePoint(a, T), mat, model, opt.cfg);
        s.push_back({T, e.value, e.err_est});
    }
    const double first = std::abs(s.front().value) + s.front().err;
    const double last = std::abs(s.back().value);
    LawCheck c = flag_check("entropy_vanishes", first < 0.1 * last,
                            "|S| from " + num(last) + " to " + num(s.front().value) + " J/(K m^2) over T in [" +
                                num(s.front().T) + ", " + num(s.back().T) + "] K");
    c.samples = s.size();
    c.T_lo = s.front().T;
    c.T_hi = s.back().T;
    rep.checks.push_back(c);
    if (model == ResponseModel::Plasma || model == ResponseModel::IdealMetal)
        rep.notes.push_back("no relaxation in this model; the entropy has no gamma(T) contribution");
    return rep;
}

NernstReport verify_nernst(double a, const Material& mat, ResponseModel model, const VerifyOptions& opt) {
    const bool perfect = std::holds_alternative<PerfectLattice>(mat.relaxation());
    const bool defect = std::holds_alternative<DefectLattice>(mat.relaxation());
    if (model == ResponseModel::NonlocalDrude && perfect && mat.v_tr() > 0.0) return verify_perfect_nonlocal(a, mat, opt);
    if (model == ResponseModel::NonlocalDrude && defect && mat.v_tr() > 0.0) return verify_defect(a, mat, opt);
    if (model == ResponseModel::LocalDrude && perfect) return verify_drude_entropy(a, mat, opt);
    return verify_vanishing_entropy(a, mat, model, opt);
}

std::string format_check(const LawCheck& c) {
    std::string s = (c.pass ? "PASS " : "FAIL ") + c.name;
    if (c.exponent_tol >= 0.0)
        s += " exponent " + num(c.fitted_exponent, 5) + " (expected " + num(c.expected_exponent) + " +- " +
             num(c.exponent_tol) + ")";
    if (c.expected_amplitude != 0.0)
        s += " amplitude " + num(c.fitted_amplitude, 6) + " vs " + num(c.expected_amplitude, 6) + " (ratio " +
             num(c.amplitude_ratio(), 5) + ", tol " + num(c.amplitude_tol) + ")";
    if (c.samples > 0) s += " T [" + num(c.T_lo) + ", " + num(c.T_hi) + "] K n=" + std::to_string(c.samples);
    if (!c.note.empty()) s += " " + c.note;
    return s;
}

}  // namespace casimir
