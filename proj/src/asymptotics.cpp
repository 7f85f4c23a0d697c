#include "casimir/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace cst = constants;
using specfun::zeta;

namespace {

double perfect_b(const Material& mat, const char* what) {
    const auto* p = std::get_if<PerfectLattice>(&mat.relaxation());
    if (!p) throw DomainError(std::string(what) + ": requires a perfect-lattice material");
    return p->b;
}

void require_v_tr(const Material& mat, const char* what) {
    if (!(mat.v_tr() > 0.0)) throw DegenerateModel(std::string(what) + ": v_tr = 0");
}

void require_a(double a) {
    if (!(a > 0.0)) throw DomainError("separation must be positive");
}

}  // namespace

std::string law_name(LawLabel label) {
    switch (label) {
        case LawLabel::PerfectImplicit: return "perfect_implicit";
        case LawLabel::PerfectTotal: return "perfect_total";
        case LawLabel::PerfectEntropy: return "perfect_entropy";
        case LawLabel::PerfectExplicitL0TM: return "perfect_explicit_l0_tm";
        case LawLabel::PerfectExplicitL0TE: return "perfect_explicit_l0_te";
        case LawLabel::PerfectExplicitLge1TM: return "perfect_explicit_lge1_tm";
        case LawLabel::PerfectExplicitLge1TE: return "perfect_explicit_lge1_te";
        case LawLabel::DefectTM: return "defect_tm";
        case LawLabel::DefectTE: return "defect_te";
        case LawLabel::DefectTotal: return "defect_total";
        case LawLabel::DefectEntropy: return "defect_entropy";
    }
    return "?";
}

double AsymptoticLaw::operator()(double T) const { return amplitude * std::pow(T, exponent); }

AsymptoticLaw perfect_implicit_law(double a, const Material& mat) {
    require_a(a);
    require_v_tr(mat, "perfect_implicit_law");
    const double amp = -3.0 * cst::c * zeta(1.5).value * zeta(2.5).value * std::pow(cst::k_B, 1.5) /
                       (32.0 * cst::pi * mat.omega_p() * std::pow(a, 2.5) * std::sqrt(mat.v_tr() * cst::hbar));
    return {amp, 1.5, LawLabel::PerfectImplicit};
}

AsymptoticLaw perfect_total_law(double a, const Material& mat) {
    auto law = perfect_implicit_law(a, mat);
    law.label = LawLabel::PerfectTotal;
    return law;
}

AsymptoticLaw perfect_entropy_law(double a, const Material& mat) {
    const auto f = perfect_implicit_law(a, mat);
    return {-1.5 * f.amplitude, 0.5, LawLabel::PerfectEntropy};
}

LawPair perfect_explicit_l0_laws(double a, const Material& mat) {
    require_a(a);
    const double b = perfect_b(mat, "perfect_explicit_l0_laws");
    const double wp = mat.omega_p();
    LawPair p;
    p.tm = {cst::k_B * b * mat.v_l() * zeta(3.0).value / (4.0 * cst::pi * a * a * a * wp * wp), 3.0,
            LawLabel::PerfectExplicitL0TM};
    require_v_tr(mat, "perfect_explicit_l0_laws");
    p.te = {3.0 * cst::k_B * std::sqrt(b) * cst::c * zeta(2.5).value /
                (16.0 * std::sqrt(2.0 * cst::pi) * std::pow(a, 2.5) * wp * std::sqrt(mat.v_tr())),
            2.0, LawLabel::PerfectExplicitL0TE};
    return p;
}

LawPair perfect_explicit_lge1_laws(double a, const Material& mat) {
    require_a(a);
    const double b = perfect_b(mat, "perfect_explicit_lge1_laws");
    const double wp = mat.omega_p();
    LawPair p;
    p.tm = {cst::hbar * cst::c * b * mat.v_l() * zeta(3.0).value /
                (8.0 * cst::pi * cst::pi * std::pow(a, 4) * wp * wp),
            2.0, LawLabel::PerfectExplicitLge1TM};
    require_v_tr(mat, "perfect_explicit_lge1_laws");
    // v_tr enters as the ratio v_tr / c, omega_p dimensional
    p.te = {3.0 * cst::hbar * cst::c * b * zeta(2.5).value /
                (64.0 * cst::pi * a * a * a * std::sqrt(mat.v_tr() / cst::c) * wp),
            2.0, LawLabel::PerfectExplicitLge1TE};
    return p;
}

SeriesValue drude_entropy_zero(double a, const Material& mat) {
    require_a(a);
    const double kappa = cst::c / (mat.omega_p() * a);
    SeriesValue s;
    s.value = -cst::k_B * zeta(3.0).value / (16.0 * cst::pi * a * a) * (1.0 - 4.0 * kappa + 12.0 * kappa * kappa);
    if (kappa > 0.3) {
        s.warning = true;
        s.note = "c/(omega_p a) = " + std::to_string(kappa) + " > 0.3, truncated series unreliable";
    }
    return s;
}

DefectLaws defect_laws(double a, const Material& mat) {
    require_a(a);
    const auto* d = std::get_if<DefectLattice>(&mat.relaxation());
    if (!d) throw DomainError("defect_laws: requires a defect-lattice material");
    const double g0 = d->gamma0;
    if (!(g0 > 0.0)) throw DegenerateModel("defect_laws: gamma0 = 0");
    require_v_tr(mat, "defect_laws");
    const double wp = mat.omega_p();
    const double v = mat.v_tr();
    const double kb2 = cst::k_B * cst::k_B;
    DefectLaws L;
    L.tm = {-kb2 / (12.0 * a * a * cst::hbar * wp * wp) *
                (g0 * cst::pi * cst::pi / 6.0 + mat.v_l() * zeta(3.0).value / a),
            2.0, LawLabel::DefectTM};
    const double bracket = 1.5 * zeta(2.5).value - 2.0 * a * g0 / v * zeta(1.5).value;
    const double te_scale =
        std::sqrt(cst::pi) * cst::c * kb2 / (std::pow(a, 2.5) * cst::hbar * wp * std::sqrt(2.0 * g0 * v));
    L.te = {-te_scale / 48.0 * bracket, 2.0, LawLabel::DefectTE};
    L.total = {L.tm.amplitude + L.te.amplitude, 2.0, LawLabel::DefectTotal};
    L.entropy = {te_scale / 24.0 * bracket, 1.0, LawLabel::DefectEntropy};
    return L;
}

double defect_sign_change_separation(const Material& mat) {
    const auto* d = std::get_if<DefectLattice>(&mat.relaxation());
    if (!d || !(d->gamma0 > 0.0)) throw DegenerateModel("defect_sign_change_separation: gamma0 = 0");
    return 3.0 * zeta(2.5).value * mat.v_tr() / (4.0 * zeta(1.5).value * d->gamma0);
}

FitReport fit_power_law(const std::vector<Sample>& samples, std::optional<double> expected_exponent) {
    const auto n = samples.size();
    if (n < 5) throw InsufficientData("fit_power_law: at least 5 samples required");
    const bool negative = samples.front().value < 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = samples[i];
        if (!(s.T > 0.0) || !std::isfinite(s.value) || s.value == 0.0)
            throw DomainError("fit_power_law: samples need T > 0 and a finite nonzero value");
        if ((s.value < 0.0) != negative) throw SignMixture("fit_power_law: values change sign");
        if (i > 0 && !(s.T > samples[i - 1].T)) throw DomainError("fit_power_law: T must be strictly increasing");
    }
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = std::log(samples[i].T);
        y(i) = std::log(std::abs(samples[i].value));
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = y - A * coef;
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    const double ss_res = resid.squaredNorm();

    FitReport r;
    r.samples = n;
    r.fitted_exponent = coef(1);
    r.fitted_amplitude = (negative ? -1.0 : 1.0) * std::exp(coef(0));
    r.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    r.residual_max = resid.cwiseAbs().maxCoeff();
    r.window = {samples.front().T, samples.back().T};
    if (expected_exponent) {
        const double p = *expected_exponent;
        const double ln_amp = (y - p * A.col(1)).mean();
        r.pinned_amplitude = (negative ? -1.0 : 1.0) * std::exp(ln_amp);
    }
    return r;
}

}  // namespace casimir
