#pragma once

// Closed-form low-temperature laws (value = amplitude * T^exponent, T in kelvin,
// SI amplitudes) and a log-log power-law fit.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/params.hpp"

namespace casimir {

enum class LawLabel {
    PerfectImplicit,
    PerfectTotal,
    PerfectEntropy,
    PerfectExplicitL0TM,
    PerfectExplicitL0TE,
    PerfectExplicitLge1TM,
    PerfectExplicitLge1TE,
    DefectTM,
    DefectTE,
    DefectTotal,
    DefectEntropy,
};

std::string law_name(LawLabel label);

struct AsymptoticLaw {
    double amplitude = 0.0;
    double exponent = 0.0;
    LawLabel label = LawLabel::PerfectImplicit;

    double operator()(double T) const;
};

struct LawPair {
    AsymptoticLaw tm;
    AsymptoticLaw te;
};

/// Leading T^{3/2} implicit correction for the nonlocal response (TE branch point).
AsymptoticLaw perfect_implicit_law(double a, const Material& mat);
LawPair perfect_explicit_l0_laws(double a, const Material& mat);
LawPair perfect_explicit_lge1_laws(double a, const Material& mat);
AsymptoticLaw perfect_total_law(double a, const Material& mat);
AsymptoticLaw perfect_entropy_law(double a, const Material& mat);

struct SeriesValue {
    double value = 0.0;
    bool warning = false;  // truncated series outside its reliable range
    std::string note;
};

/// Zero-temperature limit of the local Drude entropy, three series terms in c/(omega_p a).
SeriesValue drude_entropy_zero(double a, const Material& mat);

struct DefectLaws {
    AsymptoticLaw tm;
    AsymptoticLaw te;
    AsymptoticLaw total;
    AsymptoticLaw entropy;
};

DefectLaws defect_laws(double a, const Material& mat);

/// Separation at which the defect-lattice entropy amplitude changes sign.
double defect_sign_change_separation(const Material& mat);

struct FitReport {
    double fitted_exponent = 0.0;
    double fitted_amplitude = 0.0;  // signed
    double r_squared = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    double residual_max = 0.0;      // max |ln residual|
    std::optional<double> pinned_amplitude;
    std::size_t samples = 0;
};

struct Sample {
    double T = 0.0;
    double value = 0.0;
};

/// OLS on (ln T, ln |value|); with expected_exponent also the amplitude at that exponent.
FitReport fit_power_law(const std::vector<Sample>& samples, std::optional<double> expected_exponent = {});

}  // namespace casimir
