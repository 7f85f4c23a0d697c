#pragma once

// Low-temperature law checks: numeric sweeps, fit windows and PASS/FAIL reports.

#include <optional>
#include <string>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

struct LawCheck {
    std::string name;
    double expected_exponent = 0.0;
    double fitted_exponent = 0.0;
    double exponent_tol = 0.0;     // absolute; negative disables the exponent test
    double expected_amplitude = 0.0;
    double fitted_amplitude = 0.0; // at the expected exponent
    double amplitude_tol = 0.0;    // relative
    double T_lo = 0.0, T_hi = 0.0;
    std::size_t samples = 0;
    bool pass = false;
    std::string note;

    double amplitude_ratio() const { return expected_amplitude != 0.0 ? fitted_amplitude / expected_amplitude : 0.0; }
};

struct VerifyOptions {
    QuadratureConfig cfg;
    std::size_t samples = 7;
    // window for laws without an automatic one, in tau = 4 pi k_B T a / (hbar c)
    double tau_lo = 1e-5;
    double tau_hi = 1e-3;
    // defect lattice: window as fractions of 2 a gamma0 / c
    double defect_lo = 0.01;
    double defect_hi = 0.1;
    double subleading_frac = 0.01;
    double error_floor = 0.01;
};

struct NernstReport {
    std::vector<LawCheck> checks;
    std::vector<std::string> notes;
    bool passed() const;
    const LawCheck* find(const std::string& name) const;
};

std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Highest T at which sum |sub(T)| stays below frac |lead(T)| (power laws, bisection in ln T).
double policy_t_max(const AsymptoticLaw& lead, const std::vector<AsymptoticLaw>& sub, double frac, double T_guess);

struct ErrSample {
    double T = 0.0;
    double value = 0.0;
    double err = 0.0;
};

/// Fits samples whose err/|value| is below `floor` and compares with the law.
LawCheck check_power_law(const std::string& name, const std::vector<ErrSample>& samples, const AsymptoticLaw& law,
                         double exponent_tol, double amplitude_tol, double floor);

/// Value at T = 0 of a least-squares quadratic in T.
double extrapolate_to_zero(const std::vector<ErrSample>& samples);

NernstReport verify_perfect_nonlocal(double a, const Material& mat, const VerifyOptions& opt);
NernstReport verify_drude_entropy(double a, const Material& mat, const VerifyOptions& opt);
NernstReport verify_defect(double a, const Material& mat, const VerifyOptions& opt);
NernstReport verify_vanishing_entropy(double a, const Material& mat, ResponseModel model, const VerifyOptions& opt);

/// Dispatches on model and relaxation to the checks above.
NernstReport verify_nernst(double a, const Material& mat, ResponseModel model, const VerifyOptions& opt);

std::string format_check(const LawCheck& c);

}  // namespace casimir
