#pragma once

// Subcommand drivers behind the command-line tool.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int convergence = 3;
inline constexpr int verification = 4;
}  // namespace exit_code

inline constexpr int output_schema_version = 1;

struct OutputRow {
    double a = 0.0;
    double T = 0.0;
    ResponseModel model = ResponseModel::NonlocalDrude;
    double F = 0.0;
    double E0 = 0.0;
    double dF = 0.0;
    double S = 0.0;
    double F_TM = 0.0;
    double F_TE = 0.0;
    double err_est = 0.0;
    long l_max_used = 0;
    bool failed = false;
    std::string failure;
};

std::string csv_header();
std::string format_csv_row(const OutputRow& row, int precision, const std::string& config_hash);

/// Row for one grid point; ConvergenceFailure is caught and reported through `failed`.
OutputRow compute_row(double a, double T, ResponseModel model, const RunConfig& rc);

/// Grid points in output order: a outermost, then T, then model.
struct GridPoint {
    double a;
    double T;
    ResponseModel model;
};
std::vector<GridPoint> grid_points(const RunConfig& rc);

int cmd_compute(const RunConfig& rc, std::ostream& out, std::ostream& log);
int cmd_sweep(const RunConfig& rc, std::ostream& log);
int cmd_verify_nernst(const RunConfig& rc, std::ostream& out, std::ostream& log);

struct FitOptions {
    std::string input;
    std::string column = "dF_J_per_m2";
    std::optional<std::string> model;
    std::optional<double> a;
    std::optional<double> exponent;
    std::optional<double> T_min;
    std::optional<double> T_max;
};

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& log);

}  // namespace casimir
