#include "casimir/commands.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/thermal.hpp"
#include "json.hpp"

namespace casimir {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string> columns{"a_m",    "T_K",  "model", "F_J_per_m2", "E0_J_per_m2", "dF_J_per_m2",
                                       "S_J_per_K_m2", "F_TM", "F_TE",  "err_est",    "l_max_used",  "config_hash"};

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
    return buf;
}

// value as printed, so JSON and CSV carry the same digits
ojson json_number(double v, int precision) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(fmt(v, precision).c_str(), nullptr);
}

ojson metadata(const RunConfig& rc) {
    ojson m;
    m["schema_version"] = output_schema_version;
    m["config_hash"] = rc.hash;
    m["constants"] = constants::table;
    m["constants_hash"] = fnv1a_hex(constants::table);
    ojson cfg = ojson::array();
    std::istringstream in(rc.echo);
    for (std::string line; std::getline(in, line);) cfg.push_back(line);
    m["config"] = cfg;
    m["columns"] = columns;
    return m;
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

void write_atomic(const fs::path& path, const std::string& content) {
    ensure_parent(path);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw ConfigError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

ojson row_json(const OutputRow& r, int p, const std::string& hash) {
    ojson j;
    j["a_m"] = json_number(r.a, p);
    j["T_K"] = json_number(r.T, p);
    j["model"] = model_name(r.model);
    j["F_J_per_m2"] = json_number(r.F, p);
    j["E0_J_per_m2"] = json_number(r.E0, p);
    j["dF_J_per_m2"] = json_number(r.dF, p);
    j["S_J_per_K_m2"] = json_number(r.S, p);
    j["F_TM"] = json_number(r.F_TM, p);
    j["F_TE"] = json_number(r.F_TE, p);
    j["err_est"] = json_number(r.err_est, p);
    j["l_max_used"] = r.l_max_used;
    j["config_hash"] = hash;
    if (r.failed) j["failure"] = r.failure;
    return j;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

std::string csv_header() {
    std::string h;
    for (std::size_t i = 0; i < columns.size(); ++i) h += (i ? "," : "") + columns[i];
    return h + "\n";
}

std::string format_csv_row(const OutputRow& r, int p, const std::string& hash) {
    std::string s;
    for (double v : {r.a, r.T}) s += fmt(v, p) + ",";
    s += model_name(r.model) + ",";
    for (double v : {r.F, r.E0, r.dF, r.S, r.F_TM, r.F_TE, r.err_est}) s += fmt(v, p) + ",";
    s += std::to_string(r.l_max_used) + "," + hash + "\n";
    return s;
}

std::vector<GridPoint> grid_points(const RunConfig& rc) {
    std::vector<GridPoint> g;
    for (double a : rc.a)
        for (double T : rc.T)
            for (auto m : rc.models) g.push_back({a, T, m});
    return g;
}

OutputRow compute_row(double a, double T, ResponseModel model, const RunConfig& rc) {
    OutputRow r;
    r.a = a;
    r.T = T;
    r.model = model;
    const double nan = std::nan("");
    try {
        const StatePoint st(a, T);
        const auto F = free_energy(st, rc.material, model, rc.quad);
        const auto E = zero_t_energy(a, rc.material, model, rc.quad);
        const auto d = thermal_correction(st, rc.material, model, rc.quad);
        r.F = F.value;
        r.F_TM = F.tm;
        r.F_TE = F.te;
        r.E0 = E.value;
        r.dF = d.total;
        r.err_est = F.err_est;
        r.l_max_used = F.l_max_used;
        r.S = rc.output.entropy ? entropy_numeric(st, rc.material, model, rc.quad).value : nan;
    } catch (const ConvergenceFailure& e) {
        r = OutputRow{a, T, model, nan, nan, nan, nan, nan, nan, nan, 0, true, e.what()};
    } catch (const StepUnderflow& e) {
        r = OutputRow{a, T, model, nan, nan, nan, nan, nan, nan, nan, 0, true, e.what()};
    }
    return r;
}

int cmd_compute(const RunConfig& rc, std::ostream& out, std::ostream& log) {
    std::vector<OutputRow> rows;
    bool failed = false;
    for (const auto& g : grid_points(rc)) {
        rows.push_back(compute_row(g.a, g.T, g.model, rc));
        if (rows.back().failed) {
            failed = true;
            log << "convergence failure at a=" << g.a << " m, T=" << g.T << " K, model=" << model_name(g.model)
                << ": " << rows.back().failure << "\n";
        }
    }
    const int p = rc.output.precision;
    std::string body;
    if (rc.output.format == "json") {
        ojson doc = metadata(rc);
        ojson arr = ojson::array();
        for (const auto& r : rows) arr.push_back(row_json(r, p, rc.hash));
        doc["rows"] = arr;
        body = doc.dump(2) + "\n";
    } else {
        body = csv_header();
        for (const auto& r : rows) body += format_csv_row(r, p, rc.hash);
    }
    if (rc.output.path.empty()) {
        out << body;
    } else {
        write_atomic(rc.output.path, body);
        if (rc.output.format == "csv") write_atomic(rc.output.path + ".meta.json", metadata(rc).dump(2) + "\n");
    }
    return failed ? exit_code::convergence : exit_code::ok;
}

int cmd_sweep(const RunConfig& rc, std::ostream& log) {
    if (rc.output.path.empty()) throw ConfigError("sweep needs output.path for its checkpoint file");
    if (rc.output.format != "csv") throw ConfigError("sweep writes csv; set output.format = csv");
    const fs::path path = rc.output.path;
    const auto points = grid_points(rc);
    const std::string header = csv_header();
    ensure_parent(path);

    // resume: keep every complete row, drop a torn trailing line
    std::size_t done = 0;
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto keep = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
        content.resize(keep);
        if (!content.empty()) {
            if (content.compare(0, header.size(), header) != 0)
                throw ConfigError("'" + path.string() + "' exists with a different header");
            std::istringstream lines(content.substr(header.size()));
            for (std::string line; std::getline(lines, line);) {
                const auto cells = split_csv(line);
                if (cells.size() != columns.size() || cells.back() != rc.hash)
                    throw ConfigError("'" + path.string() + "' holds rows from another configuration");
                ++done;
            }
            if (done > points.size()) throw ConfigError("'" + path.string() + "' has more rows than the grid");
        }
        fs::resize_file(path, keep);
        if (done > 0) log << "resuming after " << done << " of " << points.size() << " rows\n";
    }
    write_atomic(path.string() + ".meta.json", metadata(rc).dump(2) + "\n");

    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) throw ConfigError("cannot open '" + path.string() + "': " + std::strerror(errno));
    auto append = [&](const std::string& s) {
        // one write per row, then flush to disk, so a kill leaves at most one torn line
        if (::write(fd, s.data(), s.size()) != static_cast<ssize_t>(s.size()) || ::fsync(fd) != 0) {
            ::close(fd);
            throw ConfigError("write failed for '" + path.string() + "'");
        }
    };
    if (fs::file_size(path) == 0) append(header);
    bool failed = false;
    for (std::size_t i = done; i < points.size(); ++i) {
        const auto& g = points[i];
        const auto row = compute_row(g.a, g.T, g.model, rc);
        if (row.failed) {
            failed = true;
            log << "convergence failure at a=" << g.a << " m, T=" << g.T << " K, model=" << model_name(g.model)
                << ": " << row.failure << "\n";
        }
        append(format_csv_row(row, rc.output.precision, rc.hash));
    }
    ::close(fd);
    return failed ? exit_code::convergence : exit_code::ok;
}

int cmd_verify_nernst(const RunConfig& rc, std::ostream& out, std::ostream& log) {
    std::ostringstream report;
    bool all = true;
    for (auto model : rc.models) {
        for (double a : rc.a) {
            NernstReport rep;
            try {
                rep = verify_nernst(a, rc.material, model, rc.verify);
            } catch (const ConvergenceFailure& e) {
                log << "convergence failure: " << e.what() << "\n";
                return exit_code::convergence;
            }
            report << "# model=" << model_name(model) << " relaxation=" << relaxation_name(rc.material.relaxation())
                   << " a=" << fmt(a, 6) << " m\n";
            for (const auto& n : rep.notes) report << "# note: " << n << "\n";
            for (const auto& c : rep.checks) report << format_check(c) << "\n";
            all = all && rep.passed();
        }
    }
    report << (all ? "RESULT PASS\n" : "RESULT FAIL\n");
    out << report.str();
    if (!rc.output.path.empty()) write_atomic(rc.output.path, report.str());
    return all ? exit_code::ok : exit_code::verification;
}

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& log) {
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + opt.input + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + opt.input + "' is empty");
    const auto head = split_csv(line);
    auto col = [&](const std::string& name) {
        auto it = std::find(head.begin(), head.end(), name);
        if (it == head.end()) throw ConfigError("column '" + name + "' not found in '" + opt.input + "'");
        return static_cast<std::size_t>(it - head.begin());
    };
    const auto ci = col(opt.column), ti = col("T_K"), ai = col("a_m"), mi = col("model");
    std::map<double, double> by_T;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != head.size()) throw ConfigError("malformed row", line_no, 1);
        if (opt.model && cells[mi] != *opt.model) continue;
        const double a = std::strtod(cells[ai].c_str(), nullptr);
        if (opt.a && std::abs(a - *opt.a) > 1e-9 * std::abs(*opt.a)) continue;
        const double T = std::strtod(cells[ti].c_str(), nullptr);
        if (opt.T_min && T < *opt.T_min) continue;
        if (opt.T_max && T > *opt.T_max) continue;
        const double v = std::strtod(cells[ci].c_str(), nullptr);
        if (!std::isfinite(v)) continue;
        if (by_T.count(T)) throw ConfigError("several rows at T=" + cells[ti] + "; select one model and separation");
        by_T[T] = v;
    }
    std::vector<Sample> samples;
    for (const auto& [T, v] : by_T) samples.push_back({T, v});
    FitReport r;
    try {
        r = fit_power_law(samples, opt.exponent);
    } catch (const DomainError& e) {
        log << "fit failed: " << e.what() << "\n";
        return exit_code::verification;
    }
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "column %s\nsamples %zu\nwindow_K %.6e %.6e\nexponent %.8g\namplitude %.8e\nr_squared %.10f\n"
                  "residual_max %.3e\n",
                  opt.column.c_str(), r.samples, r.window.first, r.window.second, r.fitted_exponent,
                  r.fitted_amplitude, r.r_squared, r.residual_max);
    out << buf;
    if (r.pinned_amplitude) {
        std::snprintf(buf, sizeof buf, "pinned_exponent %.8g\npinned_amplitude %.8e\n", *opt.exponent,
                      *r.pinned_amplitude);
        out << buf;
    }
    return exit_code::ok;
}

}  // namespace casimir
