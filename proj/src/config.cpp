#include "casimir/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"material", {"omega_p", "relaxation", "b", "gamma0", "T0", "v_tr", "v_l"}},
        {"geometry", {"a", "a_log"}},
        {"temperature", {"T", "T_log"}},
        {"model", {"models"}},
        {"quadrature",
         {"rel_tol", "abs_tol", "max_nodes", "l_max", "tail_rel_tol", "dT_frac", "exact_terms", "cheb_order",
          "interpolate", "x_max", "u_min", "refine"}},
        {"output", {"format", "path", "precision", "entropy"}},
        {"verify",
         {"samples", "tau_lo", "tau_hi", "defect_lo", "defect_hi", "subleading_frac", "error_floor"}},
    };
    return s;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& key, const std::string& what) {
    if (e.line == 0) throw ConfigError("--set " + key + ": " + what);
    throw ConfigError(key + ": " + what, e.line, e.column);
}

class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    const ConfigEntry* find(const std::string& sec, const std::string& key) const {
        auto s = doc_.sections.find(sec);
        if (s == doc_.sections.end()) return nullptr;
        auto e = s->second.entries.find(key);
        return e == s->second.entries.end() ? nullptr : &e->second;
    }

    const ConfigEntry& require(const std::string& sec, const std::string& key) const {
        if (const auto* e = find(sec, key)) return *e;
        auto s = doc_.sections.find(sec);
        if (s == doc_.sections.end())
            throw ConfigError("missing section [" + sec + "] with required key '" + key + "'", doc_.last_line + 1, 1);
        throw ConfigError("missing required key '" + key + "' in [" + sec + "]", s->second.line, 1);
    }

    [[noreturn]] void missing_one_of(const std::string& sec, const std::string& k1, const std::string& k2) const {
        auto s = doc_.sections.find(sec);
        const int line = s == doc_.sections.end() ? doc_.last_line + 1 : s->second.line;
        throw ConfigError("[" + sec + "] needs '" + k1 + "' or '" + k2 + "'", line, 1);
    }

private:
    const ConfigDocument& doc_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

double to_number(const std::string& text, const ConfigEntry& e, const std::string& key) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || !std::isfinite(v))
        fail(e, key, "expected a number, got '" + text + "'");
    return v;
}

double number(const ConfigEntry& e, const std::string& key) { return to_number(trim(e.value), e, key); }

long integer(const ConfigEntry& e, const std::string& key) {
    const double v = number(e, key);
    if (v != std::floor(v) || std::abs(v) > 1e15) fail(e, key, "expected an integer");
    return static_cast<long>(v);
}

bool boolean(const ConfigEntry& e, const std::string& key) {
    const auto v = trim(e.value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(e, key, "expected true or false");
}

// number with an optional unit tag; factor converts to SI
double with_unit(const std::string& text, const ConfigEntry& e, const std::string& key,
                 const std::map<std::string, double>& units, const std::string& default_unit) {
    const auto w = words(text);
    if (w.empty() || w.size() > 2) fail(e, key, "expected '<number> [unit]'");
    const std::string unit = w.size() == 2 ? w[1] : default_unit;
    auto u = units.find(unit);
    if (u == units.end()) {
        std::string allowed;
        for (const auto& [name, f] : units) allowed += (allowed.empty() ? "" : ", ") + name;
        fail(e, key, "unknown unit '" + unit + "' (allowed: " + allowed + ")");
    }
    return to_number(w[0], e, key) * u->second;
}

const std::map<std::string, double> length_units{{"m", 1.0}, {"um", 1e-6}, {"nm", 1e-9}};
const std::map<std::string, double> temperature_units{{"K", 1.0}, {"mK", 1e-3}};

std::vector<double> grid(const Reader& r, const std::string& sec, const std::string& list_key,
                         const std::string& log_key, const std::map<std::string, double>& units,
                         const std::string& unit) {
    const auto* list = r.find(sec, list_key);
    const auto* log = r.find(sec, log_key);
    if (list && log) fail(*log, log_key, "give either '" + list_key + "' or '" + log_key + "', not both");
    std::vector<double> g;
    if (list) {
        for (const auto& item : split(list->value, ',')) g.push_back(with_unit(item, *list, list_key, units, unit));
    } else if (log) {
        // lo, hi, count
        const auto parts = split(log->value, ',');
        if (parts.size() != 3) fail(*log, log_key, "expected 'lo [unit], hi [unit], count'");
        const double lo = with_unit(parts[0], *log, log_key, units, unit);
        const double hi = with_unit(parts[1], *log, log_key, units, unit);
        const double n = to_number(parts[2], *log, log_key);
        if (!(lo > 0.0) || !(hi > lo) || n < 2 || n != std::floor(n) || n > 100000)
            fail(*log, log_key, "need 0 < lo < hi and an integer count >= 2");
        g = log_grid(lo, hi, static_cast<std::size_t>(n));
    } else {
        r.missing_one_of(sec, list_key, log_key);
    }
    const auto& e = list ? *list : *log;
    const auto& key = list ? list_key : log_key;
    if (g.empty()) fail(e, key, "grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0)) fail(e, key, "values must be positive");
        if (i > 0 && !(g[i] > g[i - 1])) fail(e, key, "values must be strictly increasing");
    }
    return g;
}

double velocity(const Reader& r, const std::string& key) {
    const auto* e = r.find("material", key);
    if (!e) return 0.0;
    return with_unit(trim(e->value), *e, key, {{"c", constants::c}, {"m/s", 1.0}}, "m/s");
}

}  // namespace

ConfigDocument parse_config_document(const std::string& text) {
    ConfigDocument doc;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        doc.last_line = line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError("unterminated section header", line_no, indent);
            section = trim(body.substr(1, body.size() - 2));
            if (!schema().count(section)) throw ConfigError("unknown section [" + section + "]", line_no, indent + 1);
            if (doc.sections.count(section)) throw ConfigError("duplicate section [" + section + "]", line_no, indent);
            doc.sections[section].line = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no, indent);
        if (section.empty()) throw ConfigError("key outside of a section", line_no, indent);
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key", line_no, indent);
        if (!schema().at(section).count(key))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", line_no, indent);
        const auto value = trim(line.substr(eq + 1));
        const auto vpos = line.find_first_not_of(" \t", eq + 1);
        const int vcol = vpos == std::string::npos ? static_cast<int>(eq) + 2 : static_cast<int>(vpos) + 1;
        if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no, vcol);
        auto& entries = doc.sections[section].entries;
        if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no, indent);
        entries[key] = ConfigEntry{value, line_no, vcol, indent};
    }
    return doc;
}

void apply_override(ConfigDocument& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    const auto section = trim(assignment.substr(0, dot));
    const auto key = trim(assignment.substr(dot + 1, eq - dot - 1));
    const auto value = trim(assignment.substr(eq + 1));
    if (!schema().count(section)) throw ConfigError("--set: unknown section '" + section + "'");
    if (!schema().at(section).count(key)) throw ConfigError("--set: unknown key '" + key + "' in [" + section + "]");
    if (value.empty()) throw ConfigError("--set " + section + "." + key + ": empty value");
    auto& sec = doc.sections[section];
    sec.entries[key] = ConfigEntry{value, 0, 0, 0};
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig build_run_config(const ConfigDocument& doc) {
    const Reader r(doc);

    // material
    const auto& wp_e = r.require("material", "omega_p");
    const double omega_p = with_unit(trim(wp_e.value), wp_e, "omega_p",
                                     {{"eV", constants::ev_to_rad_per_s(1.0)}, {"rad/s", 1.0}}, "rad/s");
    if (!(omega_p > 0.0)) fail(wp_e, "omega_p", "must be positive");
    const auto& rel_e = r.require("material", "relaxation");
    const auto rel = trim(rel_e.value);
    RelaxationModel relaxation;
    if (rel == "perfect") {
        if (const auto* b = r.find("material", "b")) {
            relaxation = PerfectLattice{number(*b, "b")};
        } else {
            const auto& g = r.require("material", "gamma0");
            const auto& t0 = r.require("material", "T0");
            const double T0 = number(t0, "T0");
            if (!(T0 > 0.0)) fail(t0, "T0", "must be positive");
            relaxation = PerfectLattice{number(g, "gamma0") / (T0 * T0)};
        }
    } else if (rel == "defect") {
        relaxation = DefectLattice{number(r.require("material", "gamma0"), "gamma0")};
    } else if (rel == "zero") {
        relaxation = ZeroRelaxation{};
    } else {
        fail(rel_e, "relaxation", "expected perfect, defect or zero");
    }
    const double v_tr = velocity(r, "v_tr");
    const double v_l = velocity(r, "v_l");

    RunConfig rc{Material(1.0, ZeroRelaxation{}, 0.0, 0.0), {}, {}, {}, {}, {}, {}, {}, {}};
    try {
        rc.material = Material(omega_p, relaxation, v_tr, v_l);
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), wp_e.line, 1);
    }

    rc.a = grid(r, "geometry", "a", "a_log", length_units, "m");
    rc.T = grid(r, "temperature", "T", "T_log", temperature_units, "K");

    const auto& m_e = r.require("model", "models");
    for (const auto& name : split(m_e.value, ',')) {
        try {
            rc.models.push_back(parse_model(name));
        } catch (const DomainError& e) {
            fail(m_e, "models", e.what());
        }
    }
    if (rc.models.empty()) fail(m_e, "models", "no model given");

    // quadrature
    auto& q = rc.quad;
    auto num_opt = [&](const char* sec, const char* key, double& out) {
        if (const auto* e = r.find(sec, key)) out = number(*e, key);
    };
    auto int_opt = [&](const char* sec, const char* key, auto& out) {
        if (const auto* e = r.find(sec, key)) {
            const long v = integer(*e, key);
            if (v < 0) fail(*e, key, "must be non-negative");
            out = static_cast<std::decay_t<decltype(out)>>(v);
        }
    };
    num_opt("quadrature", "rel_tol", q.rel_tol);
    num_opt("quadrature", "abs_tol", q.abs_tol);
    int_opt("quadrature", "max_nodes", q.max_nodes);
    num_opt("quadrature", "dT_frac", q.dT_frac);
    int_opt("quadrature", "exact_terms", q.exact_terms);
    int_opt("quadrature", "cheb_order", q.cheb_order);
    num_opt("quadrature", "x_max", q.x_max);
    num_opt("quadrature", "u_min", q.u_min);
    int_opt("quadrature", "refine", q.refine);
    if (const auto* e = r.find("quadrature", "interpolate")) q.interpolate = boolean(*e, "interpolate");
    double tail = q.l_max_policy.tail_rel_tol;
    num_opt("quadrature", "tail_rel_tol", tail);
    q.l_max_policy = TruncationPolicy::adaptive(tail);
    if (const auto* e = r.find("quadrature", "l_max")) {
        if (trim(e->value) != "adaptive") {
            const long n = integer(*e, "l_max");
            if (n < 1) fail(*e, "l_max", "must be 'adaptive' or a positive integer");
            q.l_max_policy = TruncationPolicy::fixed(n);
        }
    }
    try {
        q.validate();
    } catch (const DomainError& e) {
        const auto* sec = doc.sections.count("quadrature") ? &doc.sections.at("quadrature") : nullptr;
        throw ConfigError(std::string("[quadrature] ") + e.what(), sec ? sec->line : 0, 1);
    }

    // output
    if (const auto* e = r.find("output", "format")) {
        rc.output.format = trim(e->value);
        if (rc.output.format != "csv" && rc.output.format != "json") fail(*e, "format", "expected csv or json");
    }
    if (const auto* e = r.find("output", "path")) rc.output.path = trim(e->value) == "-" ? "" : trim(e->value);
    if (const auto* e = r.find("output", "precision")) {
        const long p = integer(*e, "precision");
        if (p < 6 || p > 17) fail(*e, "precision", "must lie in [6, 17]");
        rc.output.precision = static_cast<int>(p);
    }
    if (const auto* e = r.find("output", "entropy")) rc.output.entropy = boolean(*e, "entropy");

    // verification
    auto& v = rc.verify;
    v.cfg = q;
    int_opt("verify", "samples", v.samples);
    num_opt("verify", "tau_lo", v.tau_lo);
    num_opt("verify", "tau_hi", v.tau_hi);
    num_opt("verify", "defect_lo", v.defect_lo);
    num_opt("verify", "defect_hi", v.defect_hi);
    num_opt("verify", "subleading_frac", v.subleading_frac);
    num_opt("verify", "error_floor", v.error_floor);
    if (v.samples < 5) fail(*r.find("verify", "samples"), "samples", "at least 5 samples are needed for a fit");
    if (!(v.tau_lo > 0.0 && v.tau_hi > v.tau_lo) || !(v.defect_lo > 0.0 && v.defect_hi > v.defect_lo)) {
        const auto& sec = doc.sections.at("verify");
        throw ConfigError("[verify] windows need 0 < lo < hi", sec.line, 1);
    }

    // every section that defines the numbers goes into the echo; output does not
    std::ostringstream echo;
    for (const auto& [name, sec] : doc.sections) {
        if (name == "output") continue;
        for (const auto& [key, entry] : sec.entries) echo << name << '.' << key << '=' << entry.value << '\n';
    }
    rc.echo = echo.str();
    rc.hash = fnv1a_hex(rc.echo + constants::table);
    return rc;
}

RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides) {
    auto doc = parse_config_document(text);
    for (const auto& o : overrides) apply_override(doc, o);
    return build_run_config(doc);
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str(), overrides);
}

}  // namespace casimir
