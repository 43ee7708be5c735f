#include "cqed/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cqed::io {

using nlohmann::json;

std::string to_string(Task t)
{
    switch (t) {
        case Task::modes: return "modes";
        case Task::resonances: return "resonances";
        case Task::green: return "green";
        case Task::transmission: return "transmission";
        case Task::dispersive: return "dispersive";
        case Task::poles: return "poles";
        case Task::sweep: return "sweep";
        case Task::mspt: return "mspt";
        case Task::ww: return "ww";
        case Task::validate: return "validate";
    }
    return "modes";
}

Task task_from_string(const std::string& s)
{
    for (Task t : {Task::modes, Task::resonances, Task::green, Task::transmission,
                   Task::dispersive, Task::poles, Task::sweep, Task::mspt, Task::ww,
                   Task::validate})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown task: " + s);
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format format_from_string(const std::string& s)
{
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format: " + s);
}

void RunConfig::validate() const
{
    params.validate();
    if (truncation < 1) throw std::invalid_argument("RunConfig: N must be >= 1");
    if (jobs < 1) throw std::invalid_argument("RunConfig: jobs must be >= 1");
    auto check_grid = [](const std::vector<double>& g, const char* name) {
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1]))
                throw std::invalid_argument(std::string("RunConfig: ") + name
                                            + " must be strictly increasing");
    };
    check_grid(omega_j_grid, "omega_j grid");
    check_grid(omega_grid, "omega grid");
    check_grid(chi_s_list, "chi_s list");
}

namespace {

std::vector<double> grid_from_json(const json& j)
{
    if (j.is_array()) return j.get<std::vector<double>>();
    // {"lo": ..., "hi": ..., "points": ...}
    return linspace(j.at("lo").get<double>(), j.at("hi").get<double>(),
                    j.at("points").get<int>());
}

} // namespace

RunConfig parse_config(const std::string& json_text)
{
    json j = json::parse(json_text);
    RunConfig cfg;
    auto& p = cfg.params;
    if (j.contains("chi_R")) p.chi_R = j["chi_R"].get<double>();
    if (j.contains("chi_L")) p.chi_L = j["chi_L"].get<double>();
    if (j.contains("chi_j")) p.chi_j = j["chi_j"].get<double>();
    if (j.contains("chi_g")) p.chi_g = j["chi_g"].get<double>();
    if (j.contains("x0")) p.x0 = j["x0"].get<double>();
    if (j.contains("omega_j")) p.omega_j = j["omega_j"].get<double>();
    if (j.contains("epsilon")) p.epsilon = j["epsilon"].get<double>();
    if (j.contains("chi_s") && !j["chi_s"].is_null())
        p.chi_s_override = j["chi_s"].get<double>();
    if (j.contains("task")) cfg.task = task_from_string(j["task"].get<std::string>());
    if (j.contains("omega_j_grid")) cfg.omega_j_grid = grid_from_json(j["omega_j_grid"]);
    if (j.contains("omega_grid")) cfg.omega_grid = grid_from_json(j["omega_grid"]);
    if (j.contains("chi_s_list")) cfg.chi_s_list = j["chi_s_list"].get<std::vector<double>>();
    if (j.contains("N")) cfg.truncation = j["N"].get<int>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("format")) cfg.format = format_from_string(j["format"].get<std::string>());
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("x")) cfg.x = j["x"].get<double>();
    if (j.contains("x_prime")) cfg.x_prime = j["x_prime"].get<double>();
    if (j.contains("ww_flat")) cfg.ww_flat = j["ww_flat"].get<bool>();
    if (j.contains("ww_omega_max")) cfg.ww_omega_max = j["ww_omega_max"].get<double>();
    if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
    if (j.contains("t_points")) cfg.t_points = j["t_points"].get<int>();
    if (j.contains("mspt_include_mode_sum"))
        cfg.mspt_include_mode_sum = j["mspt_include_mode_sum"].get<bool>();
    if (j.contains("use_closed_frequencies"))
        cfg.use_closed_frequencies = j["use_closed_frequencies"].get<bool>();
    cfg.validate();
    return cfg;
}

std::string serialize_config(const RunConfig& cfg)
{
    json j;
    j["chi_R"] = cfg.params.chi_R;
    j["chi_L"] = cfg.params.chi_L;
    j["chi_j"] = cfg.params.chi_j;
    j["chi_g"] = cfg.params.chi_g;
    j["x0"] = cfg.params.x0;
    j["omega_j"] = cfg.params.omega_j;
    j["epsilon"] = cfg.params.epsilon;
    if (cfg.params.chi_s_override) j["chi_s"] = *cfg.params.chi_s_override;
    j["task"] = to_string(cfg.task);
    if (!cfg.omega_j_grid.empty()) j["omega_j_grid"] = cfg.omega_j_grid;
    if (!cfg.omega_grid.empty()) j["omega_grid"] = cfg.omega_grid;
    if (!cfg.chi_s_list.empty()) j["chi_s_list"] = cfg.chi_s_list;
    j["N"] = cfg.truncation;
    j["output"] = cfg.output;
    j["format"] = to_string(cfg.format);
    j["jobs"] = cfg.jobs;
    j["x"] = cfg.x;
    j["x_prime"] = cfg.x_prime;
    j["ww_flat"] = cfg.ww_flat;
    j["ww_omega_max"] = cfg.ww_omega_max;
    j["t_max"] = cfg.t_max;
    j["t_points"] = cfg.t_points;
    j["mspt_include_mode_sum"] = cfg.mspt_include_mode_sum;
    j["use_closed_frequencies"] = cfg.use_closed_frequencies;
    return j.dump(2);
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<double> linspace(double lo, double hi, int points)
{
    if (points < 1) throw std::invalid_argument("linspace: points must be >= 1");
    std::vector<double> g(points);
    if (points == 1) { g[0] = lo; return g; }
    for (int i = 0; i < points; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    return g;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_header(const std::string& key, const std::string& value)
{
    header_.emplace_back(key, value);
}

void Table::add_header(const std::string& key, double value)
{
    header_.emplace_back(key, format_double(value));
}

void Table::add_row(const std::vector<double>& row)
{
    if (row.size() != columns_.size())
        throw std::invalid_argument("Table: row width mismatch");
    rows_.push_back(row);
}

std::string Table::to_csv() const
{
    std::ostringstream out;
    for (const auto& [k, v] : header_) out << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c)
        out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
    return out.str();
}

std::string Table::to_json() const
{
    json j;
    for (const auto& [k, v] : header_) j["meta"][k] = v;
    j["columns"] = columns_;
    json rows = json::array();
    for (const auto& row : rows_) rows.push_back(row);
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void Table::write(const std::string& path, Format fmt) const
{
    const std::string text = fmt == Format::csv ? to_csv() : to_json();
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void echo_params(Table& t, const CircuitParams& p)
{
    t.add_header("chi_R", p.chi_R);
    t.add_header("chi_L", p.chi_L);
    t.add_header("chi_j", p.chi_j);
    t.add_header("chi_g", p.chi_g);
    t.add_header("x0", p.x0);
    t.add_header("omega_j", p.omega_j);
    t.add_header("epsilon", p.epsilon);
    t.add_header("gamma", p.gamma());
    t.add_header("chi_s", p.chi_s());
    if (p.chi_s_override) t.add_header("chi_s_override", *p.chi_s_override);
    t.add_header("root_tol", 1e-12);
    t.add_header("residual_tol", 1e-10);
}

} // namespace cqed::io
