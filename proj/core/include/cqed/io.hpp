// io.hpp — Run configuration (JSON), deterministic CSV/JSON table output
// with full parameter echo, and grid construction.

#pragma once

#include <string>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::io {

enum class Task {
    modes, resonances, green, transmission, dispersive,
    poles, sweep, mspt, ww, validate,
};

enum class Format { csv, json };

std::string to_string(Task t);
Task task_from_string(const std::string& s);
std::string to_string(Format f);
Format format_from_string(const std::string& s);

struct RunConfig {
    CircuitParams params;
    Task task = Task::modes;
    std::vector<double> omega_j_grid;   // strictly increasing when present
    std::vector<double> omega_grid;
    std::vector<double> chi_s_list;
    int truncation = 2000;              // N
    std::string output;                 // output path; empty = stdout
    Format format = Format::csv;
    int jobs = 1;
    // task-specific extras
    double x = 0.0, x_prime = 0.0;      // green probe positions (default x0)
    bool ww_flat = false;               // ww --profile flat
    double ww_omega_max = 1e3;
    double t_max = 25.0;                // ww time grid end
    int t_points = 1001;
    bool mspt_include_mode_sum = true;
    bool use_closed_frequencies = false;

    void validate() const;              // grid monotonicity, N >= 1
};

// JSON round trip; parse accepts exactly the documented field names and
// leaves absent fields at their defaults.
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

// Uniform grid helper, inclusive of both ends.
std::vector<double> linspace(double lo, double hi, int points);

// Tabular output: a comment header echoing every parameter and solver
// tolerance, then rows printed with 17 significant digits.
class Table {
public:
    Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_header(const std::string& key, const std::string& value);
    void add_header(const std::string& key, double value);
    void add_row(const std::vector<double>& row);

    std::string to_csv() const;
    std::string to_json() const;      // mirrors the CSV content
    void write(const std::string& path, Format fmt) const;  // empty path = stdout

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> header_;
    std::vector<std::vector<double>> rows_;
};

// 17-significant-digit formatting used everywhere (lossless round trip).
std::string format_double(double v);

// Echo the circuit parameters into a table header.
void echo_params(Table& t, const CircuitParams& p);

} // namespace cqed::io
