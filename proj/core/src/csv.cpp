#include "teinv/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace teinv {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream out = open_out(path);
    out << "x,value\n";
    for (int i = 0; i < f.size(); ++i)
        out << format_full(f.grid().node(i)) << ',' << format_full(f[i]) << '\n';
}

Field read_field_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::vector<double> xs, vals;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed field CSV line in " + path);
        xs.push_back(std::stod(line.substr(0, comma)));
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 2) throw std::runtime_error("field CSV has too few rows: " + path);
    const int cells = static_cast<int>(xs.size()) - 1;
    const SpaceGrid grid(cells);
    for (size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - grid.node(static_cast<int>(i))) > 1e-9)
            throw std::runtime_error("field CSV nodes are not a uniform unit-interval grid: " + path);
    return Field(grid, std::move(vals));
}

void write_trajectory_csv(const std::string& path, const ForwardSolution& sol) {
    std::ofstream out = open_out(path);
    out << "t,x,u,theta\n";
    const TimeGrid& time = sol.displacement.time;
    for (int j = 0; j <= time.steps; ++j) {
        const Field& u = sol.displacement.at(j);
        const Field& th = sol.temperature.at(j);
        for (int i = 0; i < u.size(); ++i)
            out << format_full(time.node(j)) << ',' << format_full(u.grid().node(i)) << ','
                << format_full(u[i]) << ',' << format_full(th[i]) << '\n';
    }
}

void write_history_csv(const std::string& path, const ReconstructionResult& result) {
    std::ofstream out = open_out(path);
    out << "k,cost,discrepancy,e_r\n";
    for (size_t k = 0; k < result.cost_history.size(); ++k) {
        out << k << ',' << format_full(result.cost_history[k]) << ','
            << format_full(result.discrepancy_history[k]) << ',';
        if (k < result.error_history.size()) out << format_full(result.error_history[k]);
        out << '\n';
    }
}

void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out = open_out(path);
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
}

std::map<std::string, std::string> read_metadata(const std::string& path) {
    std::ifstream in = open_in(path);
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed metadata line in " + path);
        entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return entries;
}

namespace {

std::string kind_name(MeasurementKind k) {
    switch (k) {
        case MeasurementKind::FinalDisplacement: return "final_displacement";
        case MeasurementKind::TimeAvgDisplacement: return "time_avg_displacement";
        case MeasurementKind::TimeAvgTemperature: return "time_avg_temperature";
    }
    return "?";
}

MeasurementKind kind_from_name(const std::string& name) {
    if (name == "final_displacement") return MeasurementKind::FinalDisplacement;
    if (name == "time_avg_displacement") return MeasurementKind::TimeAvgDisplacement;
    if (name == "time_avg_temperature") return MeasurementKind::TimeAvgTemperature;
    throw std::runtime_error("unknown measurement kind: " + name);
}

}  // namespace

void write_measurement(const std::string& csv_path, const std::string& meta_path,
                       const Measurement& m) {
    write_field_csv(csv_path, m.data);
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("kind", kind_name(m.kind));
    meta.emplace_back("noise", format_full(m.requested_noise));
    meta.emplace_back("realized_noise", format_full(m.noise_level));
    if (m.seed) meta.emplace_back("seed", std::to_string(*m.seed));
    write_metadata(meta_path, meta);
}

Measurement read_measurement(const std::string& csv_path, const std::string& meta_path) {
    Measurement m;
    m.data = read_field_csv(csv_path);
    const auto meta = read_metadata(meta_path);
    m.kind = kind_from_name(meta.at("kind"));
    if (auto it = meta.find("noise"); it != meta.end()) m.requested_noise = std::stod(it->second);
    if (auto it = meta.find("realized_noise"); it != meta.end())
        m.noise_level = std::stod(it->second);
    if (auto it = meta.find("seed"); it != meta.end()) m.seed = std::stoull(it->second);
    return m;
}

std::string summary_row_line(const SummaryRow& row) {
    std::ostringstream os;
    os << row.method << ',' << row.gradient << ',' << row.isp << ',' << row.target << ','
       << format_full(row.noise) << ',' << format_full(row.alpha) << ',' << format_full(row.beta)
       << ',' << row.seed << ',' << format_full(row.realized_noise) << ',' << row.iterations << ','
       << format_full(row.rel_error) << ',' << format_full(row.data_fidelity) << ','
       << format_full(row.penalty) << ',' << (row.diverged ? 1 : 0);
    return os.str();
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out = open_out(path);
    out << "# schema=" << kSummarySchema << '\n';
    out << "method,gradient,isp,target,noise,alpha,beta,seed,realized_noise,K,e_r,DF,P,diverged\n";
    for (const SummaryRow& row : rows) out << summary_row_line(row) << '\n';
}

}  // namespace teinv
