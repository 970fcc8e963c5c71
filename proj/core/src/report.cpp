#include "forage/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "forage/error.hpp"

namespace forage {

std::string format_double(double v) {
    char buf[64];
    // Shortest form that round-trips: try increasing precision.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string join_ids(const std::vector<EdgeId>& ids) {
    std::string out;
    for (const EdgeId id : ids) {
        if (!out.empty()) out += ';';
        out += std::to_string(id);
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

void write_report(const RunReport& report, const std::filesystem::path& base) {
    const std::filesystem::path rows_path = base.string() + ".csv";
    const std::filesystem::path curves_path = base.string() + "_curves.csv";
    const std::filesystem::path params_path = base.string() + "_params.txt";

    std::ofstream rows(rows_path);
    if (!rows) throw DataError("cannot write report: " + rows_path.string());
    rows << "query,interest,interest_terms,score,wall_time_s,surfing_depth,"
            "convergence_generation,path_edges,path_texts\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const QueryRow& row = report.rows[i];
        rows << i << ',' << csv_escape(row.interest_input) << ','
             << csv_escape(join_strings(row.interest_terms, ";")) << ','
             << format_double(row.score) << ',' << format_double(row.wall_seconds) << ','
             << row.surfing_depth << ',' << row.convergence_generation << ','
             << join_ids(row.best_path.edges) << ','
             << csv_escape(join_strings(row.best_path_texts, " || ")) << '\n';
    }
    rows.close();

    std::ofstream curves(curves_path);
    if (!curves) throw DataError("cannot write report: " + curves_path.string());
    curves << "query,generation,best_fitness\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const QueryRow& row = report.rows[i];
        for (std::size_t gen = 0; gen < row.curve.size(); ++gen) {
            curves << i << ',' << gen + 1 << ',' << format_double(row.curve[gen]) << '\n';
        }
    }
    curves.close();

    std::ofstream params(params_path);
    if (!params) throw DataError("cannot write report: " + params_path.string());
    params << "engine=" << report.engine << '\n';
    params << "seed=" << report.seed << '\n';
    params << "corpus_digest=" << report.corpus_digest << '\n';
    for (const auto& [key, value] : report.params) {
        params << key << '=' << value << '\n';
    }
}

}  // namespace forage
