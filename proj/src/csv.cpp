#include "forge/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace forge {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) fields.push_back(cell);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, std::size_t line, std::size_t column, const std::string& name) {
    const std::string s = trim(cell);
    char* end = nullptr;
    errno = 0;
    const double v = s.empty() ? 0.0 : std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw std::invalid_argument("csv: line " + std::to_string(line) + ", column " + std::to_string(column + 1) +
                                    " ('" + name + "'): non-numeric value '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Dataset parse_csv(std::istream& in, const std::string& label_column) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        header = split_fields(line);
        break;
    }
    if (header.empty()) throw std::invalid_argument("csv: missing header row");
    for (auto& h : header) h = trim(h);

    std::size_t label_idx = header.size() - 1;
    if (!label_column.empty()) {
        bool found = false;
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == label_column) {
                label_idx = j;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("csv: label column '" + label_column + "' not in header");
    } else {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == "class") {
                label_idx = j;
                break;
            }
        }
    }

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != label_idx) names.push_back(header[j]);
    }
    Matrix features(0, names.size());
    std::vector<std::string> labels;
    std::vector<double> row(names.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("csv: line " + std::to_string(line_no) + " has " +
                                        std::to_string(fields.size()) + " fields, header has " +
                                        std::to_string(header.size()));
        }
        std::size_t c = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == label_idx) continue;
            row[c++] = parse_number(fields[j], line_no, j, header[j]);
        }
        features.append_row(row);
        labels.push_back(trim(fields[label_idx]));
    }
    return Dataset(std::move(features), std::move(labels), std::move(names));
}

Dataset parse_csv_file(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_csv(in, label_column);
}

void write_csv(const Dataset& ds, std::ostream& out) {
    const auto names = ds.feature_names.size() == ds.dims() ? ds.feature_names : default_feature_names(ds.dims());
    for (const auto& n : names) out << n << ',';
    out << "class\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (double v : ds.features.row(i)) out << format_double(v) << ',';
        out << ds.labels[i] << '\n';
    }
}

}  // namespace forge
