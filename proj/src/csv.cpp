#include "simcal/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace simcal {

namespace {

constexpr const char* kSimHeader =
    "bang_time,burnwidth,log10_yield_dt,tion_dt,log10_yield_dd,tion_dd,dsr";
constexpr const char* kShotsHeader =
    "shot_index,campaign,"
    "sim_bang_time,sim_burnwidth,sim_log10_yield_dt,sim_tion_dt,"
    "sim_log10_yield_dd,sim_tion_dd,sim_dsr,"
    "exp_bang_time,exp_burnwidth,exp_log10_yield_dt,exp_tion_dt,"
    "exp_log10_yield_dd,exp_tion_dd,exp_dsr";
constexpr const char* kCurveHeader =
    "n,campaign,err_bang_time,err_burnwidth,err_log10_yield_dt,err_tion_dt,"
    "err_log10_yield_dd,err_tion_dd,err_dsr";
constexpr const char* kAvpHeader = "shot_index,split,observable,measured,simulation,prediction";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Splits on '\n', tolerating CRLF; a single trailing newline does not
// produce a phantom empty line.
std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        std::string line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

std::string at_line(const std::filesystem::path& path, std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
}

std::size_t parse_count(const std::string& token, const std::string& where) {
    std::size_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw std::runtime_error(where + ": expected a non-negative integer, got \"" + token +
                                 "\"");
    }
    return value;
}

void check_field_count(const std::vector<std::string>& fields, std::size_t expected,
                       const std::string& where) {
    if (fields.size() != expected) {
        throw std::runtime_error(where + ": expected " + std::to_string(expected) +
                                 " fields, got " + std::to_string(fields.size()));
    }
}

void check_header(const std::vector<std::string>& lines, const char* expected,
                  const std::filesystem::path& path) {
    if (lines.empty()) {
        throw std::runtime_error(path.string() + ": file is empty");
    }
    if (lines[0] != expected) {
        throw std::runtime_error(at_line(path, 1) + ": bad header, expected \"" +
                                 std::string(expected) + "\"");
    }
}

void append_observables(std::string& out, const ObservableVector& v) {
    const auto a = v.to_array();
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        out += ',';
        out += format_double(a[k]);
    }
}

ObservableVector observables_from_fields(const std::vector<std::string>& fields,
                                         std::size_t offset, const std::string& where) {
    std::array<double, kNumObservables> a;
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        a[k] = parse_double(fields[offset + k], where + " column " + observable_names()[k]);
    }
    return ObservableVector::from_array(a);
}

void check_campaign_writable(const std::string& campaign, const char* who) {
    if (campaign.empty()) {
        throw std::invalid_argument(std::string(who) + ": campaign label is empty");
    }
    if (campaign.find(',') != std::string::npos ||
        campaign.find('\n') != std::string::npos ||
        campaign.find('\r') != std::string::npos) {
        throw std::invalid_argument(std::string(who) +
                                    ": campaign label contains a comma or newline: \"" +
                                    campaign + "\"");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

double parse_double(const std::string& token, const std::string& where) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw std::runtime_error(where + ": expected a number, got \"" + token + "\"");
    }
    if (!std::isfinite(value)) {
        throw std::runtime_error(where + ": value is not finite: \"" + token + "\"");
    }
    return value;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("failed while writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw std::runtime_error("failed while reading " + path.string());
    }
    return content;
}

void write_sim_database_csv(const std::filesystem::path& path,
                            const std::vector<ObservableVector>& rows) {
    std::string out = kSimHeader;
    out += '\n';
    for (const ObservableVector& v : rows) {
        const auto a = v.to_array();
        for (std::size_t k = 0; k < kNumObservables; ++k) {
            if (k > 0) out += ',';
            out += format_double(a[k]);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<ObservableVector> read_sim_database_csv(const std::filesystem::path& path) {
    const auto lines = split_lines(read_file(path));
    check_header(lines, kSimHeader, path);

    std::vector<ObservableVector> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = at_line(path, i + 1);
        if (lines[i].empty()) {
            throw std::runtime_error(where + ": empty line");
        }
        const auto fields = split_fields(lines[i]);
        check_field_count(fields, kNumObservables, where);
        ObservableVector v = observables_from_fields(fields, 0, where);
        validate_observables(v, where);
        rows.push_back(v);
    }
    return rows;
}

void write_shots_csv(const std::filesystem::path& path,
                     const std::vector<ShotRecord>& shots) {
    std::string out = kShotsHeader;
    out += '\n';
    for (const ShotRecord& rec : shots) {
        check_campaign_writable(rec.campaign, "write_shots_csv");
        out += std::to_string(rec.shot_index);
        out += ',';
        out += rec.campaign;
        append_observables(out, rec.sim);
        append_observables(out, rec.exp);
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<ShotRecord> read_shots_csv(const std::filesystem::path& path) {
    const auto lines = split_lines(read_file(path));
    check_header(lines, kShotsHeader, path);

    std::vector<ShotRecord> shots;
    shots.reserve(lines.size() - 1);
    std::vector<bool> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = at_line(path, i + 1);
        if (lines[i].empty()) {
            throw std::runtime_error(where + ": empty line");
        }
        const auto fields = split_fields(lines[i]);
        check_field_count(fields, 2 + 2 * kNumObservables, where);

        ShotRecord rec;
        rec.shot_index = parse_count(fields[0], where + " column shot_index");
        rec.campaign = fields[1];
        if (rec.campaign.empty()) {
            throw std::runtime_error(where + ": empty campaign label");
        }
        rec.sim = observables_from_fields(fields, 2, where + " (sim)");
        rec.exp = observables_from_fields(fields, 2 + kNumObservables, where + " (exp)");
        validate_observables(rec.sim, where + " (sim)");
        validate_observables(rec.exp, where + " (exp)");

        if (rec.shot_index >= seen.size()) seen.resize(rec.shot_index + 1, false);
        if (seen[rec.shot_index]) {
            throw std::runtime_error(where + ": duplicate shot_index " +
                                     std::to_string(rec.shot_index));
        }
        seen[rec.shot_index] = true;
        shots.push_back(std::move(rec));
    }
    return shots;
}

void write_learning_curve_csv(const std::filesystem::path& path, const LearningCurve& curve,
                              const std::vector<std::string>& campaigns) {
    if (campaigns.size() != curve.size()) {
        throw std::invalid_argument("write_learning_curve_csv: " + std::to_string(curve.size()) +
                                    " curve rows but " + std::to_string(campaigns.size()) +
                                    " campaign labels");
    }
    std::string out = kCurveHeader;
    out += '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        check_campaign_writable(campaigns[i], "write_learning_curve_csv");
        out += std::to_string(curve[i].n_experiments);
        out += ',';
        out += campaigns[i];
        for (std::size_t k = 0; k < kNumObservables; ++k) {
            out += ',';
            out += format_double(curve[i].holdout_error[k]);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_actual_vs_predicted_csv(const std::filesystem::path& path,
                                   const std::vector<ActualVsPredictedRow>& rows) {
    std::string out = kAvpHeader;
    out += '\n';
    for (const ActualVsPredictedRow& row : rows) {
        out += std::to_string(row.shot_index);
        out += ',';
        out += row.split;
        out += ',';
        out += row.observable;
        out += ',';
        out += format_double(row.measured);
        out += ',';
        out += format_double(row.simulation);
        out += ',';
        out += format_double(row.prediction);
        out += '\n';
    }
    write_file_atomic(path, out);
}

}  // namespace simcal
