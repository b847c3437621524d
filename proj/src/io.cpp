#include "resolab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "resolab/format.hpp"

namespace resolab {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(std::string_view field, const std::string& source, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(source, line, "not a number: '" + std::string(field) + "'");
    }
    return v;
}

std::size_t parse_size(std::string_view field, const std::string& source, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(source, line, "not a non-negative integer: '" + std::string(field) + "'");
    }
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

void write_spectrum_csv(std::ostream& out, const SpectrumRecord& record) {
    const bool with_degree = is_herglotz(record.tag);
    out << (with_degree ? "rank,sigma,degree_ell\n" : "rank,sigma\n");
    for (const auto& e : record.entries) {
        out << e.rank << ',' << format_real(e.sigma);
        if (with_degree) {
            out << ',';
            if (e.degree) {
                out << *e.degree;
            }
        }
        out << '\n';
    }
}

SpectrumRecord parse_spectrum_csv(std::istream& in, std::string_view source_view) {
    const std::string source(source_view);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(source, 1, "empty file, expected a header row");
    }
    line = strip_cr(line);
    bool with_degree = false;
    if (line == "rank,sigma,degree_ell") {
        with_degree = true;
    } else if (line != "rank,sigma") {
        throw ParseError(source, 1, "expected header 'rank,sigma' or 'rank,sigma,degree_ell', got '" + line + "'");
    }
    SpectrumRecord rec;
    rec.tag = with_degree ? OperatorTag::herglotz_a : OperatorTag::farfield_f;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        const std::size_t expected = with_degree ? 3 : 2;
        if (fields.size() != expected) {
            throw ParseError(source, lineno,
                             "expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
        }
        SpectrumEntry e;
        e.rank = parse_size(fields[0], source, lineno);
        e.sigma = parse_double(fields[1], source, lineno);
        if (with_degree && !fields[2].empty()) {
            e.degree = static_cast<std::uint32_t>(parse_size(fields[2], source, lineno));
        }
        if (e.rank != rec.entries.size() + 1) {
            throw ParseError(source, lineno, "rank " + std::to_string(e.rank) + " out of sequence");
        }
        rec.entries.push_back(e);
    }
    return rec;
}

nlohmann::ordered_json spectrum_sidecar(const SpectrumRecord& record) {
    nlohmann::ordered_json j;
    j["dim_n"] = record.dim_n;
    j["kappa"] = record.kappa;
    j["operator"] = std::string(to_string(record.tag));
    j["count"] = record.entries.size();
    j["method_meta"] = record.method_meta;
    return j;
}

void apply_sidecar(SpectrumRecord& record, const nlohmann::json& sidecar) {
    record.dim_n = sidecar.at("dim_n").get<int>();
    record.kappa = sidecar.at("kappa").get<double>();
    record.tag = operator_tag_from_string(sidecar.at("operator").get<std::string>());
    if (sidecar.contains("method_meta")) {
        record.method_meta = sidecar.at("method_meta").get<std::map<std::string, std::string>>();
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p.replace_extension(".json");
    return p;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

void save_spectrum(const SpectrumRecord& record, const std::filesystem::path& csv) {
    std::ostringstream body;
    write_spectrum_csv(body, record);
    write_text_file(csv, body.str());
    write_text_file(sidecar_path(csv), spectrum_sidecar(record).dump(2) + "\n");
}

SpectrumRecord load_spectrum(const std::filesystem::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + csv.string() + "' for reading");
    }
    const bool with_degree_header = [&] {
        std::string first;
        std::getline(in, first);
        in.seekg(0);
        return strip_cr(first) == "rank,sigma,degree_ell";
    }();
    SpectrumRecord rec = parse_spectrum_csv(in, csv.string());
    const auto side = sidecar_path(csv);
    if (std::filesystem::exists(side)) {
        std::ifstream sin(side, std::ios::binary);
        if (!sin) {
            throw IoError("cannot open '" + side.string() + "' for reading");
        }
        nlohmann::json j;
        try {
            sin >> j;
            apply_sidecar(rec, j);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(side.string(), 1, std::string("invalid sidecar: ") + e.what());
        }
        if (is_herglotz(rec.tag) != with_degree_header) {
            throw ParseError(csv.string(), 1, "CSV columns do not match the operator in the sidecar");
        }
    }
    return rec;
}

std::vector<XYPoint> read_xy_csv(const std::filesystem::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + csv.string() + "' for reading");
    }
    const std::string source = csv.string();
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(source, 1, "empty file, expected a header row");
    }
    std::vector<XYPoint> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() < 2) {
            throw ParseError(source, lineno, "expected at least 2 fields");
        }
        out.push_back({parse_double(fields[0], source, lineno), parse_double(fields[1], source, lineno)});
    }
    return out;
}

nlohmann::ordered_json report_json(const IdentityReport& report, bool pass) {
    nlohmann::ordered_json j;
    j["identity"] = std::string(to_string(report.name));
    j["params"] = report.parameters;
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["rel_diff"] = report.rel_diff;
    j["pass"] = pass;
    return j;
}

nlohmann::ordered_json fit_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["window"] = {fit.window.first, fit.window.second};
    j["transform"] = fit.transform.name();
    return j;
}

}  // namespace resolab
