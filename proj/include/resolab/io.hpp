#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "resolab/identities.hpp"
#include "resolab/regions.hpp"
#include "resolab/spectrum.hpp"

namespace resolab {

/// File could not be opened, read or written. The message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// "rank,sigma,degree_ell" for Herglotz records, "rank,sigma" otherwise;
/// 17 significant digits, LF line endings.
void write_spectrum_csv(std::ostream& out, const SpectrumRecord& record);

/// Parses the entries of a spectrum CSV. dim_n, kappa, tag and method_meta
/// keep their defaults; they come from the sidecar.
SpectrumRecord parse_spectrum_csv(std::istream& in, std::string_view source = "<stream>");

/// Sidecar document: dim_n, kappa, operator, count, method_meta.
nlohmann::ordered_json spectrum_sidecar(const SpectrumRecord& record);
void apply_sidecar(SpectrumRecord& record, const nlohmann::json& sidecar);

/// a/b/name.csv -> a/b/name.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes the CSV and its sidecar.
void save_spectrum(const SpectrumRecord& record, const std::filesystem::path& csv);

/// Reads the CSV and, when present, its sidecar.
SpectrumRecord load_spectrum(const std::filesystem::path& csv);

/// Generic two-column numeric CSV with a header row (first two columns used).
std::vector<XYPoint> read_xy_csv(const std::filesystem::path& csv);

nlohmann::ordered_json report_json(const IdentityReport& report, bool pass);
nlohmann::ordered_json fit_json(const FitResult& fit);

/// Writes `text` to `path`, replacing any existing file.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace resolab
