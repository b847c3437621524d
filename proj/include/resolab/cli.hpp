#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resolab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int compute = 2;
inline constexpr int verification = 3;
}  // namespace exit_code

enum class Command { herglotz, farfield, verify, fit, plot, sweep };

/// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& what);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    Command command = Command::herglotz;

    int dim_n = 0;  ///< 0: unset (verify runs both dimensions)
    std::vector<double> kappas;

    // spectra
    std::string operator_name;  ///< A, Q, F or Ftilde
    bool normalized = false;
    double sigma_floor = 1e-14;
    std::optional<std::size_t> max_count;
    int grid_m = 0;                 ///< 0: 60 for n = 2, 12 for n = 3
    std::string eig_mode = "auto";  ///< auto, full, topk
    std::size_t top_k = 64;

    // verify
    std::string identity;
    std::vector<std::string> profiles;
    int resolution = 48;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    std::uint32_t ell = 0;
    std::uint32_t ell_max = 50;

    // fit / plot
    std::string fit_mode = "loglog";  ///< loglog, stable, tail, sigma1-kappa
    std::string transform = "log";    ///< log or pow
    double power = 1.0;
    std::size_t window_from = 0;  ///< 0: whole input
    std::size_t window_to = 0;
    std::vector<std::string> inputs;
    std::string input_dir;
    bool logx = false;
    bool logy = false;
    bool sigma1_kappa = false;
    std::optional<double> ref_slope;
    std::string title;

    // output
    std::string out;
    std::string out_dir;
    int threads = 0;  ///< 0: runtime default
};

/// Fills defaults that depend on other fields, then checks every field.
/// Throws ConfigError naming the first invalid field.
void finalize_config(RunConfig& config);

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resolab
