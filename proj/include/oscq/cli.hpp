#pragma once

// Command implementations behind the oscq executable. Argument parsing lives in
// the tool; everything here takes a RunConfig and writes to a stream.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oscq/quadrature.hpp"

namespace oscq {

/// Missing or inconsistent command-line parameters (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Table1, Convergence, CompareOM, Transform };

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  Command command = Command::Transform;
  std::string map = "se";
  std::string integrand = "sinc";
  double t = 1.0;
  std::optional<double> m;
  std::optional<long> n;
  std::optional<double> alpha;
  std::vector<long> n_list;  // convergence; empty selects the default ladder
  bool cosine = false;       // transform: midpoint rule for the cosine transform
  std::string output_path;   // empty writes to the given stream
};

/// Parses "lorentzian:a=0,b=1", "sinc", "expdecay:lambda=1". Unspecified
/// parameters keep their defaults (a=0, b=1, lambda=1). UsageError on bad input.
IntegrandSpec parse_integrand(std::string_view text);

/// Parses a comma separated list of positive integers.
std::vector<long> parse_n_list(std::string_view text);

/// Closed-form value of the sine (or cosine) transform at t, when one exists.
std::optional<double> closed_form_reference(const IntegrandSpec& f, double t, bool cosine);

/// m and n for a transform run: m given (n defaults to ceil(4m^2)) or n and alpha
/// given (m = sqrt(n pi/alpha)). UsageError otherwise.
QuadratureParams resolve_parameters(const RunConfig& config);

/// Rule parameter used for the double-exponential side of compare-om.
double om1_matched_m(long n);

/// 16, 25, ..., 400.
std::vector<long> default_convergence_ladder();
/// 8, 16, ..., 512.
std::vector<long> compare_om_ladder();

void write_table1(std::ostream& out);
void write_convergence(const RunConfig& config, std::ostream& out);
void write_compare_om(std::ostream& out);
void write_transform(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command, writing to config.output_path when set and to
/// out otherwise. Diagnostics go to err. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace oscq
