#include "oscq/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "oscq/error_analysis.hpp"
#include "oscq/errors.hpp"
#include "oscq/special_functions.hpp"
#include "oscq/transform_maps.hpp"

namespace oscq {
namespace {

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw UsageError("integrand parameter '" + std::string(key) + "': not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::pair<std::string_view, std::string_view>> split_params(std::string_view s) {
  std::vector<std::pair<std::string_view, std::string_view>> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const std::string_view item = trim(s.substr(0, comma));
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("integrand parameter '" + std::string(item) + "' is not key=value");
    }
    out.emplace_back(trim(item.substr(0, eq)), item.substr(eq + 1));
  }
  return out;
}

struct Table1Row {
  int m;
  double a;
  ErrorDecomposition d;
};

}  // namespace

IntegrandSpec parse_integrand(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const auto params =
      split_params(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
  try {
    if (name == "lorentzian") {
      double a = 0.0, b = 1.0;
      for (const auto& [k, v] : params) {
        if (k == "a") a = parse_real(k, v);
        else if (k == "b") b = parse_real(k, v);
        else throw UsageError("lorentzian: unknown parameter '" + std::string(k) + "'");
      }
      return IntegrandSpec::lorentzian(a, b);
    }
    if (name == "sinc") {
      if (!params.empty()) throw UsageError("sinc takes no parameters");
      return IntegrandSpec::sinc();
    }
    if (name == "expdecay") {
      double lambda = 1.0;
      for (const auto& [k, v] : params) {
        if (k == "lambda") lambda = parse_real(k, v);
        else throw UsageError("expdecay: unknown parameter '" + std::string(k) + "'");
      }
      return IntegrandSpec::exp_decay(lambda);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown integrand '" + std::string(name) +
                   "' (expected lorentzian, sinc or expdecay)");
}

std::vector<long> parse_n_list(std::string_view text) {
  std::vector<long> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || v < 1) {
      throw UsageError("n list entry '" + std::string(item) + "' is not a positive integer");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty n list");
  return out;
}

std::optional<double> closed_form_reference(const IntegrandSpec& f, double t, bool cosine) {
  switch (f.kind) {
    case IntegrandKind::Lorentzian: {
      const LorentzianParams p{f.a, f.b, t};
      return cosine ? lorentzian_cosine_reference(p) : lorentzian_sine_reference(p);
    }
    case IntegrandKind::Sinc:
      if (cosine) return std::nullopt;
      return kPi / 2.0;
    case IntegrandKind::ExpDecay: {
      const double d = f.lambda * f.lambda + t * t;
      return cosine ? f.lambda / d : t / d;
    }
  }
  return std::nullopt;
}

QuadratureParams resolve_parameters(const RunConfig& config) {
  if (!(config.t > 0.0) || !std::isfinite(config.t)) throw UsageError("--t must be positive");
  QuadratureParams q;
  q.t = config.t;
  if (config.m) {
    if (!(*config.m > 0.0) || !std::isfinite(*config.m)) throw UsageError("--m must be positive");
    q.m = *config.m;
    q.n = config.n ? *config.n : default_n(q.m);
  } else if (config.n && config.alpha) {
    if (*config.n < 1) throw UsageError("--n must be at least 1");
    if (!(*config.alpha > 0.0)) throw UsageError("--alpha must be positive");
    q.n = *config.n;
    q.m = choose_m(q.n, *config.alpha);
  } else {
    throw UsageError("transform needs --m, or --n together with --alpha");
  }
  if (q.n < 1) throw UsageError("--n must be at least 1");
  return q;
}

double om1_matched_m(long n) {
  // OM1 truncation error ~ exp(-c e^{n pi/m}), discretisation ~ exp(-2 pi m):
  // balancing the exponents to leading order gives m ~ n / log n.
  return 2.0 * double(n) / std::log(double(n));
}

std::vector<long> default_convergence_ladder() {
  std::vector<long> out;
  for (long k = 4; k <= 20; ++k) out.push_back(k * k);
  return out;
}

std::vector<long> compare_om_ladder() {
  std::vector<long> out;
  for (long n = 8; n <= 512; n *= 2) out.push_back(n);
  return out;
}

void write_table1(std::ostream& out) {
  std::vector<std::future<Table1Row>> jobs;
  for (int m = 1; m <= 10; ++m) {
    for (double a : {-1.0, 0.0, 1.0}) {
      jobs.push_back(std::async(std::launch::async, [m, a] {
        return Table1Row{m, a, decompose_error({a, 1.0, 1.0}, m)};
      }));
    }
  }
  out << "m,a,total,R_m,S_m,saddle_converged\n";
  for (auto& job : jobs) {
    const Table1Row r = job.get();
    out << r.m << ',' << sci(r.a) << ',' << sci(r.d.total) << ',' << sci(r.d.pole_term) << ','
        << (r.d.saddle_term ? sci(*r.d.saddle_term) : std::string{}) << ','
        << (r.d.saddle_converged ? "true" : "false") << '\n';
  }
}

void write_convergence(const RunConfig& config, std::ostream& out) {
  const IntegrandSpec f = parse_integrand(config.integrand);
  if (!(config.t > 0.0) || !std::isfinite(config.t)) throw UsageError("--t must be positive");
  if (!config.alpha) throw UsageError("convergence needs --alpha");
  if (!(*config.alpha > 0.0)) throw UsageError("--alpha must be positive");
  const auto reference = closed_form_reference(f, config.t, false);
  if (!reference) {
    throw UsageError("convergence: no closed-form reference for " + f.describe());
  }
  const TransformMap map = TransformMap::single_exponential();
  const std::vector<long> ladder =
      config.n_list.empty() ? default_convergence_ladder() : config.n_list;
  out << "n,m,abs_error\n";
  for (long n : ladder) {
    const double m = choose_m(n, *config.alpha);
    const double value = sine_transform(f, map, {m, n, config.t});
    out << n << ',' << sci(m) << ',' << sci(std::abs(*reference - value)) << '\n';
  }
}

void write_compare_om(std::ostream& out) {
  const IntegrandSpec f = IntegrandSpec::sinc();
  const double reference = kPi / 2.0;
  const TransformMap se = TransformMap::single_exponential();
  const TransformMap om1 = TransformMap::ooura_mori1();
  out << "# integrand sinc, t=1; se: m=sqrt(n); om1: K=2pi, m=2n/log(n); "
         "both use h=pi/m and nodes k=-n..n\n";
  out << "n,err_se,err_om1\n";
  for (long n : compare_om_ladder()) {
    const double e_se = std::abs(reference - sine_transform(f, se, {choose_m(n, kPi), n, 1.0}));
    const double e_om = std::abs(reference - sine_transform(f, om1, {om1_matched_m(n), n, 1.0}));
    out << n << ',' << sci(e_se) << ',' << sci(e_om) << '\n';
  }
}

void write_transform(const RunConfig& config, std::ostream& out) {
  const IntegrandSpec f = parse_integrand(config.integrand);
  const QuadratureParams q = resolve_parameters(config);
  TransformMap map = TransformMap::single_exponential();
  try {
    map = TransformMap::from_name(config.map, q.m);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (config.cosine && f.kind == IntegrandKind::Sinc) {
    throw UsageError("the cosine transform of sinc diverges at x = 0");
  }
  const double value = config.cosine ? cosine_transform(f, map, q) : sine_transform(f, map, q);
  out << "value=" << sci(value) << '\n';
  if (const auto ref = closed_form_reference(f, q.t, config.cosine)) {
    out << "abs_error=" << sci(std::abs(*ref - value)) << '\n';
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    switch (config.command) {
      case Command::Table1: write_table1(buffer); break;
      case Command::Convergence: write_convergence(config, buffer); break;
      case Command::CompareOM: write_compare_om(buffer); break;
      case Command::Transform: write_transform(config, buffer); break;
    }
    if (config.output_path.empty()) {
      out << buffer.str();
      return out ? kExitOk : kExitIo;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "oscq: cannot write " << config.output_path << '\n';
      return kExitIo;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "oscq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "oscq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "oscq: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace oscq
