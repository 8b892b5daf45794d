#include "heatcoef/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "heatcoef/acceptance.hpp"
#include "heatcoef/json_io.hpp"

#ifndef HEATCOEF_VERSION
#define HEATCOEF_VERSION "unknown"
#endif

namespace heatcoef {

namespace {

/// Bad parameter values discovered after parsing; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json parameters = json::object();
  json result;
  bool pass = true;
  json failures = json::array();
};

using Handler = std::function<Outcome()>;

Spectrum read_spectrum(const std::string& path) {
  try {
    return load_spectrum(path);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

std::vector<double> parse_grid(const std::string& spec, const Spectrum& s) {
  if (spec == "auto") return auto_grid(s);
  // lo:hi:points
  std::istringstream in(spec);
  double lo = 0, hi = 0;
  int points = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> lo >> c1 >> hi >> c2 >> points) || c1 != ':' || c2 != ':') {
    throw UsageError("--grid must be 'auto' or lo:hi:points");
  }
  return geometric_grid(lo, hi, points);
}

json envelope(const std::string& command, const Outcome& o) {
  return json{{"version", version()},
              {"config", {{"command", command}, {"parameters", o.parameters}}},
              {"result", o.result},
              {"pass", o.pass},
              {"failures", o.failures}};
}

// -- commands ---------------------------------------------------------------

struct PatodiArgs {
  std::int64_t m = 0;
  std::optional<std::int64_t> p;
};

Outcome run_patodi(const PatodiArgs& a) {
  Outcome o;
  o.parameters = {{"m", a.m}, {"p", a.p ? json(*a.p) : json(nullptr)}};
  if (a.m < 1) throw UsageError("--m must be at least 1");
  o.result = json::array();
  const std::int64_t lo = a.p.value_or(0);
  const std::int64_t hi = a.p.value_or(a.m);
  for (std::int64_t p = lo; p <= hi; ++p) {
    json row = to_json(patodi_coeffs(p, a.m));
    row["heat"] = a.m >= 2 ? to_json(heat_coefficient_set(p, a.m)) : json(nullptr);
    o.result.push_back(row);
  }
  return o;
}

struct ExceptionalArgs {
  std::string kind = "real";
  std::size_t count = 5;
  std::optional<std::int64_t> scan;
};

Outcome run_exceptional(const ExceptionalArgs& a) {
  Outcome o;
  o.parameters = {{"kind", a.kind}, {"count", a.count}, {"scan", a.scan ? json(*a.scan) : json(nullptr)}};
  if (a.scan) {
    const auto scan = brute_force_zero_scan(*a.scan);
    const auto recursion = exceptional_real_up_to(*a.scan);
    o.pass = scan == recursion;
    o.result = {{"scan", to_json(scan)}, {"recursion", to_json(recursion)}, {"match", o.pass}};
    if (!o.pass) o.failures.push_back("brute-force scan differs from the recursion prefix");
    return o;
  }
  o.result = to_json(a.kind == "real" ? exceptional_real(a.count) : exceptional_complex(a.count));
  return o;
}

struct CertifyArgs {
  std::string combo;
  std::int64_t m_max = 2000;
  std::optional<std::int64_t> n_max;
  std::size_t samples = 20;
};

Outcome run_certify(const CertifyArgs& a) {
  Outcome o;
  const Combo combo = parse_combo(a.combo);
  o.parameters = {{"combo", a.combo}, {"m_max", a.m_max}, {"samples", a.samples}};
  SignCertificate cert;
  switch (combo) {
    case Combo::C1:
      cert = c1_certify(a.m_max);
      break;
    case Combo::Soliton:
      cert = soliton_certify(a.m_max, a.samples);
      break;
    case Combo::Kahler: {
      const std::int64_t n_max = a.n_max.value_or(a.m_max / 2);
      o.parameters["n_max"] = n_max;
      cert = kahler_certify(n_max, a.samples);
      break;
    }
  }
  o.result = to_json(cert);
  o.pass = cert.valid();
  for (const auto& v : cert.violations) {
    o.failures.push_back({{"p", v.p}, {"m", v.m}, {"value", to_json(v.value)}});
  }
  for (const auto& b : cert.boundary_checks) {
    if (!b.match) o.failures.push_back({{"boundary_check", b.label}});
  }
  return o;
}

struct TensorArgs {
  int m = 5;
  int seeds = 100;
  std::string report = "json";
  double tolerance = 1e-10;
};

Outcome run_tensor(const TensorArgs& a) {
  Outcome o;
  o.parameters = {{"m", a.m}, {"seeds", a.seeds}, {"report", a.report}, {"tolerance", a.tolerance}};
  if (a.m < 3 || a.m > 10) throw UsageError("--m must be in 3..10");
  o.result = json::array();
  for (int s = 0; s < a.seeds; ++s) {
    const auto r = identity_residuals(a.m, static_cast<std::uint64_t>(s));
    o.result.push_back(to_json(r));
    if (!(r.worst() <= a.tolerance)) {
      o.pass = false;
      o.failures.push_back({{"seed", s}, {"worst", r.worst()}});
    }
  }
  return o;
}

std::string tensor_csv(const json& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "seed,orthogonal_sum,scalar_norm,ricci0_norm,ricci_norm,weyl_trace,cross_terms,integrand\n";
  for (const auto& r : rows) {
    out << r["seed"].get<std::uint64_t>();
    for (const char* k : {"orthogonal_sum", "scalar_norm", "ricci0_norm", "ricci_norm", "weyl_trace",
                          "cross_terms", "integrand"}) {
      out << ',' << r[k].get<double>();
    }
    out << '\n';
  }
  return out.str();
}

struct HeatFitArgs {
  std::string spec;
  int order = 2;
  std::string grid = "auto";
  std::string csv;
};

Outcome run_heat_fit(const HeatFitArgs& a) {
  Outcome o;
  o.parameters = {{"spec", a.spec}, {"order", a.order}, {"grid", a.grid}};
  const auto spec = read_spectrum(a.spec);
  const auto fit = fit_coefficients(spec, a.order, parse_grid(a.grid, spec));
  o.result = to_json(fit);
  o.result["spectrum_label"] = spec.label;
  std::string csv = a.csv;
  if (csv.empty() && std::getenv("HEATCOEF_OUT_DIR") != nullptr) csv = "heat_fit.csv";
  if (!csv.empty()) {
    const auto path = output_path(csv);
    write_text(path, fit_csv(fit));
    o.parameters["csv"] = csv;
  }
  return o;
}

struct AlmostIsoArgs {
  std::string spec1;
  std::string spec2;
  double alpha = 0.5;
  int order = 2;
  std::string grid = "auto";
};

Outcome run_almost_iso(const AlmostIsoArgs& a) {
  Outcome o;
  o.parameters = {{"spec1", a.spec1}, {"spec2", a.spec2}, {"alpha", a.alpha}, {"order", a.order}, {"grid", a.grid}};
  const auto s1 = read_spectrum(a.spec1);
  const auto s2 = read_spectrum(a.spec2);
  const auto report = alpha_report(s1, s2, a.alpha);
  const auto grid = parse_grid(a.grid, s1);
  const auto agreement = coefficient_agreement(s1, s2, a.alpha, a.order, grid);
  o.result = {{"alpha_report", to_json(report)}, {"agreement", to_json(agreement)}};
  o.pass = agreement.pass;
  for (const auto& row : agreement.rows) {
    if (row.required && !row.agree) {
      o.failures.push_back({{"index", row.index}, {"difference", row.difference}, {"tolerance", row.tolerance}});
    }
  }
  return o;
}

struct SpectrumArgs {
  std::string kind = "sphere";
  int m = 2;
  double curvature = 1.0;
  int max_level = 2000;
  std::vector<double> sides;
  double cutoff = 2.0e5;
  std::optional<double> perturb_alpha;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

Outcome run_spectrum(const SpectrumArgs& a) {
  Outcome o;
  o.parameters = {{"kind", a.kind}, {"m", a.m}, {"out", a.out}};
  Spectrum spec;
  if (a.kind == "sphere") {
    o.parameters["curvature"] = a.curvature;
    o.parameters["max_level"] = a.max_level;
    spec = sphere_spectrum(a.m, a.curvature, a.max_level);
  } else {
    auto sides = a.sides.empty() ? std::vector<double>(static_cast<std::size_t>(a.m), 1.0) : a.sides;
    o.parameters["sides"] = sides;
    o.parameters["cutoff"] = a.cutoff;
    spec = torus_spectrum(a.m, sides, a.cutoff);
  }
  if (a.perturb_alpha) {
    o.parameters["perturb_alpha"] = *a.perturb_alpha;
    o.parameters["amplitude"] = a.amplitude;
    o.parameters["seed"] = a.seed;
    spec = perturb(spec, *a.perturb_alpha, a.amplitude, a.seed);
  }
  save_spectrum(spec, output_path(a.out));
  o.result = {{"label", spec.label}, {"levels", spec.levels.size()}, {"count", spec.count()}};
  return o;
}

struct AllArgs {
  bool quick = false;
  std::vector<int> only;
};

Outcome run_all(const AllArgs& a, std::ostream& err) {
  Outcome o;
  o.parameters = {{"quick", a.quick}, {"only", a.only}};
  const auto bounds = a.quick ? AcceptanceBounds::quick() : AcceptanceBounds::full();
  std::vector<int> ids = a.only;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  o.result = json::array();
  for (int id : ids) {
    const auto r = run_criterion(id, bounds);
    err << summary_line(r) << '\n';
    o.result.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    if (!r.pass) {
      o.pass = false;
      o.failures.push_back({{"criterion", r.id}, {"name", r.name}, {"detail", r.detail}});
    }
  }
  return o;
}

CLI::App* add_json_option(CLI::App* sub, std::string& path) {
  sub->add_option("--json", path, "Write the JSON document here instead of stdout");
  return sub;
}

}  // namespace

const char* version() { return HEATCOEF_VERSION; }

std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("HEATCOEF_OUT_DIR"); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-coefficient checks for p-form Laplacians", "heatcoef"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string json_path;
  std::map<CLI::App*, Handler> handlers;
  std::string csv_report;  // tensor --report csv

  PatodiArgs patodi;
  auto* sp = add_json_option(app.add_subcommand("patodi", "Exact c1, c2, c3 and heat-coefficient weights"), json_path);
  sp->add_option("--m", patodi.m, "Dimension")->required();
  sp->add_option("--p", patodi.p, "Form degree (default: all 0..m)");
  handlers[sp] = [&] { return run_patodi(patodi); };

  ExceptionalArgs exc;
  auto* se = add_json_option(app.add_subcommand("exceptional", "Dimension pairs with a degenerate a1 bracket"), json_path);
  se->add_option("--kind", exc.kind)->check(CLI::IsMember({"real", "complex"}));
  se->add_option("--count", exc.count)->check(CLI::Range(1, 200));
  se->add_option("--scan", exc.scan, "Brute-force scan up to m_max and compare with the recursion");
  handlers[se] = [&] { return run_exceptional(exc); };

  CertifyArgs cert;
  auto* sc = add_json_option(app.add_subcommand("certify", "Exact sign certificate for a combination"), json_path);
  sc->add_option("--combo", cert.combo)->required()->check(CLI::IsMember({"c1", "soliton", "kahler"}));
  sc->add_option("--m-max", cert.m_max, "Largest real dimension (kahler: n_max = m_max/2)");
  sc->add_option("--n-max", cert.n_max, "Largest complex dimension (kahler only)");
  sc->add_option("--samples", cert.samples, "Sampled dimensions for the closed-form checks");
  handlers[sc] = [&] { return run_certify(cert); };

  TensorArgs tensor;
  auto* st = add_json_option(app.add_subcommand("tensor", "Decomposition identities on random curvature tensors"), json_path);
  st->add_option("--m", tensor.m);
  st->add_option("--seeds", tensor.seeds)->check(CLI::PositiveNumber);
  st->add_option("--report", tensor.report)->check(CLI::IsMember({"json", "csv"}));
  st->add_option("--tol", tensor.tolerance);
  handlers[st] = [&] { return run_tensor(tensor); };

  HeatFitArgs fit;
  auto* sf = add_json_option(app.add_subcommand("heat-fit", "Fit small-t heat coefficients of a spectrum"), json_path);
  sf->add_option("--spec", fit.spec)->required();
  sf->add_option("--order", fit.order)->check(CLI::Range(0, 8));
  sf->add_option("--grid", fit.grid, "auto or lo:hi:points");
  sf->add_option("--csv", fit.csv, "Plot data (t,trace,model,residual)");
  handlers[sf] = [&] { return run_heat_fit(fit); };

  AlmostIsoArgs iso;
  auto* sa = add_json_option(app.add_subcommand("almost-iso", "Compare two spectra at exponent alpha"), json_path);
  sa->add_option("--spec1", iso.spec1)->required();
  sa->add_option("--spec2", iso.spec2)->required();
  sa->add_option("--alpha", iso.alpha)->required();
  sa->add_option("--order", iso.order)->check(CLI::Range(0, 8));
  sa->add_option("--grid", iso.grid, "auto or lo:hi:points");
  handlers[sa] = [&] { return run_almost_iso(iso); };

  SpectrumArgs spec;
  auto* sg = add_json_option(app.add_subcommand("spectrum", "Write a model spectrum file"), json_path);
  sg->add_option("--kind", spec.kind)->check(CLI::IsMember({"sphere", "torus"}));
  sg->add_option("--m", spec.m);
  sg->add_option("--k", spec.curvature, "Sphere curvature");
  sg->add_option("--max-level", spec.max_level);
  sg->add_option("--sides", spec.sides, "Torus side lengths");
  sg->add_option("--cutoff", spec.cutoff, "Torus eigenvalue cutoff");
  sg->add_option("--perturb-alpha", spec.perturb_alpha);
  sg->add_option("--amplitude", spec.amplitude);
  sg->add_option("--seed", spec.seed);
  sg->add_option("--out", spec.out)->required();
  handlers[sg] = [&] { return run_spectrum(spec); };

  AllArgs all;
  auto* sl = add_json_option(app.add_subcommand("all", "Run the acceptance criteria"), json_path);
  sl->add_flag("--quick", all.quick, "Reduced bounds");
  sl->add_option("--only", all.only, "Criterion ids")->check(CLI::Range(1, kCriterionCount));
  handlers[sl] = [&] { return run_all(all, err); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Outcome outcome;
  int code = kExitPass;
  try {
    outcome = handlers.at(sub)();
    code = outcome.pass ? kExitPass : kExitCheckFailed;
  } catch (const IoError& e) {
    err << "heatcoef: " << e.what() << '\n';
    outcome.pass = false;
    outcome.failures.push_back({{"error", e.what()}});
    code = kExitIo;
  } catch (const TruncationError& e) {
    err << "heatcoef: " << e.what() << '\n';
    outcome.pass = false;
    outcome.failures.push_back({{"error", e.what()}});
    code = kExitCheckFailed;
  } catch (const FitError& e) {
    err << "heatcoef: " << e.what() << '\n';
    outcome.pass = false;
    outcome.failures.push_back({{"error", e.what()}});
    code = kExitCheckFailed;
  } catch (const std::exception& e) {
    // domain_error, invalid_argument and UsageError all mean bad parameter values
    err << "heatcoef: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (command == "tensor" && tensor.report == "csv" && outcome.result.is_array()) {
      csv_report = tensor_csv(outcome.result);
    }
    if (!csv_report.empty()) {
      if (json_path.empty()) {
        out << csv_report;
      } else {
        write_text(output_path(json_path), csv_report);
      }
      return code;
    }
    const std::string text = envelope(command, outcome).dump(2) + "\n";
    if (json_path.empty()) {
      out << text;
    } else {
      write_text(output_path(json_path), text);
    }
  } catch (const IoError& e) {
    err << "heatcoef: " << e.what() << '\n';
    return kExitIo;
  }
  return code;
}

}  // namespace heatcoef
