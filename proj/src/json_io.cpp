#include "heatcoef/json_io.hpp"

#include <fstream>
#include <sstream>

namespace heatcoef {

json to_json(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const json& j) {
  return make_rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

json to_json(const PatodiCoefficients& c) {
  return json{{"p", c.p}, {"m", c.m}, {"c1", to_json(c.c1)}, {"c2", to_json(c.c2)}, {"c3", to_json(c.c3)}};
}

json to_json(const HeatCoefficientSet& h) {
  json j{{"p", h.p},
         {"m", h.m},
         {"a0_per_volume", to_json(h.a0_per_volume)},
         {"a1_scalar_factor", to_json(h.a1_scalar_factor)},
         {"s2_weight", to_json(h.s2_weight)}};
  j["ricci0_weight"] = h.ricci0_weight ? to_json(*h.ricci0_weight) : json(nullptr);
  j["weyl_weight"] = to_json(h.weyl_weight);
  return j;
}

json to_json(const std::vector<DimPair>& pairs) {
  json arr = json::array();
  // Numbers while they fit in 64 bits, decimal strings beyond.
  const auto entry = [](const BigInt& z) { return z.fits_slong_p() ? json(z.get_si()) : json(z.get_str()); };
  for (const auto& d : pairs) arr.push_back(json::array({entry(d.p), entry(d.m)}));
  return arr;
}

json to_json(const SignCertificate& cert) {
  json j{{"combo", to_string(cert.combo)},
         {"region", cert.region},
         {"checked_bound", cert.checked_bound},
         {"pairs_checked", cert.pairs_checked},
         {"valid", cert.valid()}};
  json zeros = json::array();
  for (const auto& [p, m] : cert.zero_set) zeros.push_back(json::array({p, m}));
  j["zero_set"] = zeros;
  json viol = json::array();
  for (const auto& v : cert.violations) viol.push_back(json{{"p", v.p}, {"m", v.m}, {"value", to_json(v.value)}});
  j["violations"] = viol;
  json checks = json::array();
  for (const auto& b : cert.boundary_checks) {
    checks.push_back(json{{"label", b.label},
                          {"closed_form", to_json(b.closed_form)},
                          {"computed", to_json(b.computed)},
                          {"match", b.match}});
  }
  j["boundary_checks"] = checks;
  return j;
}

json to_json(const IdentityResiduals& r) {
  return json{{"m", r.m},
              {"seed", r.seed},
              {"orthogonal_sum", r.orthogonal_sum},
              {"scalar_norm", r.scalar_norm},
              {"ricci0_norm", r.ricci0_norm},
              {"ricci_norm", r.ricci_norm},
              {"weyl_trace", r.weyl_trace},
              {"cross_terms", r.cross_terms},
              {"integrand", r.integrand},
              {"weyl_norm2", r.weyl_norm2},
              {"worst", r.worst()}};
}

json to_json(const HeatTraceFit& fit) {
  return json{{"a_hat", fit.a_hat},
              {"uncertainty", fit.uncertainty},
              {"residual", fit.residual},
              {"condition", fit.condition},
              {"tail_bound", fit.tail_bound},
              {"t_grid", fit.t_grid},
              {"rescaled_trace", fit.rescaled_trace},
              {"model", fit.model}};
}

json to_json(const AlphaReport& r) {
  return json{{"alpha_nominal", r.alpha_nominal},
              {"sup_statistic", r.sup_statistic},
              {"regime", to_string(r.regime)},
              {"index_bound", r.index_bound}};
}

json to_json(const RegimeReport& r) {
  return json{{"alpha", r.alpha},
              {"m", r.m},
              {"expected", to_string(r.expected)},
              {"classified", to_string(r.classified)},
              {"exponent", r.exponent},
              {"increment_exponent", r.increment_exponent},
              {"target_exponent", r.target_exponent},
              {"log_ratio_max", r.log_ratio_max},
              {"omega_max", r.omega_max},
              {"zeta_bound", r.zeta_bound},
              {"t_grid", r.t_grid},
              {"omega", r.omega_values},
              {"pass", r.pass},
              {"detail", r.detail}};
}

json to_json(const AgreementReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"index", row.index},
                        {"a1", row.a1},
                        {"a2", row.a2},
                        {"difference", row.difference},
                        {"tolerance", row.tolerance},
                        {"agree", row.agree},
                        {"required", row.required}});
  }
  return json{{"alpha", r.alpha},
              {"index_bound", r.index_bound},
              {"rows", rows},
              {"fit1", to_json(r.fit1)},
              {"fit2", to_json(r.fit2)},
              {"pass", r.pass}};
}

json to_json(const Spectrum& spec) {
  json levels = json::array();
  for (const auto& l : spec.levels) levels.push_back(json::array({l.eigenvalue, l.multiplicity}));
  return json{{"m", spec.m}, {"p", spec.p}, {"volume", spec.volume}, {"label", spec.label}, {"levels", levels}};
}

Spectrum spectrum_from_json(const json& j) {
  Spectrum spec;
  try {
    spec.m = j.at("m").get<int>();
    spec.p = j.at("p").get<int>();
    spec.volume = j.at("volume").get<double>();
    spec.label = j.value("label", std::string());
    for (const auto& l : j.at("levels")) {
      if (!l.is_array() || l.size() != 2) throw std::invalid_argument("level must be [lambda, mult]");
      spec.levels.push_back({l[0].get<double>(), l[1].get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed spectrum: ") + e.what());
  }
  spec.validate();
  return spec;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

Spectrum load_spectrum(const std::filesystem::path& path) { return spectrum_from_json(load_json(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void save_spectrum(const Spectrum& spec, const std::filesystem::path& path) {
  write_text(path, to_json(spec).dump() + "\n");
}

std::string fit_csv(const HeatTraceFit& fit) {
  std::ostringstream out;
  out.precision(17);
  out << "t,trace,model,residual\n";
  for (std::size_t i = 0; i < fit.t_grid.size(); ++i) {
    out << fit.t_grid[i] << ',' << fit.rescaled_trace[i] << ',' << fit.model[i] << ','
        << fit.rescaled_trace[i] - fit.model[i] << '\n';
  }
  return out.str();
}

}  // namespace heatcoef
