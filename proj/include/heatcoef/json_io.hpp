#pragma once

// JSON forms of the library types. Exact rationals are {"num": "...", "den": "..."}
// with decimal strings; spectra are {m, p, volume, label, levels: [[lambda, mult], ...]}.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "heatcoef/almost_iso.hpp"
#include "heatcoef/curvature.hpp"
#include "heatcoef/heat_trace.hpp"
#include "heatcoef/patodi.hpp"
#include "heatcoef/pell.hpp"
#include "heatcoef/positivity.hpp"

namespace heatcoef {

using json = nlohmann::ordered_json;

/// Raised for unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const PatodiCoefficients& c);
json to_json(const HeatCoefficientSet& h);
json to_json(const std::vector<DimPair>& pairs);
json to_json(const SignCertificate& cert);
json to_json(const IdentityResiduals& r);
json to_json(const HeatTraceFit& fit);
json to_json(const AlphaReport& r);
json to_json(const RegimeReport& r);
json to_json(const AgreementReport& r);

json to_json(const Spectrum& spec);
/// Validates the result; throws std::invalid_argument on malformed input.
Spectrum spectrum_from_json(const json& j);

Spectrum load_spectrum(const std::filesystem::path& path);
void save_spectrum(const Spectrum& spec, const std::filesystem::path& path);

json load_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// CSV with header t,trace,model,residual; trace is the rescaled series.
std::string fit_csv(const HeatTraceFit& fit);

}  // namespace heatcoef
