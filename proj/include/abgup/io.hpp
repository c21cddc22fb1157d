#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abgup/scattering.hpp"

namespace abgup::io {

/// Shortest-safe text form of a double: 17 significant digits.
std::string format_double(double v);

/// One grid point of an alpha- or phi-scan. `dsigma` is empty for skipped
/// points, with the reason in `skip_reason`.
struct ScanEntry {
  double alpha_prime = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  std::optional<double> dsigma;
  std::string skip_reason;
};

/// CSV with header `alpha_prime,phi,beta,dsigma`. Skipped points become
/// `# skipped alpha_prime=… phi=… (reason)` comment lines in grid order.
void write_scan_csv(std::ostream& os, const std::vector<ScanEntry>& entries);

/// {"columns": [...], "rows": [{alpha_prime, phi, beta, dsigma}], "skipped": [...]}.
nlohmann::json scan_to_json(const std::vector<ScanEntry>& entries);

struct RadialRow {
  double z = 0.0;
  int m = 0;
  double alpha_prime = 0.0;
  std::complex<double> f0;
  std::complex<double> f1;
};

/// CSV with header `z,m,alpha_prime,re_f0,im_f0,re_f1,im_f1`.
void write_radial_csv(std::ostream& os, const std::vector<RadialRow>& rows);
nlohmann::json radial_to_json(const std::vector<RadialRow>& rows);

struct WidthRow {
  long n = 0;
  double phi = 0.0;
  double beta = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double width = 0.0;
};

/// CSV with header `n,phi,beta,upper,lower,width`.
void write_width_csv(std::ostream& os, const std::vector<WidthRow>& rows);
nlohmann::json width_to_json(const std::vector<WidthRow>& rows);

/// Amplitude record with fields alpha_prime, phi, beta, f0_re, f0_im,
/// f1_re, f1_im, dsigma.
nlohmann::json amplitude_to_json(const scattering::ScatterSample& s);
scattering::ScatterSample amplitude_from_json(const nlohmann::json& j);

std::string dump_amplitudes(const std::vector<scattering::ScatterSample>& samples);
std::vector<scattering::ScatterSample> parse_amplitudes(const std::string& text);

}  // namespace abgup::io
