#include "abgup/io.hpp"

#include <cstdio>

namespace abgup::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanEntry>& entries) {
  os << "alpha_prime,phi,beta,dsigma\n";
  for (const auto& e : entries) {
    if (e.dsigma) {
      os << format_double(e.alpha_prime) << ',' << format_double(e.phi) << ',' << format_double(e.beta) << ','
         << format_double(*e.dsigma) << '\n';
    } else {
      os << "# skipped alpha_prime=" << format_double(e.alpha_prime) << " phi=" << format_double(e.phi) << " ("
         << e.skip_reason << ")\n";
    }
  }
}

json scan_to_json(const std::vector<ScanEntry>& entries) {
  json rows = json::array();
  json skipped = json::array();
  for (const auto& e : entries) {
    if (e.dsigma) {
      rows.push_back({{"alpha_prime", e.alpha_prime}, {"phi", e.phi}, {"beta", e.beta}, {"dsigma", *e.dsigma}});
    } else {
      skipped.push_back({{"alpha_prime", e.alpha_prime}, {"phi", e.phi}, {"reason", e.skip_reason}});
    }
  }
  return {{"columns", {"alpha_prime", "phi", "beta", "dsigma"}}, {"rows", rows}, {"skipped", skipped}};
}

void write_radial_csv(std::ostream& os, const std::vector<RadialRow>& rows) {
  os << "z,m,alpha_prime,re_f0,im_f0,re_f1,im_f1\n";
  for (const auto& r : rows) {
    os << format_double(r.z) << ',' << r.m << ',' << format_double(r.alpha_prime) << ','
       << format_double(r.f0.real()) << ',' << format_double(r.f0.imag()) << ',' << format_double(r.f1.real())
       << ',' << format_double(r.f1.imag()) << '\n';
  }
}

json radial_to_json(const std::vector<RadialRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"z", r.z},
                   {"m", r.m},
                   {"alpha_prime", r.alpha_prime},
                   {"re_f0", r.f0.real()},
                   {"im_f0", r.f0.imag()},
                   {"re_f1", r.f1.real()},
                   {"im_f1", r.f1.imag()}});
  }
  return out;
}

void write_width_csv(std::ostream& os, const std::vector<WidthRow>& rows) {
  os << "n,phi,beta,upper,lower,width\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.phi) << ',' << format_double(r.beta) << ',' << format_double(r.upper)
       << ',' << format_double(r.lower) << ',' << format_double(r.width) << '\n';
  }
}

json width_to_json(const std::vector<WidthRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"phi", r.phi},
                   {"beta", r.beta},
                   {"upper", r.upper},
                   {"lower", r.lower},
                   {"width", r.width}});
  }
  return out;
}

json amplitude_to_json(const scattering::ScatterSample& s) {
  return {{"alpha_prime", s.alpha_prime}, {"phi", s.phi},         {"beta", s.beta},
          {"f0_re", s.f0.real()},         {"f0_im", s.f0.imag()}, {"f1_re", s.f1.real()},
          {"f1_im", s.f1.imag()},         {"dsigma", s.dsigma}};
}

scattering::ScatterSample amplitude_from_json(const json& j) {
  scattering::ScatterSample s;
  s.alpha_prime = j.at("alpha_prime").get<double>();
  s.phi = j.at("phi").get<double>();
  s.beta = j.at("beta").get<double>();
  s.f0 = {j.at("f0_re").get<double>(), j.at("f0_im").get<double>()};
  s.f1 = {j.at("f1_re").get<double>(), j.at("f1_im").get<double>()};
  s.dsigma = j.at("dsigma").get<double>();
  return s;
}

std::string dump_amplitudes(const std::vector<scattering::ScatterSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(amplitude_to_json(s));
  return arr.dump(2);
}

std::vector<scattering::ScatterSample> parse_amplitudes(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw DomainError("parse_amplitudes: expected a JSON array");
  std::vector<scattering::ScatterSample> out;
  for (const auto& j : arr) out.push_back(amplitude_from_json(j));
  return out;
}

}  // namespace abgup::io
