// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace edlab
{

using nlohmann::json;

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnv1a64_hex(const std::string &bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace
{

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

const char *boundary_name(Boundary b) { return b == Boundary::OBC ? "OBC" : "PBC"; }

}  // namespace

std::string spectrum_csv(const SpectrumSet &s)
{
  std::ostringstream out;
  out << "re,im,label,conditioning\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
  {
    out << format_double(s.eigenvalues[i].real()) << ',' << format_double(s.eigenvalues[i].imag())
        << ',' << to_string(s.block_label[i]) << ',' << format_double(s.conditioning[i]) << '\n';
  }
  return out.str();
}

std::string spectrum_json(const SpectrumSet &s)
{
  json j;
  j["boundary"] = boundary_name(s.boundary);
  j["eigenvalues"] = json::array();
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
  {
    j["eigenvalues"].push_back({{"E", complex_json(s.eigenvalues[i])},
                                {"label", to_string(s.block_label[i])},
                                {"conditioning", s.conditioning[i]}});
  }
  return j.dump(2) + "\n";
}

std::string gbz_csv(const GBZPortrait &g)
{
  std::ostringstream out;
  out << "re_E,im_E,re_beta,im_beta,factor\n";
  for (const auto &e : g.entries)
  {
    out << format_double(e.energy.real()) << ',' << format_double(e.energy.imag()) << ','
        << format_double(e.beta.real()) << ',' << format_double(e.beta.imag()) << ','
        << to_string(e.factor) << '\n';
  }
  return out.str();
}

std::string gbz_json(const GBZPortrait &g)
{
  json j;
  j["entries"] = json::array();
  for (const auto &e : g.entries)
  {
    j["entries"].push_back(
      {{"E", complex_json(e.energy)}, {"beta", complex_json(e.beta)}, {"factor", to_string(e.factor)}});
  }
  j["radius_clusters"] = json::array();
  for (const auto &c : g.radius_clusters)
  {
    j["radius_clusters"].push_back(
      {{"radius", c.radius}, {"factor", to_string(c.factor)}, {"count", c.count}});
  }
  j["failures"] = json::array();
  for (const auto &f : g.failures)
  {
    j["failures"].push_back({{"E", complex_json(f.energy)}, {"reason", f.reason}});
  }
  return j.dump(2) + "\n";
}

std::string ed_report_json(const EDReport &r)
{
  json j;
  j["similarity"] = r.similarity;
  j["mean_G_A"] = r.mean_G_A;
  j["mean_G_B"] = r.mean_G_B;
  j["min_singular_of_eigenbasis"] = r.min_singular_of_eigenbasis;
  j["degenerate_pairs"] = r.degenerate_pairs;
  j["bulk_degenerate_pairs"] = r.bulk_degenerate_pairs;
  j["biorthogonal_failures"] = r.biorthogonal_failures;
  j["ambiguous_states"] = r.ambiguous_states;
  j["verdict"] = to_string(r.verdict);
  j["thresholds"] = {{"element", r.thresholds.element},
                     {"spectral_match", r.thresholds.spectral_match},
                     {"near_similarity", r.thresholds.near_similarity},
                     {"element_absolute", r.element_threshold}};
  j["matrix_elements"] = json::array();
  for (const auto &m : r.matrix_elements)
  {
    j["matrix_elements"].push_back({{"E_target", complex_json(m.energy_target)},
                                    {"E_source", complex_json(m.energy_source)},
                                    {"target_index", m.target_index},
                                    {"source_index", m.source_index},
                                    {"magnitude", m.magnitude}});
  }
  return j.dump(2) + "\n";
}

std::string states_csv(const EigenspacePair &p)
{
  std::ostringstream out;
  out << "index,re,im,block,edge,ambiguous,G\n";
  for (const auto &s : p.states)
  {
    out << s.column << ',' << format_double(s.eigenvalue.real()) << ','
        << format_double(s.eigenvalue.imag()) << ',' << to_string(s.block) << ',' << s.edge << ','
        << s.ambiguous << ',' << format_double(s.gauge) << '\n';
  }
  return out.str();
}

std::string profiles_csv(const EigenspacePair &p)
{
  std::ostringstream out;
  out << "state,site,chain,chain_index,amplitude\n";
  const int L = p.chain_length;
  for (const auto &s : p.states)
  {
    for (int k = 0; k < 2 * L; ++k)
    {
      const SiteRef site = site_of(L, k);
      out << s.column << ',' << physical_site(site) << ',' << to_string(site.chain) << ','
          << site.index << ',' << format_double(std::abs(p.eigenbasis(k, s.column))) << '\n';
    }
  }
  return out.str();
}

std::string trajectory_csv(const TrajectoryField &t)
{
  std::ostringstream out;
  out << "t,site,abs2,re,im\n";
  const int L = t.chain_length;
  for (std::size_t i = 0; i < t.times.size(); ++i)
  {
    const ComplexVector &psi = t.amplitudes[i];
    for (int k = 0; k < psi.size(); ++k)
    {
      out << format_double(t.times[i]) << ',' << physical_site(site_of(L, k)) << ','
          << format_double(std::norm(psi(k))) << ',' << format_double(psi(k).real()) << ','
          << format_double(psi(k).imag()) << '\n';
    }
  }
  return out.str();
}

std::string response_csv(const ResponseField &r)
{
  std::ostringstream out;
  out << "site,chain,chain_index,amplitude\n";
  const int L = r.chain_length;
  for (int k = 0; k < 2 * L; ++k)
  {
    const SiteRef site = site_of(L, k);
    out << physical_site(site) << ',' << to_string(site.chain) << ',' << site.index << ','
        << format_double(r.site_response[k]) << '\n';
  }
  return out.str();
}

std::string ratio_scan_csv(const std::vector<RatioRow> &rows)
{
  std::ostringstream out;
  out << "L,q,ratio,regime,marginal\n";
  for (const auto &r : rows)
  {
    out << r.L << ',' << format_double(r.q) << ',' << format_double(r.ratio) << ','
        << to_string(r.regime.regime) << ',' << r.regime.marginal << '\n';
  }
  return out.str();
}

}  // namespace edlab
