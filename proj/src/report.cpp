#include "flexkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace flexkit {

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string flex_kind(const FlexRecord& r) { return r.is_hyperflex() ? "hyperflex" : "ordinary"; }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ProjPoint& p) { return Json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])}); }

Json to_json(const FlexRecord& r) {
  return Json{{"point", to_json(r.point)},
              {"contact_order", r.contact_order},
              {"flex_order", r.flex_order},
              {"weight", r.weight},
              {"gap_sequence", r.gap_sequence}};
}

Json to_json(const FlexDiagnostics& d) {
  Json frame = Json::array();
  for (const auto& row : d.frame) frame.push_back(Json::array({to_json(row[0]), to_json(row[1]), to_json(row[2])}));
  return Json{{"frame", frame},
              {"frame_attempts", d.frame_attempts},
              {"refinement_passes", d.refinement_passes},
              {"eliminant_degree", d.eliminant_degree},
              {"raw_roots", d.raw_roots},
              {"candidates", d.candidates},
              {"rejected_candidates", d.rejected_candidates},
              {"deflated", d.deflated},
              {"max_curve_residual", d.max_curve_residual},
              {"max_hessian_residual", d.max_hessian_residual},
              {"weight_sum", d.weight_sum},
              {"root_counts", d.root_counts},
              {"notes", d.notes}};
}

Json to_json(const FlexOrbit& o) {
  return Json{{"size", o.orbit.size()},
              {"stabilizer_order", o.orbit.stabilizer_order},
              {"contact_order", o.contact_order},
              {"weight", o.weight},
              {"representative", to_json(o.orbit.points.front())},
              {"members", o.members}};
}

Json to_json(const ClassificationReport& r) {
  Json flexes = Json::array(), orbits = Json::array();
  for (const auto& f : r.flexes) flexes.push_back(to_json(f));
  for (const auto& o : r.orbits) orbits.push_back(to_json(o));
  Json loci = Json::object();
  static const char* names[] = {"P1", "P2", "P3"};
  for (std::size_t i = 0; i < 3; ++i)
    loci[names[i]] = Json{{"value", to_json(r.loci.P[i])}, {"vanishes", r.loci.vanishes[i]}, {"near", r.loci.near[i]}};
  return Json{{"params", {{"a", to_json(r.params.a)}, {"b", to_json(r.params.b)}, {"c", to_json(r.params.c)}}},
              {"case", to_string(r.loci.kase)},
              {"ordinary", r.ordinary},
              {"hyperflex", r.hyperflex},
              {"orbit_shape", r.shape.to_string()},
              {"ordinary_shape", OrbitShape::render(r.shape.ordinary)},
              {"hyperflex_shape", OrbitShape::render(r.shape.hyperflex)},
              {"table_row", r.table_row},
              {"table_match", r.table_match},
              {"loci", loci},
              {"orbits", orbits},
              {"flexes", flexes},
              {"notes", r.notes},
              {"diagnostics", to_json(r.diagnostics)}};
}

Json to_json(const FixedOrbitReport& o) {
  const int weight = o.contact_order == 4 ? 2 : o.contact_order == 3 ? 1 : 0;
  Json points = Json::array();
  for (const auto& p : o.orbit.points) points.push_back(to_json(p));
  return Json{{"slice", std::string(1, axis_name(o.slice)) + "=0"},
              {"size", o.orbit.size()},
              {"stabilizer_order", o.orbit.stabilizer_order},
              {"contact_order", o.contact_order},
              {"weight", weight},
              {"representative", to_json(o.orbit.points.front())},
              {"points", points}};
}

Complex complex_from_json(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

ProjPoint point_from_json(const Json& j) {
  return ProjPoint(complex_from_json(j.at(0)), complex_from_json(j.at(1)), complex_from_json(j.at(2)));
}

FlexRecord flex_from_json(const Json& j) {
  FlexRecord r = FlexRecord::from_contact(point_from_json(j.at("point")), j.at("contact_order").get<int>());
  if (r.weight != j.at("weight").get<int>())
    throw Error(ErrorKind::Parse, "flex record weight disagrees with its contact order");
  return r;
}

std::string format_fixed(Complex z, int digits) {
  // no "-0.000000" for values that round to zero
  const double unit = 0.5 * std::pow(10.0, -digits);
  const double re = std::abs(z.real()) < unit ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < unit ? 0.0 : z.imag();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f%+.*fi", digits, re, digits, im);
  return buf;
}

std::string render_flex_table(const std::vector<FlexRecord>& flexes) {
  std::ostringstream out;
  out << pad("#", 4) << pad("x", 26) << pad("y", 26) << pad("z", 26) << pad("contact", 9) << "kind\n";
  for (std::size_t k = 0; k < flexes.size(); ++k) {
    const FlexRecord& r = flexes[k];
    out << pad(std::to_string(k + 1), 4);
    for (int i = 0; i < 3; ++i) out << pad(format_fixed(r.point[i]), 26);
    out << pad(std::to_string(r.contact_order), 9) << flex_kind(r) << "\n";
  }
  return out.str();
}

std::string render_flex_csv(const std::vector<FlexRecord>& flexes) {
  std::ostringstream out;
  out << "index,x_re,x_im,y_re,y_im,z_re,z_im,contact_order,weight\n";
  for (std::size_t k = 0; k < flexes.size(); ++k) {
    const FlexRecord& r = flexes[k];
    out << k;
    for (int i = 0; i < 3; ++i) out << ',' << Json(r.point[i].real()).dump() << ',' << Json(r.point[i].imag()).dump();
    out << ',' << r.contact_order << ',' << r.weight << "\n";
  }
  return out.str();
}

std::string render_table(const ClassificationReport& r, bool verbose) {
  std::ostringstream out;
  out << "C(a, b, c) with a = " << format_complex(r.params.a) << ", b = " << format_complex(r.params.b)
      << ", c = " << format_complex(r.params.c) << "\n";
  out << "case " << to_string(r.loci.kase) << ", table row " << r.table_row << "\n\n";
  const std::string ord_shape = r.shape.ordinary.empty() ? "" : OrbitShape::render(r.shape.ordinary);
  const std::string hyp_shape = r.shape.hyperflex.empty() ? "" : OrbitShape::render(r.shape.hyperflex);
  const std::size_t w1 = std::max<std::size_t>(15, ord_shape.size() + 2);
  const std::size_t w2 = std::max<std::size_t>(11, hyp_shape.size() + 2);
  const std::string rule = "+" + std::string(w1, '-') + "+" + std::string(w2, '-') + "+\n";
  out << rule << "|" << pad(" Ordinary flex", w1) << "|" << pad(" Hyperflex", w2) << "|\n" << rule;
  out << "|" << pad(" " + std::to_string(r.ordinary), w1) << "|" << pad(" " + std::to_string(r.hyperflex), w2)
      << "|\n";
  out << "|" << pad(" " + ord_shape, w1) << "|" << pad(" " + hyp_shape, w2) << "|\n" << rule << "\n";
  out << render_flex_table(r.flexes);
  if (verbose || !r.table_match)
    for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (verbose) {
    const FlexDiagnostics& d = r.diagnostics;
    out << "eliminant degree " << d.eliminant_degree << ", candidates " << d.candidates << ", rejected "
        << d.rejected_candidates << ", deflated " << d.deflated << ", passes " << d.refinement_passes
        << ", frames " << d.frame_attempts << "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "max residuals: curve %.3g, hessian %.3g\n", d.max_curve_residual,
                  d.max_hessian_residual);
    out << buf;
    for (const auto& n : d.notes) out << "diagnostic: " << n << "\n";
  }
  return out.str();
}

std::string render_csv(const ClassificationReport& r) {
  std::vector<int> orbit_of(r.flexes.size(), -1);
  for (std::size_t o = 0; o < r.orbits.size(); ++o)
    for (const std::size_t m : r.orbits[o].members) orbit_of[m] = static_cast<int>(o);
  std::ostringstream out;
  out << "case,table_row,index,x_re,x_im,y_re,y_im,z_re,z_im,contact_order,weight,orbit\n";
  for (std::size_t k = 0; k < r.flexes.size(); ++k) {
    const FlexRecord& f = r.flexes[k];
    out << to_string(r.loci.kase) << ',' << r.table_row << ',' << k;
    for (int i = 0; i < 3; ++i) out << ',' << Json(f.point[i].real()).dump() << ',' << Json(f.point[i].imag()).dump();
    out << ',' << f.contact_order << ',' << f.weight << ',' << orbit_of[k] << "\n";
  }
  return out.str();
}

}  // namespace flexkit
