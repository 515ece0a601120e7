#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "flexkit/report.hpp"

namespace flexkit {

namespace {

struct Config {
  std::string format = "table";
  double tol_scale = 1.0;
  std::uint64_t seed = 1;
  bool verbose = false;

  FlexOptions flex_options() const {
    FlexOptions o;
    o.tol = Tolerances{}.scaled(tol_scale);
    return o;
  }
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::NotHomogeneous:
    case ErrorKind::NotQuartic:
      return kExitInput;
    case ErrorKind::NotSmooth:
    case ErrorKind::SingularPoint:
      return kExitSingular;
    default:
      return kExitNumerical;
  }
}

// Reproducible uniform draw in [lo, hi) from the top 53 bits.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex draw(std::mt19937_64& rng) {
  const double re = uniform(rng, -4.0, 4.0);
  return {re, uniform(rng, -4.0, 4.0)};
}

Params parse_params(const std::string& a, const std::string& b, const std::string& c) {
  return Params{parse_complex(a), parse_complex(b), parse_complex(c)};
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_classify(const Config& cfg, const Params& p, std::ostream& out, std::ostream& err) {
  const ClassificationReport r = classify(p, cfg.flex_options());
  if (cfg.format == "json")
    print_json(out, to_json(r));
  else if (cfg.format == "csv")
    out << render_csv(r);
  else
    out << render_table(r, cfg.verbose);
  if (!r.table_match) {
    err << "table mismatch: " << r.ordinary << " ordinary, " << r.hyperflex << " hyperflex, orbit shape "
        << r.shape.to_string() << " fits no row of case " << to_string(r.loci.kase) << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_flexes(const Config& cfg, const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return kExitInput;
  }
  std::stringstream text;
  text << in.rdbuf();
  const MPoly f = MPoly::parse(text.str());
  const FlexSet s = find_flexes(f, cfg.flex_options());
  if (cfg.format == "json") {
    Json flexes = Json::array();
    for (const auto& r : s.flexes) flexes.push_back(to_json(r));
    print_json(out, Json{{"polynomial", f.to_string()},
                         {"ordinary", s.ordinary_count()},
                         {"hyperflex", s.hyperflex_count()},
                         {"weight_sum", s.weight_sum()},
                         {"expected_weight_sum", expected_count(3, 1)},
                         {"flexes", flexes},
                         {"diagnostics", to_json(s.diagnostics)}});
  } else if (cfg.format == "csv") {
    out << render_flex_csv(s.flexes);
  } else {
    out << "F = " << f.to_string() << "\n";
    out << s.ordinary_count() << " ordinary, " << s.hyperflex_count() << " hyperflex, weight sum " << s.weight_sum()
        << " (expected " << expected_count(3, 1) << ")\n\n";
    out << render_flex_table(s.flexes);
  }
  return kExitOk;
}

struct IdentityStats {
  double max_stated = 0, max_derived = 0;
  double ratio_min = INFINITY, ratio_max = -INFINITY;
};

int cmd_verify(const Config& cfg, int samples, std::ostream& out, std::ostream& err) {
  constexpr double kThreshold = 1e-8;
  static const char* slices[] = {"x=0", "y=0", "z=0"};
  static const char* loci[] = {"P1", "P2", "P3"};
  std::mt19937_64 rng(cfg.seed);
  std::array<IdentityStats, 3> stats;
  std::array<int, 3> hyper_tested{}, hyper_passed{};
  int rejected = 0;
  for (int s = 0; s < samples; ++s) {
    Params p;
    do {
      p = {draw(rng), draw(rng), draw(rng)};
      rejected += !p.smooth();
    } while (!p.smooth());
    const auto checks = verify_resultant_identities(p);
    for (std::size_t i = 0; i < 3; ++i) {
      stats[i].max_stated = std::max(stats[i].max_stated, checks[i].stated_error);
      stats[i].max_derived = std::max(stats[i].max_derived, checks[i].derived_error);
      if (checks[i].stated != Complex(0.0)) {
        stats[i].ratio_min = std::min(stats[i].ratio_min, checks[i].ratio.real());
        stats[i].ratio_max = std::max(stats[i].ratio_max, checks[i].ratio.real());
      }
    }
    // move the sample onto each special locus and test the slice orbit
    const std::array<Params, 3> on_locus{
        Params{0.5 * (p.b * p.c - p.b * std::sqrt(p.c * p.c - 4.0)), p.b, p.c},
        Params{0.5 * (p.b * p.c - p.c * std::sqrt(p.b * p.b - 4.0)), p.b, p.c},
        Params{p.a, 0.5 * (p.a * p.c - p.c * std::sqrt(p.a * p.a - 4.0)), p.c},
    };
    for (std::size_t i = 0; i < 3; ++i) {
      if (!on_locus[i].smooth()) continue;
      ++hyper_tested[i];
      const SliceReport r = special_flex_conditions(on_locus[i], cfg.flex_options().tol)[i];
      if (r.vanishes && r.hit >= 0 && r.contact_orders[static_cast<std::size_t>(r.hit)] == 4) ++hyper_passed[i];
    }
  }

  bool pass = true;
  for (std::size_t i = 0; i < 3; ++i)
    pass = pass && stats[i].max_stated <= kThreshold && hyper_passed[i] == hyper_tested[i];
  if (samples == 0) err << "warning: no samples drawn, verification is vacuous\n";

  if (cfg.format == "json") {
    Json ids = Json::array(), hyper = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      Json id{{"slice", slices[i]},
              {"locus", loci[i]},
              {"stated_constant", kStatedResultantConstant},
              {"derived_constant", kDerivedResultantConstant},
              {"max_stated_error", stats[i].max_stated},
              {"max_derived_error", stats[i].max_derived}};
      if (samples > 0) id["ratio_range"] = Json::array({stats[i].ratio_min, stats[i].ratio_max});
      ids.push_back(id);
      hyper.push_back(Json{{"slice", slices[i]}, {"tested", hyper_tested[i]}, {"passed", hyper_passed[i]}});
    }
    print_json(out, Json{{"samples", samples},
                         {"seed", cfg.seed},
                         {"rejected_draws", rejected},
                         {"threshold", kThreshold},
                         {"identities", ids},
                         {"hyperflex_contact", hyper},
                         {"pass", pass}});
  } else if (cfg.format == "csv") {
    out << "slice,locus,samples,max_stated_error,max_derived_error,hyperflex_tested,hyperflex_passed\n";
    for (std::size_t i = 0; i < 3; ++i)
      out << slices[i] << ',' << loci[i] << ',' << samples << ',' << Json(stats[i].max_stated).dump() << ','
          << Json(stats[i].max_derived).dump() << ',' << hyper_tested[i] << ',' << hyper_passed[i] << "\n";
  } else {
    char buf[256];
    out << "3 identities x " << samples << " samples (seed " << cfg.seed << ")\n";
    for (std::size_t i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof buf,
                    "  Res on %s vs c*%s^2*(p^2-4)^4: max rel err %.3g with c = 2985984, %.3g with c = 72^4\n",
                    slices[i], loci[i], stats[i].max_stated, stats[i].max_derived);
      out << buf;
      if (samples > 0) {
        std::snprintf(buf, sizeof buf, "    numeric / stated in [%.12g, %.12g]\n", stats[i].ratio_min,
                      stats[i].ratio_max);
        out << buf;
      }
    }
    for (std::size_t i = 0; i < 3; ++i)
      out << "  contact order 4 on the " << loci[i] << " = 0 locus (" << slices[i] << "): " << hyper_passed[i]
          << "/" << hyper_tested[i] << "\n";
    std::snprintf(buf, sizeof buf, "%s (threshold %.0e)\n", pass ? "PASS" : "FAIL", kThreshold);
    out << buf;
  }
  return pass ? kExitOk : kExitMismatch;
}

int cmd_orbits(const Config& cfg, const Params& p, std::ostream& out) {
  const auto orbits = fixed_orbits(p, cfg.flex_options().tol);
  if (cfg.format == "json") {
    Json list = Json::array();
    for (const auto& o : orbits) list.push_back(to_json(o));
    print_json(out, Json{{"params", {{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}}},
                         {"group_order", 4},
                         {"orbits", list}});
  } else if (cfg.format == "csv") {
    out << "slice,size,stabilizer_order,contact_order,x_re,x_im,y_re,y_im,z_re,z_im\n";
    for (const auto& o : orbits) {
      out << axis_name(o.slice) << "=0," << o.orbit.size() << ',' << o.orbit.stabilizer_order << ','
          << o.contact_order;
      for (int i = 0; i < 3; ++i) {
        const Complex z = o.orbit.points.front()[i];
        out << ',' << Json(z.real()).dump() << ',' << Json(z.imag()).dump();
      }
      out << "\n";
    }
  } else {
    out << orbits.size() << " orbits with nontrivial stabilizer under the Klein four-group\n";
    for (const auto& o : orbits) {
      const ProjPoint& r = o.orbit.points.front();
      out << "  " << axis_name(o.slice) << "=0  size " << o.orbit.size() << "  stabilizer " << o.orbit.stabilizer_order
          << "  contact " << o.contact_order << "  [" << format_fixed(r[0]) << " : " << format_fixed(r[1]) << " : "
          << format_fixed(r[2]) << "]" << (o.contact_order == 4 ? "  hyperflex" : "") << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flexes of Kuribayashi quartics and other plane quartics", "flexkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--tol", cfg.tol_scale, "Scale factor applied to every tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_flag("--verbose,-v", cfg.verbose, "Print diagnostics");

  std::string a = "0", b = "0", c = "0";
  auto* classify_cmd = app.add_subcommand("classify", "Classify the flexes of C(a, b, c)");
  auto* orbits_cmd = app.add_subcommand("orbits", "Fixed-point orbits of C(a, b, c) under sign changes");
  for (auto* sub : {classify_cmd, orbits_cmd}) {
    sub->add_option("--a", a, "Parameter a (RE, REi, RE+IMi)");
    sub->add_option("--b", b, "Parameter b");
    sub->add_option("--c", c, "Parameter c");
  }
  std::string path;
  auto* flexes_cmd = app.add_subcommand("flexes", "Flexes of the quartic form in a file");
  flexes_cmd->add_option("file", path, "Polynomial file")->required();
  int samples = 100;
  auto* verify_cmd = app.add_subcommand("verify", "Check the restricted resultant identities on random samples");
  verify_cmd->add_option("--samples", samples, "Number of parameter samples")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*classify_cmd) return cmd_classify(cfg, parse_params(a, b, c), out, err);
    if (*orbits_cmd) return cmd_orbits(cfg, parse_params(a, b, c), out);
    if (*flexes_cmd) return cmd_flexes(cfg, path, out, err);
    return cmd_verify(cfg, samples, out, err);
  } catch (const WeightSumMismatch& e) {
    err << "error: " << e.what() << "\n";
    if (cfg.verbose) err << to_json(e.partial().diagnostics).dump(2) << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace flexkit
