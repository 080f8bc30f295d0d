// fracdeg command-line frontend.
//
// Exit codes: 0 success, 1 validation or usage error, 2 a check failed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracdeg/constants.hpp"
#include "fracdeg/core.hpp"
#include "fracdeg/degree.hpp"
#include "fracdeg/jacobian.hpp"
#include "fracdeg/maps.hpp"
#include "fracdeg/report.hpp"
#include "fracdeg/sobolev.hpp"
#include "fracdeg/verify.hpp"

using namespace fracdeg;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailed = 2;

Vec2 parse_point(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, rest;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || std::getline(ss, rest))
    throw std::invalid_argument("expected a point as x,y but got '" + text + "'");
  std::size_t ia = 0, ib = 0;
  const double x = std::stod(a, &ia);
  const double y = std::stod(b, &ib);
  if (ia != a.size() || ib != b.size())
    throw std::invalid_argument("expected a point as x,y but got '" + text + "'");
  return Vec2(x, y);
}

struct MapOptions {
  std::string name = "identity";
  int k = 2;
  std::string constant = "2,0";
  double delta = 1.0;
  double distortion = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--map", name, "gallery map name")->capture_default_str();
    app->add_option("--k", k, "power exponent")->capture_default_str();
    app->add_option("--constant", constant, "value of the constant map")->capture_default_str();
    app->add_option("--delta", delta, "rotation map coefficient")->capture_default_str();
    app->add_option("--distort", distortion, "add distortion * (-y, x)");
  }

  MapField build() const {
    MapParams p;
    p.k = k;
    p.constant = parse_point(constant);
    p.delta = delta;
    if (distortion != 0.0) p.distortion = distortion;
    return gallery(name, p);
  }
};

struct BallOptions {
  std::string center = "0,0";
  double r = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--center", center, "ball center x,y")->capture_default_str();
    app->add_option("--r", r, "ball radius")->capture_default_str();
  }

  Domain build() const { return Domain::disk(parse_point(center), r); }
};

struct OutputOptions {
  std::string out;
  std::string format = "json";

  void attach(CLI::App* app, bool with_format = true) {
    app->add_option("--out", out, "output file (default stdout)");
    if (with_format)
      app->add_option("--format", format, "json or csv")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
  }

  void write(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out);
    f << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

FittedConstants load_or_default(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return FittedConstants{};
  return load_constants(path);
}

std::string suite_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  write_summary_csv(os, reports);
  return os.str();
}

int suite_exit(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.failed()) return kExitFailed;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Sobolev degree and Jacobian toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  MapOptions map_opt;
  BallOptions ball_opt;
  OutputOptions out_opt;
  double s = 0.75;
  double p_exp = 0.0;
  int N = 128;
  int M = 512;
  std::string scheme = "tensor-midpoint";
  double exclusion = 0.0;
  std::uint64_t seed = 7;
  std::string probe = "0,0";
  std::string phi_center = "0,0";
  double phi_radius = 0.2;
  std::vector<double> eps{0.08, 0.04, 0.02};
  std::string constants_path = default_constants_path();
  bool timing = false;

  // seminorm
  auto* sem = app.add_subcommand("seminorm", "Gagliardo seminorm of a map over a ball");
  map_opt.attach(sem);
  ball_opt.attach(sem);
  out_opt.attach(sem, false);
  sem->add_option("--s", s, "smoothness s in (0,1)")->capture_default_str();
  sem->add_option("--p", p_exp, "integrability (default n/s)");
  sem->add_option("--samples", N, "points per axis, or Monte-Carlo points")->capture_default_str();
  sem->add_option("--scheme", scheme, "tensor-midpoint or monte-carlo")->capture_default_str();
  sem->add_option("--exclusion", exclusion, "diagonal exclusion radius (default 2h)");
  sem->add_option("--seed", seed, "Monte-Carlo seed")->capture_default_str();

  // trace
  auto* tr = app.add_subcommand("trace", "Sample f on a circle");
  map_opt.attach(tr);
  ball_opt.attach(tr);
  out_opt.attach(tr);
  tr->add_option("--samples", M, "trace samples")->capture_default_str();

  // degree
  auto* deg = app.add_subcommand("degree", "Winding degree of a circle trace around a point");
  map_opt.attach(deg);
  ball_opt.attach(deg);
  out_opt.attach(deg);
  deg->add_option("--p", probe, "probe point x,y")->capture_default_str();
  deg->add_option("--samples", M, "trace samples")->capture_default_str();

  // jacobian / curl
  auto* jac = app.add_subcommand("jacobian", "Distributional Jacobian pairing with a bump");
  auto* curl = app.add_subcommand("curl", "Pairing of d1 f2 - d2 f1 with a bump");
  for (auto* sub : {jac, curl}) {
    map_opt.attach(sub);
    ball_opt.attach(sub);
    out_opt.attach(sub, false);
    sub->add_option("--phi-center", phi_center, "bump center x,y")->capture_default_str();
    sub->add_option("--phi-radius", phi_radius, "bump radius")->capture_default_str();
  }
  jac->add_option("--eps", eps, "decreasing mollification scales")->delimiter(',')->capture_default_str();

  // classify
  auto* cls = app.add_subcommand("classify", "Sign classification over the 5x5 bump family");
  map_opt.attach(cls);
  ball_opt.attach(cls);
  out_opt.attach(cls, false);
  cls->add_option("--eps", eps, "decreasing mollification scales")->delimiter(',')->capture_default_str();

  // suite-level options shared by check / suite / calibrate
  SuiteConfig config;
  std::string check_id;
  std::vector<int> resolutions{64};
  auto attach_suite = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "seed")->capture_default_str();
    sub->add_option("--s", config.s_values, "smoothness values")->delimiter(',');
    sub->add_option("--resolution", resolutions, "seminorm points per axis, ascending")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--eps", eps, "decreasing mollification scales")->delimiter(',')->capture_default_str();
    sub->add_option("--samples", M, "trace samples")->capture_default_str();
    sub->add_option("--gallery", config.gallery, "smooth gallery for fitted-constant checks")
        ->delimiter(',');
    sub->add_option("--constants", constants_path, "fitted constants file")->capture_default_str();
  };

  auto* chk = app.add_subcommand("check", "Run the checks whose id starts with <prop-id>");
  chk->add_option("prop-id", check_id, "check id or prefix, e.g. degree.monotonicity")->required();
  attach_suite(chk);
  out_opt.attach(chk);
  chk->add_flag("--timing", timing, "record runtime_ms");

  auto* sui = app.add_subcommand("suite", "Run every acceptance check");
  attach_suite(sui);
  out_opt.attach(sui);
  sui->add_option("--check", config.checks, "keep only ids with these prefixes")->delimiter(',');
  sui->add_flag("--timing", timing, "record runtime_ms");

  int calib_resolution = 128;
  auto* cal = app.add_subcommand("calibrate", "Fit the constant table on the smooth gallery");
  attach_suite(cal);
  cal->add_option("--fine", calib_resolution, "points per axis for the fit")->capture_default_str();
  cal->add_option("--out", out_opt.out, "constants file to write (default: the shipped table)");

  auto* gal = app.add_subcommand("gallery", "Map gallery");
  gal->require_subcommand(1);
  auto* gal_list = gal->add_subcommand("list", "List gallery maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    std::cerr << app.help();
    return kExitInvalid;
  }

  try {
    if (*sem) {
      const MapField f = map_opt.build();
      const Domain ball = ball_opt.build();
      FractionalParams params = FractionalParams::critical(s);
      if (p_exp != 0.0) params.p = p_exp;
      params.validate();
      QuadratureSpec quad;
      quad.scheme = parse_scheme(scheme);
      quad.sample_count = N;
      quad.seed = seed;
      if (exclusion > 0.0) quad.diagonal_exclusion_radius = exclusion;
      quad.validate(ball);
      const SeminormEstimate est = gagliardo_seminorm(f, ball, params, quad);
      json j;
      j["map"] = f.label;
      j["s"] = params.s;
      j["p"] = params.p;
      j["value"] = est.value;
      j["refinement_trend"] = est.refinement_trend;
      j["scheme"] = to_string(quad.scheme);
      j["samples"] = quad.sample_count;
      out_opt.write(dump(j));
    } else if (*tr) {
      const MapField f = map_opt.build();
      const CircleTrace t = trace_circle(f, parse_point(ball_opt.center), ball_opt.r, M);
      if (out_opt.format == "csv") {
        std::ostringstream os;
        write_trace_csv(os, t);
        out_opt.write(os.str());
      } else {
        json j;
        j["map"] = t.map_label;
        j["center"] = {t.center(0), t.center(1)};
        j["radius"] = t.radius;
        json pts = json::array();
        for (Eigen::Index k = 0; k < t.size(); ++k)
          pts.push_back({t.samples(0, k), t.samples(1, k)});
        j["samples"] = pts;
        out_opt.write(dump(j));
      }
    } else if (*deg) {
      const MapField f = map_opt.build();
      const CircleTrace t = trace_circle(f, parse_point(ball_opt.center), ball_opt.r, M);
      const DegreeResult d = winding_degree(t, parse_point(probe));
      if (out_opt.format == "json") {
        json j;
        j["map"] = f.label;
        j["degree"] = d.degree;
        j["trusted"] = d.trusted;
        j["min_distance"] = d.min_distance;
        j["angle_residual"] = d.angle_residual;
        j["max_increment"] = d.max_increment;
        out_opt.write(dump(j));
      } else {
        std::ostringstream os;
        os << "degree,trusted,min_distance,angle_residual,max_increment\n"
           << d.degree << ',' << (d.trusted ? 1 : 0) << ',' << d.min_distance << ','
           << d.angle_residual << ',' << d.max_increment << '\n';
        out_opt.write(os.str());
      }
      if (!d.trusted) std::cerr << "warning: sampling does not resolve the winding\n";
    } else if (*jac) {
      const MapField f = map_opt.build();
      const TestFunction phi(parse_point(phi_center), phi_radius);
      const PairingResult r = jac_pairing(f, phi, ball_opt.build(), eps);
      json j;
      j["map"] = f.label;
      j["pairing"] = r.value;
      j["extrapolated"] = r.extrapolated;
      if (r.exact) j["exact"] = *r.exact;
      j["converged"] = r.converged;
      j["phi_integral"] = r.phi_integral;
      json trend = json::array();
      for (const auto& [e, v] : r.epsilon_trend) trend.push_back({{"epsilon", e}, {"pairing", v}});
      j["epsilon_trend"] = trend;
      out_opt.write(dump(j));
    } else if (*curl) {
      const MapField f = map_opt.build();
      const TestFunction phi(parse_point(phi_center), phi_radius);
      json j;
      j["map"] = f.label;
      j["curl_pairing"] = curl_pairing(f, phi, ball_opt.build());
      j["phi_integral"] = bump_integral(phi);
      out_opt.write(dump(j));
    } else if (*cls) {
      const MapField f = map_opt.build();
      const Domain ball = ball_opt.build();
      SuiteConfig c;
      c.eps_seq = eps;
      const SignClassification r = classify_on(f, ball, c);
      json j;
      j["map"] = f.label;
      j["verdict"] = to_string(r.verdict);
      j["min_pairing"] = r.min_pairing;
      j["pairings"] = r.pairings;
      if (r.witness) {
        j["witness"] = {{"center", {r.witness->center()(0), r.witness->center()(1)}},
                        {"radius", r.witness->radius()}};
      }
      out_opt.write(dump(j));
    } else if (*chk || *sui || *cal) {
      config.seed = seed;
      config.resolutions = resolutions;
      config.eps_seq = eps;
      config.trace_samples = M;
      config.timing = timing;
      config.constants = load_or_default(constants_path);
      if (*chk) config.checks = {check_id};
      if (*cal) {
        const FittedConstants fitted = calibrate(config, calib_resolution);
        const std::string path = out_opt.out.empty() ? default_constants_path() : out_opt.out;
        save_constants(fitted, path);
        std::cout << dump(to_json(fitted));
        return kExitOk;
      }
      const auto reports = run_suite(config);
      if (reports.empty()) throw std::invalid_argument("no check matches '" + check_id + "'");
      out_opt.write(out_opt.format == "csv" ? suite_csv(reports) : dump(suite_to_json(reports)));
      return suite_exit(reports);
    } else if (*gal_list) {
      for (const auto& name : gallery_names()) std::cout << name << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
