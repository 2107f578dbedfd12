#include "kdist/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kdist/body_config.hpp"
#include "kdist/cantor.hpp"
#include "kdist/convex_body.hpp"
#include "kdist/decay_fit.hpp"
#include "kdist/dio.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/error.hpp"
#include "kdist/fourier.hpp"
#include "kdist/growth.hpp"
#include "kdist/measure.hpp"
#include "kdist/svg_plot.hpp"

namespace kdist {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fnum(double v) { return format_number(v); }

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + " ") {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

[[noreturn]] void bad_field(const IniSection& s, const std::string& key, const std::string& what) {
  throw ConfigError(s.line_of(key), s.name() + "." + key, what);
}

std::string choice(const IniSection& s, const std::string& key, const std::string& fallback,
                   std::initializer_list<const char*> allowed) {
  const std::string v = s.get_string(key, fallback);
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  bad_field(s, key, "expected one of {" + list + "}, got '" + v + "'");
}

std::vector<double> sorted_doubles(const IniSection& s, const std::string& key, std::vector<double> fallback) {
  std::vector<double> v = s.has(key) ? s.get_doubles(key) : std::move(fallback);
  if (v.empty()) bad_field(s, key, "list must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) bad_field(s, key, "list must be strictly increasing");
  }
  return v;
}

std::vector<int> sorted_ints(const IniSection& s, const std::string& key, std::vector<int> fallback) {
  std::vector<int> v;
  if (s.has(key)) {
    for (long long x : s.get_ints(key)) v.push_back(static_cast<int>(x));
  } else {
    v = std::move(fallback);
  }
  if (v.empty()) bad_field(s, key, "list must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) bad_field(s, key, "list must be strictly increasing");
  }
  return v;
}

std::uint64_t seed_of(const IniSection& s, const RunOptions& opt, const IniSection& run) {
  if (opt.seed) return *opt.seed;
  if (s.has("seed")) return static_cast<std::uint64_t>(s.get_int("seed", 0));
  return static_cast<std::uint64_t>(run.get_int("seed", 0));
}

ConvexBody load_body(const IniDocument& doc, const RunOptions& opt) {
  IniSection body = doc.section("body");
  if (opt.seed && body.get_string("kind", "") == "random_polygon") {
    body.set("seed", std::to_string(*opt.seed), body.line_of("kind"));
  }
  return body_from_section(body);
}

/// Family keys shared by [distset], [fractal] and [convert].
PointSetFamily family_from(const IniSection& s, const RunOptions& opt, const IniSection& run) {
  PointSetFamily f;
  const std::string kind = choice(s, "family", "lattice", {"lattice", "rotated", "perturbed"});
  f.kind = kind == "lattice" ? Provenance::lattice
           : kind == "rotated" ? Provenance::rotated_lattice
                               : Provenance::perturbed_lattice;
  f.dim = static_cast<int>(s.get_int("dim", 2));
  if (f.dim < 1) bad_field(s, "dim", "dimension must be >= 1");
  if (s.has("angle") && s.has("angle_degrees")) bad_field(s, "angle", "give either angle or angle_degrees");
  f.angle = s.has("angle_degrees") ? s.get_double("angle_degrees", 0.0) / 180.0 * std::numbers::pi
                                   : s.get_double("angle", 0.0);
  f.seed = seed_of(s, opt, run);
  f.jitter = s.get_double("jitter", 0.25);
  if (f.kind == Provenance::rotated_lattice && f.dim != 2) bad_field(s, "dim", "rotated lattices are planar");
  if (f.kind == Provenance::perturbed_lattice && !(f.jitter >= 0.0 && f.jitter < 0.5)) {
    bad_field(s, "jitter", "jitter must lie in [0, 0.5)");
  }
  return f;
}

Json family_json(const PointSetFamily& f) {
  return Json{{"kind", to_string(f.kind)}, {"dim", f.dim}, {"angle", f.angle}, {"seed", f.seed}, {"jitter", f.jitter}};
}

Json body_json(const ConvexBody& b) {
  return Json{{"kind", to_string(b.kind())}, {"description", b.describe()}, {"dim", b.dim()}};
}

std::string rational_text(const Rational& r) { return to_string(r); }

Json rational_json(const Rational& r) { return Json{{"exact", rational_text(r)}, {"value", to_double(r)}}; }

Json samples_json(const std::vector<DecaySample>& s) {
  Json a = Json::array();
  for (const auto& x : s) a.push_back(Json{{"radius", x.radius}, {"value", json_number(x.value)}});
  return a;
}

Json profile_json(const DecayProfile& p) {
  return Json{{"gamma", p.gamma},
              {"C", p.C},
              {"residual", p.residual},
              {"log_power", p.log_power},
              {"log_correction", p.log_correction},
              {"dropped", p.dropped},
              {"samples", p.samples.size()}};
}

void range_verdict(RunOutput& out, const IniSection& s, const std::string& name, const std::string& lo_key,
                   const std::string& hi_key, double value, std::optional<std::pair<double, double>> fallback) {
  if (s.has(lo_key) || s.has(hi_key)) {
    const double lo = s.get_double(lo_key, -std::numeric_limits<double>::infinity());
    const double hi = s.get_double(hi_key, std::numeric_limits<double>::infinity());
    out.report.verdicts.push_back(Verdict::within(name, value, lo, hi));
  } else if (fallback) {
    out.report.verdicts.push_back(Verdict::within(name, value, fallback->first, fallback->second));
  }
}

// ---------------------------------------------------------------------------

void body_inspect(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const ConvexBody body = load_body(doc, opt);
  const IniSection& s = doc.section_or_empty("inspect");
  s.check_keys({"directions", "eps_levels"});
  Json r = body_json(body);
  r["volume"] = body.volume();
  r["inradius"] = body.inradius();
  r["circumradius"] = body.circumradius();
  r["diameter"] = body.diameter();
  if (body.dim() == 2) {
    r["surface_area"] = body.surface_area();
    const int n = static_cast<int>(s.get_int("directions", 360));
    if (n < 4) bad_field(s, "directions", "need at least 4 directions");
    const int levels = static_cast<int>(s.get_int("eps_levels", 14));
    if (levels < 6) bad_field(s, "eps_levels", "need at least 6 eps levels");
    std::vector<double> eps;
    for (int k = 1; k <= levels; ++k) {
      const double e = std::ldexp(1.0, -k);
      if (e < 2.0 * body.inradius()) eps.push_back(e);
    }
    const CurvatureReport cur = curvature_condition(body, eps, n);
    r["curvature"] = Json{{"c_sup", cur.c_sup},
                          {"satisfied", cur.satisfied},
                          {"worst_theta", cur.worst_theta},
                          {"flat_theta", cur.flat_theta ? Json(*cur.flat_theta) : Json(nullptr)},
                          {"directions", cur.n_directions},
                          {"skipped", cur.skipped}};
    CsvTable csv({"theta", "support", "width"});
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n;
      const Direction w = Direction::planar(th);
      csv.add_row({fnum(th), fnum(body.support(w)), fnum(body.width(w))});
    }
    out.artifacts["csv"] = csv.str();
  }
  out.report.results = r;
}

void decay_scan(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const ConvexBody body = load_body(doc, opt);
  const IniSection& s = doc.section("decay");
  s.check_keys({"measure", "statistic", "theta", "r_min", "r_max", "sampling", "grid_points", "bins_per_octave",
                "log_correction", "method", "gamma_min", "gamma_max", "probes_per_period", "refine_peaks"});
  const std::string measure = choice(s, "measure", "surface", {"surface", "body"});
  const std::string stat = choice(s, "statistic", "pointwise", {"pointwise", "l1", "l2"});
  const std::string sampling = choice(s, "sampling", "envelope", {"envelope", "grid"});
  const std::string method_name = choice(s, "method", "automatic", {"automatic", "quadrature"});
  const TransformMethod method = method_name == "quadrature" ? TransformMethod::quadrature : TransformMethod::automatic;
  const double theta = s.get_double("theta", 0.3);
  const double r_min = s.get_double("r_min", 8.0), r_max = s.get_double("r_max", 512.0);
  if (!(r_min > 0.0 && r_max > r_min)) bad_field(s, "r_max", "need 0 < r_min < r_max");
  const bool log_corr = s.get_bool("log_correction", stat == "l1");
  const MeasureKind kind = measure == "surface" ? MeasureKind::surface : MeasureKind::body;
  if (body.dim() != 2 && stat != "pointwise") bad_field(s, "statistic", "spherical averages are planar");

  std::function<double(double)> f;
  if (stat == "pointwise") {
    std::vector<double> w(static_cast<std::size_t>(body.dim()), 0.0);
    w[0] = std::cos(theta);
    if (body.dim() >= 2) w[1] = std::sin(theta);
    const Direction omega = Direction::from_vector(w);
    f = [&body, omega, kind, method](double R) {
      const Frequency xi = Frequency::along(omega, R);
      return std::abs(kind == MeasureKind::surface ? surface_ft(body, xi, method) : body_ft(body, xi, method));
    };
  } else {
    const int p = stat == "l1" ? 1 : 2;
    f = [&body, p, kind, method](double R) { return spherical_average(body, R, p, kind, method); };
  }
  std::vector<DecaySample> samples;
  if (sampling == "envelope") {
    EnvelopeOptions eo;
    eo.bins_per_octave = static_cast<int>(s.get_int("bins_per_octave", 2));
    if (eo.bins_per_octave < 1) bad_field(s, "bins_per_octave", "must be >= 1");
    eo.period = 1.0 / body.diameter();
    eo.probes_per_period = s.get_double("probes_per_period", 0.0);
    eo.refine_peaks = static_cast<int>(s.get_int("refine_peaks", 1));
    if (eo.probes_per_period < 0.0) bad_field(s, "probes_per_period", "must be >= 0");
    if (eo.refine_peaks < 1) bad_field(s, "refine_peaks", "must be >= 1");
    samples = envelope_maxima(f, r_min, r_max, eo);
  } else {
    const int n = static_cast<int>(s.get_int("grid_points", 32));
    if (n < 8) bad_field(s, "grid_points", "need at least 8 points");
    for (double R : log_grid(r_min, r_max, n)) samples.push_back({R, f(R)});
  }
  const DecayProfile prof = decay_fit(samples, log_corr, body.dim());

  std::optional<std::pair<double, double>> def;
  const double d = body.dim();
  if (stat == "pointwise" && kind == MeasureKind::surface) def = std::pair{(d - 1) / 2 - 0.05, (d - 1) / 2 + 0.05};
  if (stat == "l2" && kind == MeasureKind::body) def = std::pair{(d + 1) / 2 - 0.1, (d + 1) / 2 + 0.1};
  if (stat == "l1" && kind == MeasureKind::surface) def = std::pair{0.85, 1.0};
  range_verdict(out, s, "gamma", "gamma_min", "gamma_max", prof.gamma, def);

  out.report.results = Json{{"body", body_json(body)},
                            {"measure", measure},
                            {"statistic", stat},
                            {"sampling", sampling},
                            {"method", method_name},
                            {"theta", theta},
                            {"fit", profile_json(prof)},
                            {"samples", samples_json(samples)}};
  CsvTable csv({"radius", "value"});
  for (const auto& x : samples) csv.add_row({fnum(x.radius), fnum(x.value)});
  out.artifacts["csv"] = csv.str();
  PlotData pd;
  pd.samples = samples;
  pd.fit = prof;
  pd.title = (stat == "pointwise" ? "|" : stat + " average of |") + std::string(measure == "surface" ? "sigma" : "chi") +
             "_hat| for " + body.describe();
  pd.y_label = "|transform|";
  out.artifacts["svg"] = emit_plot(pd);
}

void distset_scan(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const ConvexBody body = load_body(doc, opt);
  const IniSection& s = doc.section("distset");
  s.check_keys({"family", "dim", "angle", "angle_degrees", "seed", "jitter", "q_list", "mode", "fast_path", "rel_tol",
                "alpha", "slack", "beta_min", "beta_max", "expect_class", "min_gap_max", "min_gap_trend"});
  const PointSetFamily fam = family_from(s, opt, doc.section_or_empty("run"));
  const std::vector<int> qs = sorted_ints(s, "q_list", {16, 32, 64, 128, 256});
  const std::string mode_name = choice(s, "mode", "float", {"float", "exact"});
  DistanceOptions dopt;
  dopt.fast_path = s.get_bool("fast_path", true);
  dopt.rel_tol = s.get_double("rel_tol", 1e-9);
  const double alpha = s.get_double("alpha", 0.0);
  const double slack = s.get_double("slack", 0.05);
  const DistanceMode mode = mode_name == "exact" ? DistanceMode::exact_rational : DistanceMode::float_tol;
  if (body.dim() != fam.dim) bad_field(s, "dim", "family dimension differs from the body");

  const GrowthReport rep = growth_scan(fam, body, qs, alpha, slack, mode, dopt);
  Json pts = Json::array();
  CsvTable csv({"q", "count", "min_gap"});
  for (const auto& p : rep.points) {
    pts.push_back(Json{{"q", p.q}, {"count", p.count}, {"min_gap", json_number(p.min_gap)}});
    csv.add_row({std::to_string(p.q), std::to_string(p.count), fnum(p.min_gap)});
  }
  Json r{{"body", body_json(body)},
         {"family", family_json(fam)},
         {"mode", mode_name},
         {"points", pts},
         {"beta", rep.beta},
         {"intercept", rep.intercept},
         {"residual", rep.residual},
         {"fit_min_q", rep.fit_min_q}};
  if (alpha > 0.0) {
    r["alpha"] = rep.alpha;
    r["bound"] = rep.bound;
    r["slack"] = rep.slack;
    out.report.verdicts.push_back(Verdict::at_least("beta vs d/alpha - slack", rep.beta, rep.bound - rep.slack));
  }
  range_verdict(out, s, "beta", "beta_min", "beta_max", rep.beta, std::nullopt);
  if (fam.dim == 2) {
    const Polygonality cls = polygonality_probe(rep);
    r["classification"] = to_string(cls);
    if (s.has("expect_class")) {
      const std::string want = choice(s, "expect_class", "", {"polygon_like", "curved_like", "inconclusive"});
      out.report.verdicts.push_back(Verdict::holds("classification == " + want, to_string(cls) == want));
    }
  }
  if (s.has("min_gap_max")) {
    out.report.verdicts.push_back(
        Verdict::below("min_gap at largest q", rep.points.back().min_gap, s.get_double("min_gap_max", 0.0)));
  }
  if (s.has("min_gap_trend")) {
    const std::string want = choice(s, "min_gap_trend", "", {"decreasing", "constant"});
    bool ok = true;
    for (std::size_t i = 1; i < rep.points.size(); ++i) {
      const double a = rep.points[i - 1].min_gap, b = rep.points[i].min_gap;
      ok = ok && (want == "decreasing" ? b < a * (1.0 - dopt.rel_tol) : std::abs(b - a) <= dopt.rel_tol * a);
    }
    out.report.verdicts.push_back(Verdict::holds("min_gap " + want, ok));
  }
  out.report.results = r;
  out.artifacts["csv"] = csv.str();

  PlotData pd;
  for (const auto& p : rep.points) pd.samples.push_back({static_cast<double>(p.q), static_cast<double>(p.count)});
  DecayProfile fit;
  fit.gamma = -rep.beta;
  fit.C = std::exp(rep.intercept);
  fit.residual = rep.residual;
  pd.fit = fit;
  pd.title = "distinct distances, " + fam.describe() + ", " + body.describe();
  pd.x_label = "q";
  pd.y_label = "#distances";
  out.artifacts["svg"] = emit_plot(pd);
}

void fractal_build(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const IniSection& s = doc.section("fractal");
  const std::string what =
      choice(s, "construction", "cantor", {"cantor", "difference", "product", "dio", "energy"});
  Json r{{"construction", what}};
  auto spec_from = [&] {
    CantorSpec c{static_cast<int>(s.get_int("m", 2)), static_cast<int>(s.get_int("depth", 8))};
    try {
      c.validate();
    } catch (const std::exception& e) {
      bad_field(s, s.has("depth") ? "depth" : "m", e.what());
    }
    r["m"] = c.m;
    r["depth"] = c.depth;
    return c;
  };
  auto levels_from = [&](const CantorSpec& c) {
    if (!s.has("levels")) return dyadic_levels(c);
    return sorted_ints(s, "levels", {});
  };
  auto dim_json = [](const BoxDimResult& b) {
    Json counts = Json::array();
    for (const auto& [k, n] : b.counts) counts.push_back(Json{{"level", k}, {"count", n}});
    return Json{{"dimension", b.dimension}, {"residual", b.residual}, {"counts", counts}};
  };

  if (what == "cantor" || what == "product") {
    s.check_keys({"construction", "m", "depth", "copies", "levels", "dim_min", "dim_max"});
    const CantorSpec c = spec_from();
    const int copies = what == "product" ? static_cast<int>(s.get_int("copies", 2)) : 1;
    if (copies < 1) bad_field(s, "copies", "must be >= 1");
    const IntervalUnion u = cantor_build(c);
    const BoxDimResult bd = box_dim_product(u, copies, levels_from(c));
    r["copies"] = copies;
    r["intervals"] = u.size();
    r["total_length"] = rational_json(u.total_length());
    r["box_dim"] = dim_json(bd);
    r["reference_dimension"] = copies * std::log(static_cast<double>(c.m)) / std::log(2.0 * c.m);
    range_verdict(out, s, "box dimension", "dim_min", "dim_max", bd.dimension, std::nullopt);
    out.artifacts["csv"] = u.to_csv();
  } else if (what == "difference") {
    s.check_keys({"construction", "m", "depth", "length_max"});
    const CantorSpec c = spec_from();
    const DifferenceCover dc = difference_cover(c);
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(2 * c.m - 1), static_cast<unsigned long>(c.depth));
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * c.m), static_cast<unsigned long>(c.depth));
    Rational expected(mpz_class(2 * num), den);
    expected.canonicalize();
    r["pre_merge_count"] = dc.pre_merge_count;
    r["pre_merge_length"] = rational_json(dc.pre_merge_length);
    r["expected_pre_merge_length"] = rational_json(expected);
    r["merged_intervals"] = dc.merged.size();
    r["merged_length"] = rational_json(dc.merged.total_length());
    out.report.verdicts.push_back(Verdict::holds("pre-merge length == 2 (2m-1)^n (2m)^-n", dc.pre_merge_length == expected));
    if (s.has("length_max")) {
      out.report.verdicts.push_back(
          Verdict::below("merged cover length", to_double(dc.merged.total_length()), s.get_double("length_max", 0)));
    }
    out.artifacts["csv"] = dc.merged.to_csv();
  } else if (what == "dio") {
    s.check_keys({"construction", "family", "dim", "angle", "angle_degrees", "seed", "jitter", "q", "s", "mode"});
    DioSpec spec;
    spec.family = family_from(s, opt, doc.section_or_empty("run"));
    spec.q = static_cast<int>(s.get_int("q", 4));
    spec.s = s.get_double("s", 1.0);
    try {
      spec.validate();
    } catch (const ArgumentError& e) {
      bad_field(s, spec.q < 1 ? "q" : "s", e.what());
    }
    const DioSet E = dio_build(spec);
    r["family"] = family_json(spec.family);
    r["q"] = spec.q;
    r["s"] = spec.s;
    r["cube_count"] = E.cube_count();
    r["half_side"] = rational_json(E.half_side);
    r["disjoint"] = E.disjoint;
    if (E.product_factors) {
      r["factor_intervals"] = E.product_factors->front().size();
      r["factor_length"] = rational_json(E.product_factors->front().total_length());
    }
    CsvTable csv(E.dim == 2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"coords"});
    for (const auto& c : E.centers) {
      if (E.dim == 2) {
        csv.add_row({fnum(c[0]), fnum(c[1])});
      } else {
        std::string joined;
        for (std::size_t j = 0; j < c.size(); ++j) joined += (j ? " " : "") + fnum(c[j]);
        csv.add_row({joined});
      }
    }
    if (doc.has_section("body")) {
      const ConvexBody body = load_body(doc, opt);
      const std::string mode_name = choice(s, "mode", "float", {"float", "exact"});
      const DeltaCover dc = delta_cover(spec, body, mode_name == "exact" ? DistanceMode::exact_rational
                                                                          : DistanceMode::float_tol);
      r["delta_cover"] = Json{{"count", dc.count},
                              {"kappa", dc.kappa},
                              {"interval_length", dc.interval_length},
                              {"pre_merge_length", dc.pre_merge_length},
                              {"merged_length", to_double(dc.cover.total_length())},
                              {"merged_intervals", dc.cover.size()}};
    }
    out.artifacts["csv"] = csv.str();
  } else {
    s.check_keys({"construction", "measure", "m", "depth", "copies", "point", "gammas", "T", "expect"});
    const std::string mname = choice(s, "measure", "cantor", {"cantor", "point"});
    std::optional<AtomicMeasure> mu;
    if (mname == "point") {
      std::vector<double> x = s.has("point") ? s.get_doubles("point") : std::vector<double>{0.0, 0.0};
      if (x.size() != 2) bad_field(s, "point", "energy integrals are planar: give 2 coordinates");
      mu = AtomicMeasure::point_mass(x);
      r["measure"] = "point";
    } else {
      const CantorSpec c = spec_from();
      const int copies = static_cast<int>(s.get_int("copies", 2));
      if (copies != 2) bad_field(s, "copies", "energy integrals are planar: copies must be 2");
      mu = natural_measure(c, copies);
      r["measure"] = "cantor product";
      r["atoms"] = mu->size();
    }
    const std::vector<double> gammas = sorted_doubles(s, "gammas", {0.8, 1.2});
    const std::vector<double> Ts = sorted_doubles(s, "T", {16, 32, 64});
    std::vector<std::string> expect;
    if (s.has("expect")) {
      expect = words(s.require("expect"));
      if (expect.size() != gammas.size()) bad_field(s, "expect", "one expectation per gamma is required");
      for (const auto& e : expect) {
        if (e != "growing" && e != "plateauing" && e != "any") bad_field(s, "expect", "unknown expectation '" + e + "'");
      }
    }
    CsvTable csv({"gamma", "T", "integral", "increment"});
    Json ladders = Json::array();
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      if (!(gammas[g] > 0.0 && gammas[g] < 2.0)) bad_field(s, "gammas", "gamma must lie in (0, 2)");
      const EnergyLadder L = energy_ladder(*mu, gammas[g], Ts);
      for (std::size_t i = 0; i < L.T.size(); ++i) {
        csv.add_row({fnum(gammas[g]), fnum(L.T[i]), fnum(L.integrals[i]), i ? fnum(L.increments[i - 1]) : ""});
      }
      ladders.push_back(Json{{"gamma", gammas[g]},
                             {"T", L.T},
                             {"integrals", L.integrals},
                             {"increments", L.increments},
                             {"growing", L.growing()},
                             {"plateauing", L.plateauing()}});
      if (!expect.empty() && expect[g] != "any") {
        out.report.verdicts.push_back(Verdict::holds("gamma " + fnum(gammas[g]) + " increments " + expect[g],
                                                     expect[g] == "growing" ? L.growing() : L.plateauing()));
      }
    }
    r["ladders"] = ladders;
    out.artifacts["csv"] = csv.str();
  }
  out.report.results = r;
}

void convert_demo(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const ConvexBody body = load_body(doc, opt);
  const IniSection& s = doc.section("convert");
  s.check_keys({"family", "dim", "angle", "angle_degrees", "seed", "jitter", "q_list", "alpha", "s", "mode"});
  const PointSetFamily fam = family_from(s, opt, doc.section_or_empty("run"));
  if (body.dim() != fam.dim) bad_field(s, "dim", "family dimension differs from the body");
  const double alpha = s.get_double("alpha", 0.0);
  const double sv = s.has("s") ? s.get_double("s", 1.0) : alpha;
  if (!(sv > 0.0 && sv <= fam.dim)) bad_field(s, s.has("s") ? "s" : "alpha", "s must lie in (0, d]");
  const std::vector<int> qs = sorted_ints(s, "q_list", {8, 16, 32, 64});
  const std::string mode_name = choice(s, "mode", "float", {"float", "exact"});
  const DistanceMode mode = mode_name == "exact" ? DistanceMode::exact_rational : DistanceMode::float_tol;

  CsvTable csv({"q", "count", "interval_length", "pre_merge_length", "merged_length"});
  std::vector<GrowthPoint> gp;
  Json rows = Json::array();
  std::vector<double> lengths;
  for (int q : qs) {
    const DioSpec spec{fam, q, sv};
    const DeltaCover dc = delta_cover(spec, body, mode);
    const double merged = to_double(dc.cover.total_length());
    gp.push_back({q, dc.count, 0.0});
    lengths.push_back(dc.pre_merge_length);
    csv.add_row({std::to_string(q), std::to_string(dc.count), fnum(dc.interval_length), fnum(dc.pre_merge_length),
                 fnum(merged)});
    rows.push_back(Json{{"q", q},
                        {"count", dc.count},
                        {"interval_length", dc.interval_length},
                        {"pre_merge_length", dc.pre_merge_length},
                        {"merged_length", merged}});
  }
  const GrowthReport rep = growth_from_counts(gp, fam.dim);
  const double exponent = rep.beta - fam.dim / sv;
  out.report.results = Json{{"body", body_json(body)},
                            {"family", family_json(fam)},
                            {"s", sv},
                            {"alpha", alpha},
                            {"rows", rows},
                            {"beta", rep.beta},
                            {"length_exponent", exponent},
                            {"dimension_bound", sv * rep.beta / fam.dim}};
  if (exponent < 0.0) {
    out.report.verdicts.push_back(Verdict::below("cover length at largest q vs smallest", lengths.back(), lengths.front()));
  }
  out.artifacts["csv"] = csv.str();
}

void lemma_check(const IniDocument& doc, const RunOptions& opt, RunOutput& out) {
  const ConvexBody body = load_body(doc, opt);
  const IniSection& s = doc.section("lemma");
  const std::string which = choice(s, "which", "11", {"11", "12", "curvature"});
  if (body.dim() != 2) throw CapabilityError("lemma checks are planar");
  Json r{{"body", body_json(body)}, {"which", which}};
  if (which == "11") {
    s.check_keys({"which", "t_min", "t_max", "t_count", "theta_count", "spread_max"});
    const double t_min = s.get_double("t_min", 4.0), t_max = s.get_double("t_max", 1024.0);
    if (!(t_min > 0.0 && t_max > t_min)) bad_field(s, "t_max", "need 0 < t_min < t_max");
    const int nt = static_cast<int>(s.get_int("t_count", 161));
    const int nth = static_cast<int>(s.get_int("theta_count", 24));
    if (nt < 2) bad_field(s, "t_count", "need at least 2 values");
    if (nth < 1) bad_field(s, "theta_count", "need at least 1 direction");
    std::vector<double> th;
    for (int k = 0; k < nth; ++k) th.push_back(2.0 * std::numbers::pi * k / nth + 0.05);
    const Lemma11Report rep = lemma11_check(body, log_grid(t_min, t_max, nt), th);
    Json oct = Json::array();
    for (const auto& [o, v] : rep.octave_max) oct.push_back(Json{{"octave", o}, {"max_ratio", v}});
    r["max_ratio"] = rep.max_ratio;
    r["octave_spread"] = rep.octave_spread();
    r["octaves"] = oct;
    r["skipped"] = rep.skipped;
    out.report.verdicts.push_back(Verdict::at_most("octave spread", rep.octave_spread(), s.get_double("spread_max", 2.0)));
    CsvTable csv({"t", "theta", "ratio"});
    for (const auto& e : rep.entries) csv.add_row({fnum(e.t), fnum(e.theta), fnum(e.ratio)});
    out.artifacts["csv"] = csv.str();
  } else if (which == "12") {
    s.check_keys({"which", "radii", "deltas", "frequencies", "thetas", "expect", "refine_max"});
    Lemma12Grid g;
    g.radii = sorted_doubles(s, "radii", {4, 8, 16});
    g.deltas = sorted_doubles(s, "deltas", {0.05, 0.1, 0.2, 0.4});
    g.frequencies = sorted_doubles(s, "frequencies", {32, 64, 128, 256, 512, 1024});
    g.thetas = s.has("thetas") ? s.get_doubles("thetas") : std::vector<double>{0.0, 0.3, 0.7, 1.1};
    const std::string expect = choice(s, "expect", "bounded", {"bounded", "diverges"});
    const Lemma12Report a = lemma12_check(body, g);
    const Lemma12Report b = lemma12_check(body, refine(g));
    const double change = std::max(a.max_C, b.max_C) / std::min(a.max_C, b.max_C);
    Json fm = Json::array();
    for (const auto& [f, v] : a.frequency_max) fm.push_back(Json{{"frequency", f}, {"max_ratio", v}});
    r["max_C"] = a.max_C;
    r["refined_max_C"] = b.max_C;
    r["refinement_change"] = change;
    r["frequency_growth"] = a.frequency_growth;
    r["frequency_max"] = fm;
    r["curvature_satisfied"] = a.curvature_satisfied;
    if (expect == "bounded") {
      out.report.verdicts.push_back(Verdict::below("refinement change", change, s.get_double("refine_max", 2.0)));
      out.report.verdicts.push_back(Verdict::below("frequency growth", a.frequency_growth, 2.0));
    } else {
      out.report.verdicts.push_back(Verdict::at_least("frequency growth", a.frequency_growth, 2.0));
    }
    CsvTable csv({"radius", "delta", "frequency", "theta", "value", "bound"});
    for (const auto& e : a.entries) {
      csv.add_row({fnum(e.radius), fnum(e.delta), fnum(e.frequency), fnum(e.theta), fnum(e.value), fnum(e.bound)});
    }
    out.artifacts["csv"] = csv.str();
  } else {
    s.check_keys({"which", "directions", "eps_levels", "expect"});
    const int n = static_cast<int>(s.get_int("directions", 360));
    const int levels = static_cast<int>(s.get_int("eps_levels", 14));
    if (n < 4) bad_field(s, "directions", "need at least 4 directions");
    std::vector<double> eps;
    for (int k = 1; k <= levels; ++k) {
      const double e = std::ldexp(1.0, -k);
      if (e < 2.0 * body.inradius()) eps.push_back(e);
    }
    const CurvatureReport cur = curvature_condition(body, eps, n);
    r["c_sup"] = cur.c_sup;
    r["satisfied"] = cur.satisfied;
    r["worst_theta"] = cur.worst_theta;
    r["flat_theta"] = cur.flat_theta ? Json(*cur.flat_theta) : Json(nullptr);
    if (s.has("expect")) {
      const std::string want = choice(s, "expect", "", {"satisfied", "violated"});
      out.report.verdicts.push_back(Verdict::holds("curvature condition " + want, cur.satisfied == (want == "satisfied")));
    }
  }
  out.report.results = r;
}

Json config_echo(const IniDocument& doc) {
  Json c = Json::object();
  for (const auto& name : doc.section_names()) {
    Json sec = Json::object();
    for (const auto& [k, v] : doc.section(name).entries()) sec[k] = v.first;
    c[name] = sec;
  }
  return c;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + p.string());
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::body_inspect: return "body_inspect";
    case Command::decay_scan: return "decay_scan";
    case Command::distset_scan: return "distset_scan";
    case Command::fractal_build: return "fractal_build";
    case Command::convert_demo: return "convert_demo";
    case Command::lemma_check: return "lemma_check";
  }
  return "unknown";
}

RunOutput run(Command command, const IniDocument& config, const RunOptions& options) {
  const IniSection& run_sec = config.section_or_empty("run");
  run_sec.check_keys({"seed", "name", "plot"});
  RunOutput out;
  out.report.command = to_string(command);
  out.report.config = config_echo(config);
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  out.report.meta = Json{{"tool", "kdist"},
                         {"version", kVersion},
                         {"seed", options.seed ? *options.seed : static_cast<std::uint64_t>(run_sec.get_int("seed", 0))},
                         {"timestamp", epoch ? Json(std::string(epoch)) : Json(nullptr)}};
  switch (command) {
    case Command::body_inspect: body_inspect(config, options, out); break;
    case Command::decay_scan: decay_scan(config, options, out); break;
    case Command::distset_scan: distset_scan(config, options, out); break;
    case Command::fractal_build: fractal_build(config, options, out); break;
    case Command::convert_demo: convert_demo(config, options, out); break;
    case Command::lemma_check: lemma_check(config, options, out); break;
  }
  if (!run_sec.get_bool("plot", true)) out.artifacts.erase("svg");
  out.artifacts["json"] = out.report.dump();
  out.exit_code = out.report.passed() ? 0 : kThresholdExitCode;
  if (options.write_files) {
    const std::string stem = run_sec.get_string("name", to_string(command));
    if (stem.empty() || stem.find('/') != std::string::npos) bad_field(run_sec, "name", "name must be a plain file stem");
    std::filesystem::create_directories(options.out_dir);
    for (const auto& [ext, text] : out.artifacts) write_file(options.out_dir / (stem + "." + ext), text);
  }
  return out;
}

}  // namespace kdist
