// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// values. Exit status 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "kdist/cantor.hpp"
#include "kdist/convex_body.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/experiments.hpp"
#include "kdist/growth.hpp"
#include "kdist/ini.hpp"
#include "kdist/measure.hpp"
#include "kdist/parallel.hpp"

using namespace kdist;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json run_json(Command c, const std::string& text) {
  RunOptions o;
  o.write_files = false;
  return run(c, IniDocument::parse_string(text), o).report.to_json();
}

double fitted_gamma(const std::string& body, const std::string& decay) {
  return run_json(Command::decay_scan, "[body]\n" + body + "\n[decay]\n" + decay + "\n")["results"]["fit"]["gamma"]
      .get<double>();
}

const char* kDisk = "kind = disk";
const char* kSquare = "kind = square";
const char* kEllipse = "kind = ellipsoid\nsemi_axes = 2 1";
const char* kHexagon = "kind = random_polygon\nhalf_vertices = 3\nseed = 7";

Outcome curved_pointwise_decay() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, body] : {std::pair{"disk", kDisk}, std::pair{"ellipse(2,1)", kEllipse}}) {
    const double g = fitted_gamma(body, "measure = surface\nstatistic = pointwise\nr_min = 8\nr_max = 512");
    o.require(std::abs(g - 0.5) <= 0.05, std::string(name) + " gamma=" + num(g));
  }
  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime " + num(t, 3) + " s < 60 s");
  return o;
}

Outcome l2_average_decay() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, body] : {std::pair{"disk", kDisk}, std::pair{"square", kSquare},
                                   std::pair{"ellipse(2,1)", kEllipse}, std::pair{"hexagon", kHexagon}}) {
    const double g = fitted_gamma(body, "measure = body\nstatistic = l2\nr_min = 8\nr_max = 512");
    o.require(std::abs(g - 1.5) <= 0.1, std::string(name) + " slope=" + num(-g));
  }
  const double t = seconds_since(t0);
  o.require(t < 300.0, "runtime " + num(t, 3) + " s < 300 s");
  return o;
}

Outcome polyhedral_l1_decay() {
  Outcome o;
  const double g = fitted_gamma(kSquare, "measure = surface\nstatistic = l1\nlog_correction = true\nr_min = 8\nr_max = 512");
  o.require(g >= 0.85 && g <= 1.0, "log-corrected gamma=" + num(g) + " in [0.85, 1]");
  const double plain =
      fitted_gamma(kSquare, "measure = surface\nstatistic = l1\nlog_correction = false\nr_min = 8\nr_max = 512");
  o.detail += "; plain power-law gamma=" + num(plain) + " (diagnostic)";
  const double normal = fitted_gamma(kSquare, "measure = surface\nstatistic = pointwise\ntheta = 0\nr_min = 8\nr_max = 512");
  o.require(normal <= 0.05, "side-normal gamma=" + num(normal) + " <= 0.05");
  return o;
}

Outcome chord_ratio_bounded() {
  Outcome o;
  for (const auto& [name, body] : {std::pair{"disk", kDisk}, std::pair{"square", kSquare},
                                   std::pair{"ellipse(2,1)", kEllipse}}) {
    const Json r = run_json(Command::lemma_check, std::string("[body]\n") + body +
                                                      "\n[lemma]\nwhich = 11\nt_min = 4\nt_max = 1024\nt_count = 161\n"
                                                      "theta_count = 24\n");
    const double spread = r["results"]["octave_spread"].get<double>();
    o.require(spread <= 2.0, std::string(name) + " octave spread=" + num(spread));
  }
  return o;
}

Outcome annulus_bound() {
  Outcome o;
  const std::string grid = "which = 12\nradii = 4 8 16\ndeltas = 0.05 0.1 0.2 0.4\nfrequencies = 32 64 128 256 512 1024\n";
  const Json disk = run_json(Command::lemma_check, std::string("[body]\n") + kDisk + "\n[lemma]\n" + grid +
                                                       "thetas = 0 0.3 0.7 1.1\nexpect = bounded\n");
  const double c = disk["results"]["max_C"].get<double>();
  const double change = disk["results"]["refinement_change"].get<double>();
  o.require(std::isfinite(c), "disk sup=" + num(c));
  o.require(change < 2.0, "disk refinement change x" + num(change) + " < 2");
  const Json sq = run_json(Command::lemma_check, std::string("[body]\n") + kSquare + "\n[lemma]\n" + grid +
                                                     "thetas = 0\nexpect = diverges\n");
  const double growth = sq["results"]["frequency_growth"].get<double>();
  o.require(growth >= 2.0, "square ratio grows x" + num(growth) + " from |xi|=32 to 1024 along theta=0");
  return o;
}

// Distinct nonzero a^2 + b^2 with 0 <= a, b <= q.
std::size_t sums_of_two_squares(long q) {
  std::set<long> s;
  for (long a = 0; a <= q; ++a) {
    for (long b = 0; b <= q; ++b) {
      if (a || b) s.insert(a * a + b * b);
    }
  }
  return s.size();
}

Outcome distance_exactness() {
  Outcome o;
  const ConvexBody sq = ConvexBody::unit_square(), disk = ConvexBody::unit_disk();
  DistanceOptions brute;
  brute.fast_path = false;
  bool linf = true, agree = true, euclid = true;
  for (int q : {16, 64, 256, 1024}) {
    const PointSet s = PointSet::lattice(q);
    const DistanceSet d = distance_set(s, sq, DistanceMode::exact_rational);
    linf = linf && d.count() == static_cast<std::size_t>(q);
    if (q <= 64) agree = agree && distance_set(s, sq, DistanceMode::exact_rational, brute).count() == d.count();
  }
  for (int q = 1; q <= 64; ++q) {
    const PointSet s = PointSet::lattice(q);
    const std::size_t want = sums_of_two_squares(q);
    euclid = euclid && distance_set(s, disk, DistanceMode::exact_rational).count() == want &&
             distance_set(s, disk, DistanceMode::exact_rational, brute).count() == want;
  }
  o.require(linf, "l^inf counts == q for q in {16, 64, 256, 1024}");
  o.require(agree, "fast path == brute force for q <= 64");
  o.require(euclid, "Euclidean counts == sums-of-two-squares oracle for q = 1..64");
  return o;
}

Outcome growth_consistency() {
  Outcome o;
  const Json e = run_json(Command::distset_scan, std::string("[body]\n") + kDisk +
                                                     "\n[distset]\nq_list = 32 64 128 256 512\nalpha = 1.3333333333333333\n"
                                                     "slack = 0\n");
  const double be = e["results"]["beta"].get<double>();
  o.require(be >= 1.8 && be <= 2.0, "Euclidean beta=" + num(be) + " in [1.8, 2]");
  o.require(be > 1.5, "exceeds d/alpha = 1.5");
  for (const auto& [name, body] : {std::pair{"l^inf", kSquare}, std::pair{"l^1", "kind = lp_ball\np = 1"}}) {
    const Json r = run_json(Command::distset_scan, std::string("[body]\n") + body + "\n[distset]\nq_list = 32 64 128 256 512\n");
    const double b = r["results"]["beta"].get<double>();
    o.require(std::abs(b - 1.0) <= 0.02, std::string(name) + " beta=" + num(b));
  }
  return o;
}

Outcome non_separated_trend() {
  Outcome o;
  PointSetFamily rot;
  rot.kind = Provenance::rotated_lattice;
  rot.angle = std::numbers::pi / 6;
  const ConvexBody sq = ConvexBody::unit_square();
  const auto trend = min_gap_trend(rot, sq, std::vector<int>{64, 256, 512});
  bool decreasing = true;
  std::string gaps;
  for (std::size_t i = 0; i < trend.size(); ++i) {
    if (i > 0) decreasing = decreasing && trend[i].second < trend[i - 1].second * (1.0 - 1e-9);
    gaps += (i ? ", " : "") + num(trend[i].second, 10);
  }
  o.require(decreasing, "rotated min_gap strictly decreasing (beyond 1e-9 relative) over q = 64, 256, 512 (" + gaps + ")");
  o.require(trend.back().second < 1e-2, "min_gap(512)=" + num(trend.back().second) + " < 1e-2");
  bool ones = true;
  for (const auto& [q, g] : min_gap_trend(PointSetFamily{}, sq, std::vector<int>{64, 256, 512})) ones = ones && g == 1.0;
  o.require(ones, "unrotated min_gap == 1");
  return o;
}

Outcome cantor_identities() {
  Outcome o;
  bool exact = true;
  for (int n = 1; n <= 12; ++n) {
    mpz_class num3 = 1, den4 = 1;
    for (int i = 0; i < n; ++i) {
      num3 *= 3;
      den4 *= 4;
    }
    Rational want(2 * num3, den4);
    want.canonicalize();
    exact = exact && difference_cover({2, n}).pre_merge_length == want;
  }
  o.require(exact, "pre-merge length == 2 (3/4)^n for n = 1..12");
  const CantorSpec depth8{2, 8};
  const double dim = box_dim_product(cantor_build(depth8), 2, dyadic_levels(depth8)).dimension;
  o.require(std::abs(dim - 1.0) <= 0.1, "box_dim(C4 x C4)=" + num(dim));
  const double len = to_double(difference_cover({2, 10}).merged.total_length());
  o.require(len < 0.12, "l^inf cover length at depth 10=" + num(len) + " < 0.12");
  return o;
}

Outcome energy_trends() {
  Outcome o;
  const AtomicMeasure p = AtomicMeasure::point_mass({0.0, 0.0});
  const std::vector<double> Ts{16, 32, 64};
  const EnergyLadder lp = energy_ladder(p, 1.0, Ts);
  bool ratio_ok = true;
  std::string ratios;
  for (std::size_t i = 1; i < Ts.size(); ++i) {
    const double got = lp.integrals[i] / lp.integrals[i - 1];
    const double want = std::pow(Ts[i] / Ts[i - 1], 2.0 - 1.0);
    ratio_ok = ratio_ok && std::abs(got / want - 1.0) <= 0.1;
    ratios += (i > 1 ? ", " : "") + num(got);
  }
  o.require(ratio_ok, "point-mass ratios " + ratios + " vs 2 within 10%");
  const AtomicMeasure mu = natural_measure({2, 8}, 2);
  for (const auto& [gamma, growing] : {std::pair{0.8, true}, std::pair{1.2, false}}) {
    const EnergyLadder L = energy_ladder(mu, gamma, Ts);
    const bool ok = growing ? L.growing() : L.plateauing();
    o.require(ok, "gamma " + num(gamma) + " increments " + num(L.increments[0]) + " -> " + num(L.increments[1]) +
                      (growing ? " growing" : " plateauing"));
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("kdist_acceptance_" + std::to_string(::getpid()));
  const std::vector<std::pair<Command, std::string>> configs{
      {Command::decay_scan, "[run]\nname = r\n[body]\nkind = random_polygon\nhalf_vertices = 4\nseed = 11\n"
                            "[decay]\nstatistic = pointwise\nr_min = 4\nr_max = 64\n"},
      {Command::distset_scan, "[run]\nname = r\nseed = 5\n[body]\nkind = disk\n[distset]\nfamily = perturbed\n"
                              "jitter = 0.3\nq_list = 4 8 16 32\n"},
      {Command::fractal_build, "[run]\nname = r\n[fractal]\nconstruction = difference\ndepth = 7\n"},
      {Command::lemma_check, "[run]\nname = r\n[body]\nkind = ellipsoid\nsemi_axes = 2 1\n[lemma]\nwhich = 11\n"
                             "t_max = 64\nt_count = 33\ntheta_count = 5\n"},
  };
  bool same = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (int rep = 0; rep < 2; ++rep) {
      set_thread_count(rep == 0 ? 1 : 4);
      RunOptions ro;
      ro.out_dir = root / std::to_string(i) / std::to_string(rep);
      run(configs[i].first, IniDocument::parse_string(configs[i].second), ro);
    }
    for (const char* ext : {"r.json", "r.csv", "r.svg"}) {
      const fs::path a = root / std::to_string(i) / "0" / ext, b = root / std::to_string(i) / "1" / ext;
      if (!fs::exists(a) && !fs::exists(b)) continue;
      same = same && slurp(a) == slurp(b) && !slurp(a).empty();
    }
  }
  set_thread_count(0);
  fs::remove_all(root);
  o.require(same, "4 configs x (json, csv, svg) byte-identical across repeated runs with 1 and 4 threads");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"curved pointwise decay", curved_pointwise_decay},
      {"universal L2 average decay", l2_average_decay},
      {"polyhedral L1 average decay", polyhedral_l1_decay},
      {"chord ratio bounded across octaves", chord_ratio_bounded},
      {"annulus bound: disk bounded, square diverges", annulus_bound},
      {"distinct-distance exactness", distance_exactness},
      {"growth exponents vs conversion bound", growth_consistency},
      {"non-separated trend of rotated lattice", non_separated_trend},
      {"Cantor identities", cantor_identities},
      {"energy-integral trends", energy_trends},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-46s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
