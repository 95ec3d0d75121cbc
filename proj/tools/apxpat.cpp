// apxpat: approximate-pattern search over separated point sets.
//
// Exit codes: 0 found/accepted, 1 not found/rejected, 2 usage or input error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apxpat/bounds.hpp"
#include "apxpat/collinear.hpp"
#include "apxpat/error.hpp"
#include "apxpat/generators.hpp"
#include "apxpat/io.hpp"
#include "apxpat/oracle.hpp"
#include "apxpat/search.hpp"
#include "apxpat/verifier.hpp"

namespace {

using apxpat::Error;
using apxpat::ErrorKind;
using apxpat::Point;
using apxpat::PointSet;
using nlohmann::json;

constexpr int kExitHit = 0;
constexpr int kExitMiss = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string input;
  std::string pattern;
  std::string out;
  std::string svg;
  std::string kind = "random";
  std::string variant = "xi";
  std::size_t k = 3;
  std::size_t dim = 1;
  std::size_t count = 100;
  double eps = 1.0 / 3.0;
  double delta = 1.0;
  double c = 1.0;
  double length = 0.0;
  double jitter = 0.0;
  std::uint64_t seed = 1;
  std::vector<double> low;
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> highlight;
  bool json = false;
  bool trace = false;
  bool list = false;
};

std::uint64_t budget_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("APXPAT_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "APXPAT_BUDGET is not an integer");
    }
  }
  return fallback;
}

json envelope(const std::string& command) {
  return json{{"schema", apxpat::io::kSchemaVersion}, {"command", command}};
}

void emit(const Options& o, json doc, const std::string& text) {
  if (o.json) {
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << text;
  }
}

PointSet load_input(const Options& o) {
  if (o.input.empty()) throw Error(ErrorKind::InvalidArgument, "--input is required");
  return apxpat::io::read_pointset_file(o.input);
}

apxpat::Pattern load_pattern(const Options& o) {
  if (o.pattern.empty()) throw Error(ErrorKind::InvalidArgument, "--pattern is required");
  return apxpat::Pattern(apxpat::io::read_pointset_file(o.pattern));
}

apxpat::SearchOptions search_options(const Options& o) {
  apxpat::SearchOptions so;
  if (!o.low.empty()) so.low = Point(o.low);
  if (o.length > 0.0) so.length = o.length;
  return so;
}

std::string summary(const apxpat::SearchOutcome& out) {
  std::string s = out.found ? "found" : "not found";
  s += " after " + std::to_string(out.trace.steps.size()) + " step(s)";
  if (out.found) {
    s += "; subset";
    for (std::size_t i : out.subset) s += " " + std::to_string(i);
    s += "; deviation " + apxpat::io::format_double(out.verify->max_relative_deviation);
  }
  if (out.warnings.below_threshold) s += "; warning: box side below Z0";
  if (out.warnings.below_density) s += "; warning: density below c";
  return s + "\n";
}

int run_bounds(const Options& o) {
  const apxpat::Schedule s = o.dim == 1 ? apxpat::schedule_1d(o.k, o.c, o.delta, o.eps)
                                        : apxpat::schedule_nd(o.dim, o.k, o.c, o.delta, o.eps);
  json doc = envelope("bounds");
  doc["schedule"] = apxpat::io::to_json(s);
  doc["ball_volume_unit"] = apxpat::ball_volume(o.dim, 1.0);
  emit(o, doc,
       "s=" + std::to_string(s.stride) + " r=" + apxpat::io::format_double(s.ratio) +
           " j=" + std::to_string(s.depth) + " Z0=" + apxpat::io::format_double(s.threshold) +
           " kappa=" + std::to_string(s.kappa) + "\n");
  return kExitHit;
}

int run_generate(const Options& o) {
  PointSet s = [&] {
    if (o.kind == "random") {
      return apxpat::gen_random_separated(o.dim, o.length, o.delta, o.count, o.seed);
    }
    if (o.kind == "lattice") return apxpat::gen_jittered_lattice(o.dim, o.length, o.jitter, o.seed);
    if (o.kind == "adversarial") {
      const auto variant = o.variant == "eighth" ? apxpat::AdversarialVariant::Eighth
                                                 : apxpat::AdversarialVariant::Xi;
      if (o.variant != "xi" && o.variant != "eighth") {
        throw Error(ErrorKind::InvalidArgument, "--variant must be xi or eighth");
      }
      return apxpat::gen_adversarial_ap3(o.count, variant, o.eps);
    }
    throw Error(ErrorKind::InvalidArgument, "--kind must be random, lattice or adversarial");
  }();
  const std::string text = apxpat::io::write_pointset(s);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    apxpat::io::write_text_file(o.out, text);
  }
  return kExitHit;
}

void maybe_svg(const Options& o, const PointSet& s, std::vector<std::size_t> highlight,
               std::vector<Point> anchors, const std::string& title) {
  if (o.svg.empty()) return;
  apxpat::io::SvgOptions so;
  so.highlight = std::move(highlight);
  so.anchors = std::move(anchors);
  so.title = title;
  apxpat::io::write_text_file(o.svg, apxpat::io::emit_svg(s, so));
}

int run_search(const std::string& mode, const Options& o) {
  const PointSet s = load_input(o);
  if (mode == "collinear") {
    apxpat::CollinearOptions co;
    co.node_budget = budget_or(co.node_budget);
    const apxpat::CollinearSearch res = apxpat::find_collinear(s, o.k, o.eps, co);
    json doc = envelope("search collinear");
    doc["result"] = apxpat::io::to_json(res);
    const bool hit = res.status == apxpat::CollinearStatus::Found;
    std::string text = hit ? "found" : "absent";
    for (std::size_t i : res.subset) text += " " + std::to_string(i);
    emit(o, doc, text + "\n");
    maybe_svg(o, s, res.subset, {}, "collinear");
    return hit ? kExitHit : kExitMiss;
  }
  apxpat::SearchOutcome out;
  if (mode == "ap") {
    out = apxpat::search_ap(s, o.k, o.eps, o.delta, o.c, search_options(o));
  } else if (mode == "grid") {
    out = apxpat::search_grid(s, o.k, o.eps, o.delta, o.c, search_options(o));
  } else {
    out = apxpat::search_pattern(s, load_pattern(o), o.eps, o.delta, o.c, search_options(o));
  }
  json doc = envelope("search " + mode);
  doc["outcome"] = apxpat::io::to_json(out, o.trace);
  emit(o, doc, summary(out));
  maybe_svg(o, s, out.subset, out.anchors, "search " + mode);
  return out.found ? kExitHit : kExitMiss;
}

int run_verify(const std::string& mode, const Options& o) {
  const PointSet q = load_input(o);
  json doc = envelope("verify " + mode);
  bool accepted = false;
  if (mode == "ap") {
    if (q.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "verify ap expects 1-D input");
    std::vector<double> v;
    for (const Point& p : q) v.push_back(p[0]);
    std::sort(v.begin(), v.end());
    const apxpat::VerifyResult r = apxpat::verify_ap(v, o.eps);
    doc["result"] = apxpat::io::to_json(r);
    accepted = r.accepted;
  } else if (mode == "pattern") {
    const apxpat::Pattern p = load_pattern(o);
    std::vector<std::size_t> sigma = o.assignment;
    if (sigma.empty()) {
      sigma.resize(p.size());
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    }
    const apxpat::VerifyResult r = apxpat::verify_homothetic(q, p, sigma, o.eps);
    doc["result"] = apxpat::io::to_json(r);
    accepted = r.accepted;
  } else {
    const apxpat::CollinearCheck r = apxpat::verify_collinear(q, o.eps);
    doc["result"] = apxpat::io::to_json(r);
    doc["cylinder_radius"] = apxpat::cylinder_radius(q);
    doc["diameter"] = apxpat::diameter(q);
    accepted = r.accepted;
  }
  emit(o, doc, std::string(accepted ? "accepted" : "rejected") + "\n");
  return accepted ? kExitHit : kExitMiss;
}

int run_oracle(const std::string& mode, const Options& o) {
  const PointSet s = load_input(o);
  json doc = envelope("oracle " + mode);
  std::size_t hits = 0;
  if (mode == "ap") {
    const auto all = apxpat::oracle::enumerate_aps(s, o.k, o.eps, budget_or(apxpat::oracle::kApBudget));
    hits = all.size();
    if (o.list) doc["hits"] = all;
  } else if (mode == "pattern") {
    const auto all = apxpat::oracle::enumerate_homothetic(
        s, load_pattern(o), o.eps, budget_or(apxpat::oracle::kHomotheticBudget));
    hits = all.size();
    if (o.list) {
      json list = json::array();
      for (const auto& m : all) list.push_back({{"subset", m.subset}, {"assignment", m.assignment}});
      doc["hits"] = std::move(list);
    }
  } else {
    hits = apxpat::oracle::exists_collinear(s, o.k, o.eps,
                                            budget_or(apxpat::oracle::kCollinearBudget))
               ? 1
               : 0;
  }
  doc["count"] = hits;
  doc["exists"] = hits > 0;
  emit(o, doc, std::to_string(hits) + " hit(s)\n");
  return hits > 0 ? kExitHit : kExitMiss;
}

int run_plot(const Options& o) {
  if (o.svg.empty()) throw Error(ErrorKind::InvalidArgument, "--svg is required");
  const PointSet s = load_input(o);
  std::vector<Point> anchors;
  if (!o.pattern.empty()) {
    const PointSet a = apxpat::io::read_pointset_file(o.pattern);
    anchors.assign(a.begin(), a.end());
  }
  maybe_svg(o, s, o.highlight, anchors, "");
  return kExitHit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate homothetic patterns in separated point sets"};
  app.require_subcommand(1);
  Options o;

  auto* bounds = app.add_subcommand("bounds", "Print the search schedule and guarantee scale");
  bounds->add_option("--dim", o.dim, "Dimension");
  bounds->add_option("--k", o.k, "Pattern size");
  bounds->add_option("--c", o.c, "Density");
  bounds->add_option("--delta", o.delta, "Separation");
  bounds->add_option("--eps", o.eps, "Tolerance");
  bounds->add_flag("--json", o.json, "Emit JSON");

  auto* generate = app.add_subcommand("generate", "Generate a point set");
  generate->add_option("--kind", o.kind, "random | lattice | adversarial");
  generate->add_option("--dim", o.dim, "Dimension");
  generate->add_option("--length", o.length, "Cube side L");
  generate->add_option("--delta", o.delta, "Separation");
  generate->add_option("--count", o.count, "Number of points");
  generate->add_option("--jitter", o.jitter, "Lattice jitter in [0, 0.5)");
  generate->add_option("--eps", o.eps, "Tolerance for the xi adversarial set");
  generate->add_option("--variant", o.variant, "xi | eighth");
  generate->add_option("--seed", o.seed, "Seed");
  generate->add_option("--out", o.out, "Output file (default stdout)");

  auto add_mode_group = [&](const std::string& name, const std::string& help,
                            std::vector<std::string> modes) {
    auto* group = app.add_subcommand(name, help);
    group->require_subcommand(1);
    for (const std::string& m : modes) {
      auto* sub = group->add_subcommand(m, name + " " + m);
      sub->add_option("--input", o.input, "Point-set file")->required();
      sub->add_option("--pattern", o.pattern, "Pattern point-set file");
      sub->add_option("--k", o.k, "Pattern size");
      sub->add_option("--eps", o.eps, "Tolerance");
      sub->add_option("--delta", o.delta, "Separation");
      sub->add_option("--c", o.c, "Density");
      sub->add_option("--dim", o.dim, "Dimension");
      sub->add_option("--seed", o.seed, "Seed");
      sub->add_option("--low", o.low, "Search box corner (one value per axis)")->delimiter(',');
      sub->add_option("--length", o.length, "Search box side");
      sub->add_option("--assignment", o.assignment, "Pattern index per input point")
          ->delimiter(',');
      sub->add_flag("--json", o.json, "Emit JSON");
      sub->add_flag("--trace", o.trace, "Include the subdivision trace");
      sub->add_flag("--list", o.list, "List every hit");
      sub->add_option("--svg", o.svg, "Write an SVG figure");
    }
    return group;
  };
  auto* search = add_mode_group("search", "Subdivision search", {"ap", "grid", "pattern", "collinear"});
  auto* verify = add_mode_group("verify", "Certify a candidate", {"ap", "pattern", "collinear"});
  auto* oracle = add_mode_group("oracle", "Brute-force enumeration", {"ap", "pattern", "collinear"});

  auto* plot = app.add_subcommand("plot", "Render a point set as SVG");
  plot->add_option("--input", o.input, "Point-set file")->required();
  plot->add_option("--pattern", o.pattern, "Anchor point-set file");
  plot->add_option("--highlight", o.highlight, "Indices to highlight")->delimiter(',');
  plot->add_option("--svg", o.svg, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  auto mode_of = [](CLI::App* group) { return group->get_subcommands().front()->get_name(); };
  try {
    if (bounds->parsed()) return run_bounds(o);
    if (generate->parsed()) return run_generate(o);
    if (search->parsed()) return run_search(mode_of(search), o);
    if (verify->parsed()) return run_verify(mode_of(verify), o);
    if (oracle->parsed()) return run_oracle(mode_of(oracle), o);
    if (plot->parsed()) return run_plot(o);
  } catch (const Error& e) {
    std::cerr << "apxpat: " << apxpat::to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "apxpat: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
