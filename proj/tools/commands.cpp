#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "bubble/compact.hpp"
#include "bubble/decimation.hpp"
#include "bubble/dos.hpp"
#include "bubble/eigensolve.hpp"
#include "bubble/gaps.hpp"
#include "bubble/graph.hpp"
#include "bubble/laplacian.hpp"

namespace bubble::cli {

using nlohmann::json;

namespace {

// Largest oracle matrix the verify suite will diagonalize.
constexpr std::int64_t kOracleDimensionCap = 1200;

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::int64_t to_int64(const Integer &z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw DomainError("rational component exceeds 64-bit range");
  return z.convert_to<std::int64_t>();
}

DecimationFunctions functions_for(const RunConfig &c) {
  auto f = DecimationFunctions::canonical(c.b);
  if (c.perturb) f = f.perturbed(c.perturb->index, c.perturb->delta);
  return f;
}

const char *flavor_name(Flavor f) { return f == Flavor::Neumann ? "neumann" : "dirichlet"; }

std::int64_t oracle_dimension(int b, int level, Flavor flavor) {
  return expected_vertex_count(b, level) - (flavor == Flavor::Dirichlet ? 2 : 0);
}

bool oracle_within_cap(int b, int level) {
  return expected_vertex_count(b, level) <= kOracleDimensionCap;
}

json prediction_json(const SpectrumPrediction &p) {
  json entries = json::array();
  for (const auto &e : p.entries) {
    json item{{"value", e.value}, {"generation", e.generation}};
    if (e.multiplicity) item["multiplicity"] = *e.multiplicity;
    entries.push_back(item);
  }
  return entries;
}

json multiset_json(const SpectrumMultiset &s) {
  json entries = json::array();
  for (const auto &e : s.entries) entries.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  return entries;
}

SpectrumPrediction predict(const DecimationFunctions &f, Flavor flavor, int level) {
  return flavor == Flavor::Neumann ? predicted_neumann_spectrum(f, level)
                                   : predicted_dirichlet_spectrum(f, level);
}

SpectrumMultiset oracle_spectrum(int b, int level, Flavor flavor, double tol) {
  const auto g = build_graph(b, level);
  return eigensolve(flavor == Flavor::Neumann ? neumann_laplacian(g) : dirichlet_laplacian(g), tol);
}

std::string render(const json &j) { return j.dump(2) + "\n"; }

} // namespace

json to_json(const Rational &q) {
  return {{"num", to_int64(numerator_of(q))}, {"den", to_int64(denominator_of(q))}};
}

std::string cmd_graph(const RunConfig &c) {
  const auto g = build_graph(c.b, c.level);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "u,v,multiplicity\n";
    for (const auto &e : g.edges()) os << e.u << ',' << e.v << ',' << e.multiplicity << '\n';
    return os.str();
  }
  json census = json::object();
  for (const auto &[deg, count] : degree_census(g)) census[std::to_string(deg)] = count;
  const auto [s, t] = boundary(g);
  json j{{"b", c.b},
         {"level", c.level},
         {"vertex_count", g.vertex_count()},
         {"edge_multiplicity", g.total_multiplicity()},
         {"distinct_edges", g.edges().size()},
         {"degree_census", census},
         {"boundary", {s, t}},
         {"connected", g.is_connected()},
         {"effective_resistance", to_json(effective_resistance(g))}};
  if (c.edges) {
    json edges = json::array();
    for (const auto &e : g.edges()) edges.push_back({e.u, e.v, e.multiplicity});
    j["edges"] = edges;
  }
  return render(j);
}

std::string cmd_spectrum(const RunConfig &c) {
  if (c.method != "oracle" && c.method != "decimation" && c.method != "both")
    throw DomainError("method must be oracle, decimation or both");
  if (c.flavor == Flavor::Dirichlet && c.level < 1) throw DomainError("Dirichlet spectrum needs level >= 1");
  if (c.method != "decimation" && !oracle_within_cap(c.b, c.level))
    *c.warn << "warning: oracle matrix of dimension " << oracle_dimension(c.b, c.level, c.flavor)
              << " exceeds the documented cap " << kOracleDimensionCap << "\n";
  const auto f = functions_for(c);

  json j{{"b", c.b}, {"level", c.level}, {"flavor", flavor_name(c.flavor)}, {"method", c.method}};
  if (c.method == "decimation") {
    const auto p = predict(f, c.flavor, c.level);
    if (c.format == "csv") {
      std::ostringstream os;
      os << "value,multiplicity,generation\n";
      for (const auto &e : p.entries)
        os << fmt_double(e.value) << ',' << (e.multiplicity ? std::to_string(*e.multiplicity) : "")
           << ',' << e.generation << '\n';
      return os.str();
    }
    j["entries"] = prediction_json(p);
    return render(j);
  }
  const auto oracle = oracle_spectrum(c.b, c.level, c.flavor, c.tol);
  if (c.method == "oracle") {
    if (c.format == "csv") {
      std::ostringstream os;
      os << "value,multiplicity,generation\n";
      for (const auto &e : oracle.entries) os << fmt_double(e.value) << ',' << e.multiplicity << ",\n";
      return os.str();
    }
    j["entries"] = multiset_json(oracle);
    return render(j);
  }
  const auto p = predict(f, c.flavor, c.level);
  const double distance = hausdorff_distance(oracle.values(), p.values());
  j["oracle"] = multiset_json(oracle);
  j["decimation"] = prediction_json(p);
  j["max_set_distance"] = distance;
  j["tolerance"] = c.tol;
  j["agree"] = distance < c.tol;
  return render(j);
}

std::string cmd_ids(const RunConfig &c) {
  std::vector<std::pair<double, Rational>> rows;
  if (c.measure == "finite" || c.measure == "limit") {
    const AtomicMeasure m = c.measure == "finite" ? finite_dos(c.b, c.level) : limit_dos(c.b, c.depth);
    const Staircase s = staircase(m);
    for (std::size_t i = 0; i < s.breakpoints.size(); ++i) rows.emplace_back(s.breakpoints[i], s.values[i]);
  } else if (c.measure == "exact") {
    for (const auto &p : exact_plateaus(c.b, c.level)) {
      rows.emplace_back(p.gap.left, p.height);
      rows.emplace_back(p.gap.right, p.height);
    }
    rows.emplace_back(2.0, Rational(1));
  } else {
    throw DomainError("measure must be finite, limit or exact");
  }

  if (c.format == "csv") {
    std::ostringstream os;
    os << "x,N,num,den\n";
    for (const auto &[x, n] : rows)
      os << fmt_double(x) << ',' << fmt_double(to_double(n)) << ',' << numerator_of(n) << ','
         << denominator_of(n) << '\n';
    return os.str();
  }
  json points = json::array();
  for (const auto &[x, n] : rows) points.push_back({{"x", x}, {"N", to_json(n)}});
  json j{{"b", c.b}, {"measure", c.measure}, {"points", points}};
  if (c.measure == "limit") {
    j["depth"] = c.depth;
    j["tail_bound"] = to_json(limit_tail_bound(c.b, c.depth));
  } else {
    j["level"] = c.level;
  }
  return render(j);
}

std::string cmd_gaps(const RunConfig &c) {
  const auto gaps = enumerate_gaps(c.b, c.scale);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "word,left,right,num,den\n";
    for (const auto &g : gaps) {
      const Rational l = gap_label(c.b, g.word);
      os << g.word.str() << ',' << fmt_double(g.left) << ',' << fmt_double(g.right) << ','
         << numerator_of(l) << ',' << denominator_of(l) << '\n';
    }
    return os.str();
  }
  json list = json::array();
  for (const auto &g : gaps) {
    const Rational l = gap_label(c.b, g.word);
    list.push_back({{"word", g.word.str()},
                    {"interval", {g.left, g.right}},
                    {"label_numerator", to_int64(numerator_of(l))},
                    {"label_denominator", to_int64(denominator_of(l))}});
  }
  return render(json{{"b", c.b}, {"scale", c.scale}, {"gaps", list}});
}

std::string cmd_compact(const RunConfig &c) {
  const KoenigsMap t(c.b);
  const auto spectrum = compact_spectrum(t, c.depth);
  const double floor = 1.0 / (c.b + 1) - 1e-12;

  json eigen = json::array();
  for (const auto &e : spectrum) {
    json item{{"value", e.value}, {"generation", e.generation}, {"source", e.source}};
    item["multiplicity"] = e.multiplicity ? json(*e.multiplicity) : json(nullptr);
    eigen.push_back(item);
  }
  json gap_list = json::array();
  for (const auto &g : enumerate_gaps_up_to(c.b, c.scale)) {
    if (g.left < floor) continue;
    const auto report = gap_sequence_check(t, g.left, g.right, c.depth);
    gap_list.push_back({{"word", g.word.str()},
                        {"interval", {g.left, g.right}},
                        {"label", compact_gap_label(t, g.left, g.right)},
                        {"ratios", report.ratios},
                        {"min_ratio", report.min_ratio},
                        {"images_empty", report.images_empty}});
  }
  if (c.format == "csv") {
    std::ostringstream os;
    os << "value,generation,source,multiplicity\n";
    for (const auto &e : spectrum)
      os << fmt_double(e.value) << ',' << e.generation << ',' << fmt_double(e.source) << ','
         << (e.multiplicity ? std::to_string(*e.multiplicity) : "") << '\n';
    return os.str();
  }
  return render(json{{"b", c.b},
                     {"depth", c.depth},
                     {"multiplier", t.multiplier()},
                     {"T2", t(2.0)},
                     {"eigenvalues", eigen},
                     {"gaps", gap_list}});
}

std::vector<CheckResult> run_verify(const RunConfig &c, std::vector<std::string> &warnings) {
  std::vector<CheckResult> results;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    results.push_back({std::move(name), ok, std::move(detail)});
  };
  std::vector<int> bs = c.b_given ? std::vector<int>{c.b} : std::vector<int>{2, 3, 4};
  const int max_level = c.level_given ? c.level : 3;

  for (int b : bs) {
    const std::string tag = "b=" + std::to_string(b);
    auto f = DecimationFunctions::canonical(b);
    if (c.perturb) f = f.perturbed(c.perturb->index, c.perturb->delta);

    for (int l = 0; l <= max_level; ++l) {
      const auto g = build_graph(b, l);
      const auto census = degree_census(g);
      bool ok = g.vertex_count() == expected_vertex_count(b, l) &&
                g.total_multiplicity() == expected_edge_multiplicity(b, l) && g.is_connected();
      if (l >= 1) ok = ok && census.size() == 2 && census.at(1) == 2 && census.count(b + 1) == 1;
      add("graph counts " + tag + " l=" + std::to_string(l), ok);
    }

    {
      double worst = 0.0;
      const auto e = exceptional_set(b);
      for (int i = 0; i < 50; ++i) {
        const double z = 0.013 + 1.97 * i / 50.0;
        bool near_pole = false;
        for (const auto &p : e) near_pole = near_pole || std::abs(z - to_double(p)) < 0.02;
        for (double pole : {1.0 - static_cast<double>(b) / (b + 1), 1.0 + static_cast<double>(b) / (b + 1)})
          near_pole = near_pole || std::abs(z - pole) < 0.02;
        if (near_pole) continue;
        worst = std::max(worst, schur_residual(f, z));
      }
      add("schur identity " + tag, worst < 1e-12, "max residual " + fmt_double(worst));
    }

    add("fixed points " + tag,
        f.R(Rational(0)) == 0 && f.R(Rational(1)) == 1 && f.R(Rational(2)) == 2);

    for (int l = 1; l <= max_level; ++l) {
      if (!c.oracle) break;
      if (!oracle_within_cap(b, l)) {
        warnings.push_back("skipping oracle checks for " + tag + " l=" + std::to_string(l) +
                           ": matrix dimension " + std::to_string(expected_vertex_count(b, l)) +
                           " exceeds cap " + std::to_string(kOracleDimensionCap));
        continue;
      }
      const auto oracle = oracle_spectrum(b, l, Flavor::Neumann, c.tol);
      const double d = hausdorff_distance(oracle.values(), predicted_neumann_spectrum(f, l).values());
      add("neumann oracle " + tag + " l=" + std::to_string(l), d < c.tol, "hausdorff " + fmt_double(d));

      const auto dir = oracle_spectrum(b, l, Flavor::Dirichlet, c.tol);
      const auto pred = predicted_dirichlet_spectrum(f, l);
      bool match = dir.entries.size() == pred.entries.size() &&
                   dir.total_multiplicity() == expected_vertex_count(b, l) - 2;
      for (std::size_t i = 0; match && i < dir.entries.size(); ++i)
        match = std::abs(dir.entries[i].value - pred.entries[i].value) < c.tol &&
                dir.entries[i].multiplicity == *pred.entries[i].multiplicity;
      add("dirichlet oracle " + tag + " l=" + std::to_string(l), match);
    }

    for (int l = 1; l <= max_level; ++l)
      add("finite dos mass " + tag + " l=" + std::to_string(l), finite_dos(b, l).mass() == 1);
    {
      const auto nu = limit_dos(b, 6);
      add("limit dos mass " + tag, nu.mass() == 1 - limit_tail_bound(b, 6));
      add("self-similarity " + tag, self_similarity_residual(b, 4) == 0);
      const auto check = crosscheck_labels(nu, 2);
      add("label crosscheck " + tag, check.passed(),
          "discrepancy " + fmt_double(to_double(check.worst_discrepancy)));
    }
    add("ifs orbit " + tag, ifs_orbit(b, 4) == labels_up_to(b, 4));
    {
      bool ok = true;
      Rational prev = -1;
      for (const auto &p : exact_plateaus(b, 3)) {
        ok = ok && p.height > prev && p.height == gap_label(b, p.gap.word);
        prev = p.height;
      }
      add("plateau labels " + tag, ok);
    }
    {
      const KoenigsMap t(b);
      const auto e = exceptional_set(b);
      double worst = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double z = 2.0 * i / 200.0;
        worst = std::max(worst, std::abs(t(inverse_branch(b, Branch::Zero, z)) * t.multiplier() - t(z)));
      }
      add("koenigs functional equation " + tag, worst < 1e-9, "max residual " + fmt_double(worst));
      const double sep = std::abs(t.multiplier() * t(to_double(e[0])) - t(2.0));
      add("koenigs scale separation " + tag, sep < 1e-9, "residual " + fmt_double(sep));
    }
  }
  return results;
}

std::string cmd_verify(const RunConfig &c, bool &all_passed) {
  std::vector<std::string> warnings;
  const auto results = run_verify(c, warnings);
  for (const auto &w : warnings) *c.warn << "warning: " << w << "\n";
  all_passed = true;
  std::ostringstream os;
  if (c.format == "json") {
    json checks = json::array();
    for (const auto &r : results) {
      checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      all_passed = all_passed && r.passed;
    }
    return render(json{{"checks", checks}, {"warnings", warnings}, {"passed", all_passed}});
  }
  for (const auto &r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << '\n';
    all_passed = all_passed && r.passed;
  }
  os << (all_passed ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

namespace {

std::optional<Perturbation> parse_perturbation(const std::string &s) {
  if (s.empty()) return std::nullopt;
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw DomainError("perturbation must be INDEX:NUM/DEN");
  Perturbation p{std::stoi(s.substr(0, colon)), Rational(0)};
  const std::string frac = s.substr(colon + 1);
  const auto slash = frac.find('/');
  if (slash == std::string::npos)
    p.delta = make_rational(std::stoll(frac));
  else
    p.delta = make_rational(std::stoll(frac.substr(0, slash)), std::stoll(frac.substr(slash + 1)));
  return p;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Spectral decimation toolkit for bubble-diamond graphs"};
  app.require_subcommand(1);
  RunConfig c;
  c.warn = &err;
  std::string flavor = "neumann";
  std::string perturb;

  auto common = [&](CLI::App *sub, std::vector<std::string> formats = {"json", "csv"}) {
    sub->add_option("--b", c.b, "branching parameter (>= 2)");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--output", c.output, "write to PATH instead of standard output");
  };

  auto *graph = app.add_subcommand("graph", "graph summary and edge list");
  common(graph);
  graph->add_option("--level", c.level, "level");
  graph->add_flag("--edges", c.edges, "include the edge list in JSON output");

  auto *spectrum = app.add_subcommand("spectrum", "Laplacian spectrum");
  common(spectrum);
  spectrum->add_option("--level", c.level, "level");
  spectrum->add_option("--flavor", flavor)->check(CLI::IsMember({"neumann", "dirichlet"}));
  spectrum->add_option("--method", c.method)->check(CLI::IsMember({"oracle", "decimation", "both"}));
  spectrum->add_option("--tol", c.tol, "clustering and agreement tolerance");
  spectrum->add_option("--perturb", perturb)->group("");

  auto *ids = app.add_subcommand("ids", "integrated density of states staircase");
  common(ids);
  ids->add_option("--level", c.level, "level (finite) or gap scale (exact)");
  ids->add_option("--depth", c.depth, "truncation depth for the limit measure");
  ids->add_option("--measure", c.measure)->check(CLI::IsMember({"finite", "limit", "exact"}));

  auto *gaps = app.add_subcommand("gaps", "spectral gaps and their labels");
  common(gaps);
  gaps->add_option("--scale", c.scale, "gap scale k");

  auto *compact = app.add_subcommand("compact", "compact-limit spectrum and gap ratios");
  common(compact);
  compact->add_option("--depth", c.depth, "number of generations");
  compact->add_option("--scale", c.scale, "largest gap scale to report");

  auto *verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify, {"text", "json"});
  verify->add_option("--level", c.level, "largest level to check");
  verify->add_option("--tol", c.tol, "oracle agreement tolerance");
  verify->add_flag("--oracle,!--no-oracle", c.oracle, "include dense eigensolver checks");
  verify->add_option("--perturb", perturb)->group("");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    const CLI::App *sub = app.get_subcommands().front();
    c.b_given = sub->count("--b") > 0;
    const CLI::Option *level = sub->get_option_no_throw("--level");
    c.level_given = level != nullptr && level->count() > 0;
    BranchingParameter checked(c.b);
    (void)checked;
    if (c.level < 0) throw DomainError("level must be >= 0");
    if (c.depth < 0) throw DomainError("depth must be >= 0");
    c.flavor = flavor == "dirichlet" ? Flavor::Dirichlet : Flavor::Neumann;
    c.perturb = parse_perturbation(perturb);

    std::string text;
    int code = kOk;
    if (graph->parsed()) {
      text = cmd_graph(c);
    } else if (spectrum->parsed()) {
      text = cmd_spectrum(c);
    } else if (ids->parsed()) {
      text = cmd_ids(c);
    } else if (gaps->parsed()) {
      if (c.scale < 1) throw DomainError("scale must be >= 1");
      text = cmd_gaps(c);
    } else if (compact->parsed()) {
      if (c.depth < 1) throw DomainError("depth must be >= 1");
      text = cmd_compact(c);
    } else {
      if (verify->count("--format") == 0) c.format = "text";
      bool ok = false;
      text = cmd_verify(c, ok);
      if (!ok) code = kVerifyFailed;
    }

    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) throw DomainError("cannot open output file " + c.output);
      file << text;
    }
    return code;
  } catch (const NonConvergence &e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNonConvergence;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

} // namespace bubble::cli
