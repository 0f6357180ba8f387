#include "hypermatch/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "hypermatch/demand_matching.hpp"
#include "hypermatch/geometry.hpp"
#include "hypermatch/io.hpp"
#include "hypermatch/oracle.hpp"
#include "hypermatch/reductions.hpp"

namespace hypermatch {

namespace {

struct CliOptions {
  std::vector<std::string> instances;
  std::string decomposition_path;
  std::string out_path;
  bool no_timing = false;
  bool force_bipartite = false;
  bool oracle = false;
  bool trace = false;
  std::uint64_t seed = 0;
  std::int64_t budget = 1ll << 22;
  int jobs = 1;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

BMatchInstance load_bmatch(const std::string& path, bool force_bipartite) {
  Json doc = load_json_file(path);
  if (is_demand_document(doc))
    throw ValidationError("'" + path + "' is a demand instance; use demand-match");
  BMatchInstance inst = validate(read_bmatch_instance(doc));
  if (force_bipartite && !inst.bipartite_witness)
    throw ValidationError("--bipartite given but '" + path + "' embeds no witness");
  return inst;
}

Json rational_list(const RatVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

Json mult_list(const MultVector& m) {
  std::vector<std::int64_t> out(m.data(), m.data() + m.size());
  return Json(out);
}

Json run_solve_lp(const std::string& path, const CliOptions& opt) {
  Json doc = load_json_file(path);
  LpResult res;
  std::string kind;
  if (is_demand_document(doc)) {
    DemandInstance inst = validate(read_demand_instance(doc));
    res = solve_to_vertex(build_demand_lp(inst));
    kind = "demand";
  } else {
    BMatchInstance inst = validate(read_bmatch_instance(doc));
    if (opt.force_bipartite && !inst.bipartite_witness)
      throw ValidationError("--bipartite given but '" + path + "' embeds no witness");
    res = solve_to_vertex(build_bmatch_lp(inst));
    kind = "b-matching";
  }
  Json report;
  report["command"] = "solve-lp";
  report["instance"] = path;
  report["relaxation"] = kind;
  report["lp_value"] = format_rational(res.value);
  report["solution"] = rational_list(res.solution.values);
  report["tight_count"] = res.tight.size();
  return report;
}

Json decomposition_report(const BMatchInstance& inst, const Decomposition& dec) {
  Json report = write_decomposition(dec.combination, dec.lp);
  auto [best, best_value] = best_term(dec.combination, inst.w);
  bool recomposed = dec.combination.value == dec.lp.solution.values &&
                    dec.combination.lambda_sum() == dec.combination.alpha;
  report["recomposition_ok"] = recomposed;
  report["term_count"] = dec.combination.terms.size();
  report["bipartite"] = dec.bipartite;
  report["rho"] = format_rational(rho(std::max(1, inst.h.k()), dec.bipartite));
  report["best_value"] = format_rational(best_value);
  report["best_multiplicities"] = mult_list(best.multiplicities);
  report["expected_value"] = format_rational(expected_value(dec.combination, inst.w));
  if (best_value > 0)
    report["certified_ratio"] = format_rational(dec.lp.value / best_value);
  else
    report["certified_ratio"] = nullptr;
  return report;
}

Json run_decompose(const std::string& path, const CliOptions& opt) {
  BMatchInstance inst = load_bmatch(path, opt.force_bipartite);
  Decomposition dec = decompose(inst);
  Json report = decomposition_report(inst, dec);
  report["command"] = "decompose";
  report["instance"] = path;
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) throw ValidationError("cannot write '" + opt.out_path + "'");
    out << write_decomposition(dec.combination, dec.lp).dump(2) << "\n";
  }
  return report;
}

Json run_verify(const CliOptions& opt) {
  if (opt.instances.size() != 1 || opt.decomposition_path.empty())
    throw ParseError("verify needs --instance and --decomposition");
  BMatchInstance inst = load_bmatch(opt.instances[0], false);
  StoredDecomposition stored = read_decomposition(load_json_file(opt.decomposition_path));

  Rational mass = 0;
  RatVector recomposed = RatVector::Zero(inst.h.num_edges());
  bool terms_feasible = true;
  for (const auto& term : stored.terms) {
    mass += term.lambda;
    if (term.solution.size() != inst.h.num_edges()) {
      terms_feasible = false;
      continue;
    }
    if (!is_feasible(inst, IntegralSolution{term.solution})) terms_feasible = false;
    for (Eigen::Index e = 0; e < term.solution.size(); ++e)
      if (term.solution(e) != 0) recomposed(e) += term.lambda * Rational(term.solution(e));
  }
  bool sum_ok = mass == stored.alpha;
  bool recomposition_ok = static_cast<Eigen::Index>(stored.x_star.size()) ==
                              inst.h.num_edges() &&
                          recomposed == stored.x_star;
  bool x_star_feasible =
      is_feasible(inst, FractionalSolution{stored.x_star});

  Json report;
  report["command"] = "verify";
  report["instance"] = opt.instances[0];
  report["decomposition"] = opt.decomposition_path;
  report["sum_lambda_ok"] = sum_ok;
  report["recomposition_ok"] = recomposition_ok;
  report["terms_feasible"] = terms_feasible;
  report["x_star_feasible"] = x_star_feasible;
  report["verdict"] = (sum_ok && recomposition_ok && terms_feasible && x_star_feasible)
                          ? "pass"
                          : "fail";
  return report;
}

Json run_demand_match(const std::string& path, const CliOptions& opt) {
  Json doc = load_json_file(path);
  if (!is_demand_document(doc))
    throw ValidationError("'" + path + "' has no demands; use decompose/solve-lp");
  DemandInstance inst = validate(read_demand_instance(doc));
  auto [solution, trace] = hdm(inst);
  LpResult lp = solve_to_vertex(build_demand_lp(inst));
  Rational value = solution_weight(inst.w, solution.multiplicities);
  Rational bound = Rational(2 * std::max(1, inst.h.k()));

  Json report;
  report["command"] = "demand-match";
  report["instance"] = path;
  Json chosen = Json::array();
  for (int e = 0; e < inst.h.num_edges(); ++e)
    if (solution.multiplicities(e) == 1) chosen.push_back(e);
  report["solution_edges"] = chosen;
  report["value"] = format_rational(value);
  report["lp_value"] = format_rational(lp.value);
  report["ratio_bound"] = format_rational(bound);
  report["lp_bound_ok"] = value * bound >= lp.value;
  if (opt.oracle) {
    BruteForceResult ilp = brute_force_demand(inst, Int(opt.budget));
    report["ilp_value"] = format_rational(ilp.value);
    report["ilp_bound_ok"] = value * bound >= ilp.value;
  }
  if (opt.trace) {
    Json levels = Json::array();
    for (const auto& level : trace.levels) {
      Json l;
      l["edge"] = level.edge;
      l["scale"] = format_rational(level.scale);
      l["live"] = level.live;
      l["what"] = rational_list(level.what);
      levels.push_back(std::move(l));
    }
    report["trace"] = levels;
  }
  return report;
}

Json run_bounded_color(const std::string& path, const CliOptions& opt) {
  ColoredInstance ci = validate(read_colored_instance(load_json_file(path)));
  BoundedColorResult result = solve_bounded_color(ci);

  Json report;
  report["command"] = "bounded-color";
  report["instance"] = path;
  report["num_classes"] = ci.budgets.size();
  report["reduced_k"] = result.reduction.target.h.k();
  report["witness_ok"] = check_bipartite_witness(
      result.reduction.target.h,
      result.reduction.target.bipartite_witness->distinguished_set);
  report["lp_value"] = format_rational(result.lp_value);
  report["best_value"] = format_rational(result.best_value);
  report["rho"] = format_rational(result.rho_bound);
  report["ratio_ok"] = result.best_value * result.rho_bound >= result.lp_value;
  report["best_multiplicities"] = mult_list(result.best.multiplicities);
  report["source_feasible"] = is_feasible(ci, result.best);
  if (opt.oracle) {
    BruteForceResult target_ilp = brute_force_bmatch(result.reduction.target, Int(opt.budget));
    report["target_ilp_value"] = format_rational(target_ilp.value);
  }
  return report;
}

Json run_auction(const std::string& path, const CliOptions& opt) {
  AuctionInput a = validate(read_auction(load_json_file(path)));
  AllocationSample sample = sample_allocation(a, opt.seed);

  Json report;
  report["command"] = "auction";
  report["instance"] = path;
  report["seed"] = opt.seed;
  report["lp_value"] = format_rational(sample.lp_value);
  report["rho"] = format_rational(sample.rho_bound);
  report["expected_welfare"] = format_rational(sample.expected_welfare);
  report["welfare_identity_ok"] =
      sample.expected_welfare * sample.rho_bound == sample.lp_value;
  report["best_welfare"] = format_rational(sample.best_welfare);
  Json allocation = Json::array();
  for (std::size_t bidder = 0; bidder < sample.bundle_of_bidder.size(); ++bidder) {
    Json entry;
    entry["bidder"] = bidder;
    if (sample.bundle_of_bidder[bidder]) {
      entry["bid"] = *sample.bundle_of_bidder[bidder];
      entry["items"] = a.bids[static_cast<std::size_t>(*sample.bundle_of_bidder[bidder])].items;
    } else {
      entry["bid"] = nullptr;
      entry["items"] = Json::array();
    }
    allocation.push_back(std::move(entry));
  }
  report["allocation"] = allocation;
  return report;
}

Json run_gap(const std::string& path, const CliOptions& opt) {
  BMatchInstance inst = load_bmatch(path, opt.force_bipartite);
  GapReport gap = integrality_gap(inst, Int(opt.budget));
  Json report;
  report["command"] = "gap";
  report["instance"] = path;
  report["lp_value"] = format_rational(gap.lp_value);
  report["ilp_value"] = format_rational(gap.ilp_value);
  report["gap"] = gap.gap ? Json(format_rational(*gap.gap)) : Json(nullptr);
  report["decomposition_ratio"] =
      gap.decomposition_ratio ? Json(format_rational(*gap.decomposition_ratio)) : Json(nullptr);
  report["rho"] = format_rational(gap.rho_bound);
  report["term_count"] = gap.term_count;
  return report;
}

/// Runs `handler` over every instance path, optionally across threads, and
/// prints reports in input order.
int run_per_instance(const CliOptions& opt,
                     const std::function<Json(const std::string&)>& handler,
                     std::ostream& out) {
  if (opt.instances.empty()) throw ParseError("missing --instance");
  std::vector<Json> reports(opt.instances.size());
  std::vector<std::exception_ptr> failures(opt.instances.size());
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(opt.instances.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < opt.instances.size(); ++i) {
      auto start = std::chrono::steady_clock::now();
      reports[i] = handler(opt.instances[i]);
      if (!opt.no_timing) reports[i]["wall_ms"] = elapsed_ms(start);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mutex;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mutex);
            if (next >= opt.instances.size()) return;
            i = next++;
          }
          try {
            auto start = std::chrono::steady_clock::now();
            reports[i] = handler(opt.instances[i]);
            if (!opt.no_timing) reports[i]["wall_ms"] = elapsed_ms(start);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    for (auto& worker : pool) worker.join();
    for (auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }
  if (reports.size() == 1)
    out << reports[0].dump(2) << "\n";
  else
    out << Json(reports).dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic hypergraph b-matching and demand matching toolkit"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* cmd, bool with_instance = true) {
    if (with_instance)
      cmd->add_option("--instance", opt.instances, "instance file (repeatable)");
    cmd->add_flag("--no-timing", opt.no_timing, "omit wall-time fields");
    cmd->add_option("--jobs", opt.jobs, "parallelism across input files");
    return cmd;
  };

  auto* solve_lp = add_common(app.add_subcommand("solve-lp", "exact LP optimum and vertex"));
  solve_lp->add_flag("--bipartite", opt.force_bipartite, "require the embedded witness");

  auto* dec = add_common(app.add_subcommand("decompose", "rho-convex decomposition"));
  dec->add_flag("--bipartite", opt.force_bipartite, "require the embedded witness");
  dec->add_option("--out", opt.out_path, "write the decomposition to a file");

  auto* verify = add_common(app.add_subcommand("verify", "re-check a saved decomposition"));
  verify->add_option("--decomposition", opt.decomposition_path, "decomposition file")
      ->required();

  auto* demand = add_common(app.add_subcommand("demand-match", "local-ratio demand matching"));
  demand->add_flag("--oracle", opt.oracle, "also solve exactly by brute force");
  demand->add_flag("--trace", opt.trace, "dump the weight decomposition trace");
  demand->add_option("--budget", opt.budget, "enumeration budget");

  auto* bounded = add_common(app.add_subcommand("bounded-color", "bounded-color reduction"));
  bounded->add_flag("--oracle", opt.oracle, "also solve exactly by brute force");
  bounded->add_option("--budget", opt.budget, "enumeration budget");

  auto* auction = add_common(app.add_subcommand("auction", "allocation LP + sampled term"));
  auction->add_option("--seed", opt.seed, "sampling seed");

  auto* gap = add_common(app.add_subcommand("gap", "integrality gap report"));
  gap->add_option("--budget", opt.budget, "enumeration budget");

  auto* gen = app.add_subcommand("gen", "emit a tight-gap instance file");
  std::string family;
  int q = 2;
  gen->add_option("--family", family, "pg | truncated")->required();
  gen->add_option("--q", q, "field order (2,3,4,5,7,8,9)")->required();
  gen->add_option("--out", opt.out_path, "output file (default stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      BMatchInstance inst;
      if (family == "pg")
        inst = gen_projective_plane(q);
      else if (family == "truncated")
        inst = gen_truncated_plane(q);
      else
        throw ParseError("unknown family '" + family + "'");
      Json doc = write_instance(inst);
      if (opt.out_path.empty()) {
        out << doc.dump(2) << "\n";
      } else {
        std::ofstream file(opt.out_path);
        if (!file) throw ValidationError("cannot write '" + opt.out_path + "'");
        file << doc.dump(2) << "\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      Json report = run_verify(opt);
      out << report.dump(2) << "\n";
      return report["verdict"] == "pass" ? 0 : 1;
    }
    if (solve_lp->parsed())
      return run_per_instance(opt, [&](const std::string& p) { return run_solve_lp(p, opt); },
                              out);
    if (dec->parsed())
      return run_per_instance(opt, [&](const std::string& p) { return run_decompose(p, opt); },
                              out);
    if (demand->parsed())
      return run_per_instance(
          opt, [&](const std::string& p) { return run_demand_match(p, opt); }, out);
    if (bounded->parsed())
      return run_per_instance(
          opt, [&](const std::string& p) { return run_bounded_color(p, opt); }, out);
    if (auction->parsed())
      return run_per_instance(opt, [&](const std::string& p) { return run_auction(p, opt); },
                              out);
    if (gap->parsed())
      return run_per_instance(opt, [&](const std::string& p) { return run_gap(p, opt); }, out);
    throw ParseError("no subcommand given");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const InternalError& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hypermatch
