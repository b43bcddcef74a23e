// Command-line front end: measures | bound | verify | sweep over problem-spec
// JSON documents. Machine-readable output only (JSON / CSV).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infobound/bounds.hpp"
#include "infobound/measures.hpp"
#include "infobound/problem.hpp"
#include "infobound/sweep.hpp"
#include "infobound/verify.hpp"

namespace {

using infobound::BoundId;
using infobound::BoundQuery;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text << "\n";
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_value(const std::string& text, bool allow_inf) {
  if (allow_inf && (text == "inf" || text == "Inf" || text == "INF")) {
    return std::numeric_limits<double>::infinity();
  }
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("cannot parse number: " + text);
  }
  return value;
}

ordered_json json_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

struct CommonArgs {
  std::string problem_path;
  int n_override = 0;  // 0 = use the spec's n
};

struct LoadedProblem {
  infobound::ProblemSpec spec;
  infobound::JointModel model;
  infobound::ResolvedSigma sigma;
  int n;
};

LoadedProblem load(const CommonArgs& args) {
  infobound::ProblemSpec spec = infobound::load_problem_spec(args.problem_path);
  const int n = args.n_override > 0 ? args.n_override : spec.n;
  infobound::JointModel model = infobound::build_model(spec, n);
  infobound::ResolvedSigma sigma = infobound::sigma_from_bounded_loss(spec.problem);
  return LoadedProblem{std::move(spec), std::move(model), sigma, n};
}

int run_measures(const CommonArgs& args, const std::string& format,
                 const std::string& out_path) {
  const LoadedProblem loaded = load(args);
  const infobound::MeasureReport report = infobound::measure_report(loaded.model);
  if (format == "json") {
    emit(report.to_json(), out_path);
    return kExitOk;
  }
  std::string csv = "measure,value\n";
  const ordered_json j = ordered_json::parse(report.to_json());
  char buf[64];
  for (const auto& [key, value] : j.items()) {
    std::snprintf(buf, sizeof(buf), "%.15g", value.get<double>());
    csv += key;
    csv += ',';
    csv += buf;
    csv += '\n';
  }
  csv.pop_back();
  emit(csv, out_path);
  return kExitOk;
}

int run_bound(const CommonArgs& args, const std::string& bound_name,
              double delta, const std::string& m_text, double alpha,
              const std::string& gamma_text, const std::string& out_path) {
  const auto bound_id = infobound::bound_id_from_name(bound_name);
  if (!bound_id) {
    throw std::invalid_argument("unknown bound id: " + bound_name);
  }
  const LoadedProblem loaded = load(args);

  BoundQuery query;
  query.bound_id = *bound_id;
  query.delta = delta;
  query.m = parse_value(m_text, true);
  query.alpha = alpha;
  query.sigma = loaded.sigma.value;
  query.n = loaded.n;
  if (gamma_text != "optimize") {
    query.gamma = parse_value(gamma_text, false);
  }
  if (query.bound_id == BoundId::kSingleDrawMoment && std::isinf(query.m)) {
    query.bound_id = BoundId::kSingleDrawMInf;
  }

  const infobound::BoundResult result =
      infobound::evaluate_bound(loaded.model, query);

  std::map<std::string, double> params{{"delta", query.delta},
                                       {"m", query.m},
                                       {"alpha", query.alpha},
                                       {"sigma", query.sigma},
                                       {"n", static_cast<double>(query.n)}};
  if (query.gamma) params["gamma"] = *query.gamma;
  ordered_json j = ordered_json::parse(
      result.to_json(infobound::bound_id_name(query.bound_id), params));
  if (loaded.sigma.degenerate) j["sigma_degenerate"] = true;
  emit(j.dump(), out_path);
  return kExitOk;  // infeasibility is data, not an error
}

std::vector<BoundQuery> coverage_grid(double sigma, int n,
                                      const std::vector<double>& deltas) {
  std::vector<BoundQuery> cells;
  BoundQuery base;
  base.sigma = sigma;
  base.n = n;
  for (double delta : deltas) {
    base.delta = delta;
    base.bound_id = BoundId::kPacBayesData;
    cells.push_back(base);
    for (double m : {1.0, 2.0, 4.0}) {
      base.bound_id = BoundId::kPacBayesMoment;
      base.m = m;
      cells.push_back(base);
    }
    base.m = 1.0;
    base.bound_id = BoundId::kSingleDrawData;
    cells.push_back(base);
    for (double m : {1.0, 2.0, 4.0}) {
      base.bound_id = BoundId::kSingleDrawMoment;
      base.m = m;
      cells.push_back(base);
    }
    base.m = 1.0;
    base.bound_id = BoundId::kSingleDrawMInf;
    cells.push_back(base);
    base.bound_id = BoundId::kSingleDrawLeakage;
    cells.push_back(base);
    base.bound_id = BoundId::kStrongConverse;  // gamma unset -> optimized
    cells.push_back(base);
  }
  return cells;
}

int run_verify(const CommonArgs& args, const std::string& suites_text,
               const std::string& delta_grid_text, bool use_mc,
               std::uint64_t samples, std::uint64_t seed,
               double epsilon_external, double epsilon_scale, bool verbose,
               const std::string& out_path) {
  const std::vector<std::string> suites = split_csv(suites_text);
  const auto has_suite = [&](const std::string& name) {
    for (const auto& s : suites) {
      if (s == name) return true;
    }
    return false;
  };
  for (const auto& s : suites) {
    if (s != "theorem1" && s != "coverage" && s != "lemma" && s != "hoeffding" &&
        s != "ordering" && s != "average") {
      throw std::invalid_argument("unknown verify suite: " + s);
    }
  }
  std::vector<double> deltas;
  for (const auto& d : split_csv(delta_grid_text)) {
    deltas.push_back(parse_value(d, false));
  }

  infobound::ProblemSpec spec = infobound::load_problem_spec(args.problem_path);
  const int n = args.n_override > 0 ? args.n_override : spec.n;
  const infobound::ResolvedSigma sigma =
      infobound::sigma_from_bounded_loss(spec.problem);

  ordered_json out;
  out["problem"] = args.problem_path;
  out["n"] = n;
  out["sigma"] = sigma.value;
  if (sigma.degenerate) out["sigma_degenerate"] = true;

  std::optional<infobound::JointModel> model;
  try {
    model = infobound::build_model(spec, n);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("atom budget") == std::string::npos) throw;
    if (!use_mc) {
      throw std::invalid_argument(
          what + "; rerun with --mc --epsilon X to Monte Carlo-check a bound "
                 "whose epsilon was computed on a smaller exact model");
    }
    if (!(epsilon_external > 0.0)) {
      throw std::invalid_argument(
          "model exceeds the atom budget; --mc needs --epsilon X computed "
          "externally");
    }
  }

  bool all_pass = true;

  if (model) {
    if (has_suite("theorem1")) {
      const auto report = infobound::theorem1_check(
          *model, spec.problem, sigma.value, infobound::default_lambda_grid());
      out["theorem1"] = {{"max_expectation", report.max_expectation},
                         {"argmax_lambda", report.argmax_lambda},
                         {"pass", report.pass}};
      all_pass = all_pass && report.pass;
    }
    if (has_suite("average")) {
      const auto report =
          infobound::coverage_average(*model, spec.problem, sigma.value);
      out["average"] = {{"abs_mean_gen", report.abs_mean_gen},
                        {"epsilon", report.epsilon},
                        {"slack", report.slack},
                        {"pass", report.pass}};
      all_pass = all_pass && report.pass;
    }
    if (has_suite("ordering")) {
      const auto report = infobound::ordering_check(*model);
      out["ordering"] = {{"leakage", report.leakage},
                         {"max_information", report.max_information},
                         {"mi_plus_moment_inf", report.mi_plus_moment_inf},
                         {"pass", report.pass}};
      all_pass = all_pass && report.pass;
    }
    if (has_suite("coverage")) {
      ordered_json cells = ordered_json::array();
      for (const BoundQuery& query : coverage_grid(sigma.value, n, deltas)) {
        const infobound::CoverageReport report =
            (query.bound_id == BoundId::kPacBayesData ||
             query.bound_id == BoundId::kPacBayesMoment)
                ? infobound::coverage_pac_bayes(*model, spec.problem, query,
                                                epsilon_scale, verbose)
                : infobound::coverage_single_draw(*model, spec.problem, query,
                                                  epsilon_scale, verbose);
        ordered_json cell = ordered_json::parse(report.to_json());
        if (query.bound_id == BoundId::kPacBayesMoment ||
            query.bound_id == BoundId::kSingleDrawMoment) {
          cell["m"] = query.m;
        }
        cells.push_back(cell);
        all_pass = all_pass && report.pass;
      }
      out["coverage"] = cells;
    }
    if (has_suite("lemma")) {
      const infobound::InfoProfile profile =
          infobound::information_profile(*model);
      double lo = profile.atoms().front().density;
      double hi = lo;
      for (const auto& atom : profile.atoms()) {
        lo = std::min(lo, atom.density);
        hi = std::max(hi, atom.density);
      }
      const std::vector<double> gammas{
          lo - 1.0, infobound::mutual_information(profile),
          infobound::max_information(profile), hi, hi + 1.0};
      ordered_json cells = ordered_json::array();
      bool pass = true;
      for (double epsilon : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        for (double gamma : gammas) {
          const auto report =
              infobound::lemma_split_check(*model, spec.problem, epsilon, gamma);
          cells.push_back({{"epsilon", epsilon},
                           {"gamma", gamma},
                           {"p_event", report.p_event},
                           {"strict_tail", report.strict_tail},
                           {"q_event", report.q_event},
                           {"pass", report.pass}});
          pass = pass && report.pass;
        }
      }
      out["lemma"] = {{"cells", cells}, {"pass", pass}};
      all_pass = all_pass && pass;
    }
    if (has_suite("hoeffding")) {
      std::vector<double> grid;
      for (int k = 1; k <= 9; ++k) grid.push_back(0.1 * k);
      const auto cells = infobound::hoeffding_tail_check(
          spec.problem, spec.p_z, n, sigma.value, grid);
      ordered_json jcells = ordered_json::array();
      bool pass = true;
      for (const auto& cell : cells) {
        jcells.push_back({{"w", cell.w},
                          {"epsilon", cell.epsilon},
                          {"exact_tail", cell.exact_tail},
                          {"bound", cell.bound},
                          {"pass", cell.pass}});
        pass = pass && cell.pass;
      }
      out["hoeffding"] = {{"cells", jcells}, {"pass", pass}};
      all_pass = all_pass && pass;
    }
  }

  if (use_mc && has_suite("coverage")) {
    ordered_json cells = ordered_json::array();
    for (double delta : deltas) {
      std::vector<std::pair<BoundId, double>> targets;
      if (model) {
        BoundQuery query;
        query.sigma = sigma.value;
        query.n = n;
        query.delta = delta;
        query.m = 2.0;
        query.bound_id = BoundId::kSingleDrawMoment;
        targets.emplace_back(query.bound_id,
                             infobound::evaluate_bound(*model, query).epsilon);
        query.bound_id = BoundId::kSingleDrawMInf;
        targets.emplace_back(query.bound_id,
                             infobound::evaluate_bound(*model, query).epsilon);
        query.bound_id = BoundId::kSingleDrawLeakage;
        targets.emplace_back(query.bound_id,
                             infobound::evaluate_bound(*model, query).epsilon);
      } else {
        targets.emplace_back(BoundId::kSingleDrawMoment, epsilon_external);
      }
      for (const auto& [bound_id, epsilon] : targets) {
        const auto estimate = infobound::coverage_monte_carlo(
            spec.problem, spec.learner, spec.p_z, n, bound_id,
            epsilon * epsilon_scale, samples, seed);
        const bool pass = estimate.estimate <= delta + 3.0 * estimate.std_error;
        cells.push_back({{"bound_id", infobound::bound_id_name(bound_id)},
                         {"delta", delta},
                         {"epsilon", json_or_inf(epsilon)},
                         {"estimate", estimate.estimate},
                         {"std_error", estimate.std_error},
                         {"samples", estimate.samples},
                         {"seed", estimate.seed},
                         {"pass", pass}});
        all_pass = all_pass && pass;
      }
    }
    out["coverage_mc"] = cells;
  }

  out["pass"] = all_pass;
  emit(out.dump(), out_path);
  return all_pass ? kExitOk : kExitVerifyFail;
}

int run_sweep(const CommonArgs& args, const std::string& axis_name,
              const std::string& values_text, const std::string& bounds_text,
              double delta, const std::string& m_text, double alpha,
              const std::string& format, const std::string& out_path) {
  const auto axis = infobound::sweep_axis_from_name(axis_name);
  if (!axis) throw std::invalid_argument("unknown sweep axis: " + axis_name);

  infobound::SweepSpec sweep;
  sweep.axis = *axis;
  for (const auto& v : split_csv(values_text)) {
    sweep.values.push_back(parse_value(v, *axis == infobound::SweepAxis::kM));
  }
  for (const auto& name : split_csv(bounds_text)) {
    const auto id = infobound::bound_id_from_name(name);
    if (!id) throw std::invalid_argument("unknown bound id: " + name);
    sweep.bounds.push_back(*id);
  }

  infobound::ProblemSpec spec = infobound::load_problem_spec(args.problem_path);
  if (args.n_override > 0) spec.n = args.n_override;
  const infobound::ResolvedSigma sigma =
      infobound::sigma_from_bounded_loss(spec.problem);
  sweep.fixed.delta = delta;
  sweep.fixed.m = parse_value(m_text, true);
  sweep.fixed.alpha = alpha;
  sweep.fixed.sigma = sigma.value;
  sweep.fixed.n = spec.n;

  const std::vector<infobound::SweepRow> rows = infobound::run_sweep(spec, sweep);
  if (format == "csv") {
    std::string csv = infobound::sweep_csv(sweep.axis, rows);
    csv.pop_back();  // trailing newline; emit() adds one
    emit(csv, out_path);
  } else {
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"axis", infobound::sweep_axis_name(sweep.axis)},
                       {"value", json_or_inf(row.value)},
                       {"bound_id", row.bound_id},
                       {"epsilon", json_or_inf(row.epsilon)},
                       {"feasible", row.feasible},
                       {"I", row.mi},
                       {"M_m", row.moment_root},
                       {"L", row.leakage},
                       {"I_max", row.max_information},
                       {"reason", row.reason}});
    }
    emit(jrows.dump(), out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact information-theoretic generalization-bound toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string out_path;
  std::string format = "json";
  std::string bound_name;
  double delta = 0.1;
  std::string m_text = "1";
  double alpha = 2.0;
  std::string gamma_text = "optimize";
  std::string suites = "theorem1,coverage,lemma,hoeffding,ordering,average";
  std::string delta_grid = "0.5,0.25,0.1,0.05";
  bool use_mc = false;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  double epsilon_external = 0.0;
  double epsilon_scale = 1.0;
  bool verbose = false;
  std::string axis_name;
  std::string values_text;
  std::string bounds_text;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--problem", common.problem_path, "problem spec JSON file")
        ->required();
    cmd->add_option("--n", common.n_override, "override the spec's n");
    cmd->add_option("--out", out_path, "write output to a file");
  };

  CLI::App* measures = app.add_subcommand("measures", "print every measure");
  add_common(measures);
  measures->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* bound = app.add_subcommand("bound", "evaluate one bound");
  add_common(bound);
  bound->add_option("--bound", bound_name, "bound id")->required();
  bound->add_option("--delta", delta, "confidence parameter in (0,1)");
  bound->add_option("--m", m_text, "moment order (> 0 or inf)");
  bound->add_option("--alpha", alpha, "alpha-MI order (> 1)");
  bound->add_option("--gamma", gamma_text, "strong-converse gamma or 'optimize'");

  CLI::App* verify = app.add_subcommand("verify", "run the numerical certification suites");
  add_common(verify);
  verify->add_option("--suite", suites, "comma list of suites to run");
  verify->add_option("--delta-grid", delta_grid, "comma list of deltas");
  verify->add_option("--m", m_text, "moment order for MC coverage");
  verify->add_flag("--mc", use_mc, "Monte Carlo coverage estimates");
  verify->add_option("--samples", samples, "Monte Carlo sample count");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--epsilon", epsilon_external,
                     "externally computed epsilon for --mc past the atom budget");
  verify->add_option("--epsilon-scale", epsilon_scale,
                     "test hook: scale every coverage epsilon");
  verify->add_flag("--verbose", verbose,
                   "include per-atom detail in coverage cells");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate bounds along an axis");
  add_common(sweep);
  sweep->add_option("--axis", axis_name, "delta|m|alpha|n|beta")->required();
  sweep->add_option("--values", values_text, "comma list of axis values")
      ->required();
  sweep->add_option("--bounds", bounds_text, "comma list of bound ids")
      ->required();
  sweep->add_option("--delta", delta, "fixed delta");
  sweep->add_option("--m", m_text, "fixed moment order");
  sweep->add_option("--alpha", alpha, "fixed alpha");
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(measures)) {
      return run_measures(common, format, out_path);
    }
    if (app.got_subcommand(bound)) {
      return run_bound(common, bound_name, delta, m_text, alpha, gamma_text,
                       out_path);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(common, suites, delta_grid, use_mc, samples, seed,
                        epsilon_external, epsilon_scale, verbose, out_path);
    }
    if (app.got_subcommand(sweep)) {
      if (format == "json" && sweep->count("--format") == 0) format = "csv";
      return run_sweep(common, axis_name, values_text, bounds_text, delta,
                       m_text, alpha, format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
