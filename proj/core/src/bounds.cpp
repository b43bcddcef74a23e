#include "infobound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "infobound/logsum.hpp"

namespace infobound {

namespace {

const std::vector<std::pair<BoundId, std::string>>& bound_names() {
  static const std::vector<std::pair<BoundId, std::string>> names{
      {BoundId::kAverage, "average"},
      {BoundId::kPacBayesData, "pac_bayes_data"},
      {BoundId::kPacBayesMoment, "pac_bayes_moment"},
      {BoundId::kSingleDrawData, "single_draw_data"},
      {BoundId::kSingleDrawMoment, "single_draw_moment"},
      {BoundId::kSingleDrawMInf, "single_draw_m_inf"},
      {BoundId::kSingleDrawLeakage, "single_draw_leakage"},
      {BoundId::kStrongConverse, "strong_converse"},
      {BoundId::kBaselineMi, "baseline_mi"},
      {BoundId::kBaselineAlpha, "baseline_alpha"},
      {BoundId::kRederivedMoment, "rederived_moment"},
      {BoundId::kRederivedLeakage, "rederived_leakage"},
  };
  return names;
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

void check_moment(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("invalid moment order: m must be positive");
  }
}

void check_sigma_n(double sigma, int n) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (n < 1) throw std::invalid_argument("n must be positive");
}

// Argument of the moment bound's square root; the rederived variant adds one log 2.
double moment_arg(double mi, double moment_root, double delta, double m) {
  return mi + moment_root / std::pow(delta / 2.0, 1.0 / m) +
         std::log(2.0 / delta);
}

}  // namespace

const std::string& bound_id_name(BoundId id) {
  for (const auto& [bid, name] : bound_names()) {
    if (bid == id) return name;
  }
  throw std::logic_error("unknown bound id");
}

std::optional<BoundId> bound_id_from_name(const std::string& name) {
  for (const auto& [bid, bname] : bound_names()) {
    if (bname == name) return bid;
  }
  return std::nullopt;
}

BoundResult infeasible_result(std::map<std::string, double> detail) {
  BoundResult result;
  result.epsilon = std::numeric_limits<double>::infinity();
  result.feasible = false;
  result.detail = std::move(detail);
  return result;
}

double gen_error(const LearningProblem& problem, const JointModel& model,
                 std::size_t w, std::size_t zn_index) {
  static thread_local std::vector<std::size_t> zs;
  decode_tuple(zn_index, model.n(), model.p_z().size(), zs);
  double empirical = 0.0;
  for (std::size_t z : zs) {
    empirical += problem.loss(w, z);
  }
  empirical /= static_cast<double>(model.n());
  double population = 0.0;
  for (std::size_t z = 0; z < model.p_z().size(); ++z) {
    population += model.p_z().prob(z) * problem.loss(w, z);
  }
  return empirical - population;
}

double bound_radius(double arg, double sigma, int n) {
  return std::sqrt(2.0 * sigma * sigma / n * arg);
}

double avg_gen_epsilon(double mi, double sigma, int n) {
  return bound_radius(mi, sigma, n);
}

double pac_bayes_epsilon(double divergence, double delta, double sigma, int n) {
  return bound_radius(divergence + std::log(1.0 / delta), sigma, n);
}

double pac_bayes_moment_epsilon(double div_moment_root, double delta, double m,
                                double sigma, int n) {
  return bound_radius(moment_arg(0.0, div_moment_root, delta, m), sigma, n);
}

double single_draw_moment_epsilon(double mi, double moment_root, double delta,
                                  double m, double sigma, int n) {
  return bound_radius(moment_arg(mi, moment_root, delta, m), sigma, n);
}

double single_draw_m_infinity_epsilon(double mi, double moment_inf, double delta,
                                      double sigma, int n) {
  return bound_radius(mi + moment_inf + std::log(2.0 / delta), sigma, n);
}

double single_draw_leakage_epsilon(double leakage, double delta, double sigma,
                                   int n) {
  return bound_radius(leakage + 2.0 * std::log(2.0 / delta), sigma, n);
}

double baseline_mi_epsilon(double mi, double delta, double sigma, int n) {
  return bound_radius((mi + binary_entropy(delta)) / delta + std::log(2.0),
                      sigma, n);
}

double baseline_alpha_epsilon(double alpha_mi, double delta, double alpha,
                              double sigma, int n) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("alpha out of range: alpha must exceed 1");
  }
  return bound_radius(alpha_mi + std::log(2.0) +
                          alpha / (alpha - 1.0) * std::log(1.0 / delta),
                      sigma, n);
}

double rederived_moment_epsilon(double mi, double moment_root, double delta,
                                double m, double sigma, int n) {
  return bound_radius(moment_arg(mi, moment_root, delta, m) + std::log(2.0),
                      sigma, n);
}

double rederived_leakage_epsilon(double leakage, double delta, double sigma,
                                 int n) {
  return bound_radius(leakage + 2.0 * std::log(2.0 / delta) + std::log(2.0),
                      sigma, n);
}

BoundResult single_draw_pointwise_bound(double density_value, double delta,
                                        double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double arg = density_value + std::log(1.0 / delta);
  std::map<std::string, double> detail{{"density", density_value},
                                       {"arg", arg}};
  if (arg < 0.0) return infeasible_result(std::move(detail));
  return BoundResult{bound_radius(arg, sigma, n), true, std::move(detail)};
}

BoundResult avg_gen_bound(const JointModel& model, double sigma, int n) {
  check_sigma_n(sigma, n);
  const double mi = mutual_information(information_profile(model));
  return BoundResult{avg_gen_epsilon(mi, sigma, n), true, {{"I", mi}}};
}

BoundResult pac_bayes_bound(const JointModel& model, std::size_t zn_index,
                            double delta, double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double div = posterior_divergence(model, zn_index);
  return BoundResult{pac_bayes_epsilon(div, delta, sigma, n), true,
                     {{"divergence", div}}};
}

BoundResult pac_bayes_moment_bound(const JointModel& model, double delta,
                                   double m, double sigma, int n) {
  check_delta(delta);
  check_moment(m);
  check_sigma_n(sigma, n);
  const double root = divergence_moment_root(model, m);
  return BoundResult{pac_bayes_moment_epsilon(root, delta, m, sigma, n), true,
                     {{"divergence_moment_root", root}}};
}

BoundResult single_draw_moment_bound(const JointModel& model, double delta,
                                     double m, double sigma, int n) {
  check_delta(delta);
  check_moment(m);
  check_sigma_n(sigma, n);
  const InfoProfile profile = information_profile(model);
  const double mi = mutual_information(profile);
  const double root = central_moment_root(profile, m);
  return BoundResult{single_draw_moment_epsilon(mi, root, delta, m, sigma, n),
                     true,
                     {{"I", mi}, {"M_m", root}}};
}

BoundResult single_draw_m_infinity_bound(const JointModel& model, double delta,
                                         double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const InfoProfile profile = information_profile(model);
  const double mi = mutual_information(profile);
  const double minf = moment_root_infinity(profile);
  return BoundResult{single_draw_m_infinity_epsilon(mi, minf, delta, sigma, n),
                     true,
                     {{"I", mi}, {"M_inf", minf}}};
}

BoundResult single_draw_leakage_bound(const JointModel& model, double delta,
                                      double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double leakage = maximal_leakage(model);
  return BoundResult{single_draw_leakage_epsilon(leakage, delta, sigma, n),
                     true,
                     {{"L", leakage}}};
}

BoundResult strong_converse_bound(const JointModel& model, double delta,
                                  double gamma, double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite");
  }
  const double tail = info_tail(information_profile(model), gamma);
  std::map<std::string, double> detail{{"gamma", gamma}, {"tail", tail}};
  if (!(delta - tail > 0.0)) return infeasible_result(std::move(detail));
  const double arg = gamma + std::log(2.0 / (delta - tail));
  if (arg < 0.0) return infeasible_result(std::move(detail));
  return BoundResult{bound_radius(arg, sigma, n), true, std::move(detail)};
}

BoundResult optimize_strong_converse(const JointModel& model, double delta,
                                     double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const InfoProfile profile = information_profile(model);

  // On a finite support the tail is a step function of gamma, so the best
  // gamma sits at a density value or just past one.
  constexpr double kEta = 1e-9;
  std::vector<double> candidates;
  candidates.reserve(2 * profile.atoms().size() + 1);
  for (const auto& atom : profile.atoms()) {
    candidates.push_back(atom.density);
    candidates.push_back(atom.density + kEta);
  }
  double min_density = profile.atoms().front().density;
  for (const auto& atom : profile.atoms()) {
    min_density = std::min(min_density, atom.density);
  }
  candidates.push_back(min_density - kEta);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  BoundResult best = infeasible_result();
  for (double gamma : candidates) {
    const double tail = info_tail(profile, gamma);
    if (!(delta - tail > 0.0)) continue;
    const double arg = gamma + std::log(2.0 / (delta - tail));
    if (arg < 0.0) continue;
    const double epsilon = bound_radius(arg, sigma, n);
    if (!best.feasible || epsilon < best.epsilon) {
      best = BoundResult{epsilon, true, {{"gamma", gamma}, {"tail", tail}}};
    }
  }
  best.detail["gamma_optimized"] = 1.0;  // gamma selection is our policy
  return best;
}

BoundResult baseline_mi_bound(const JointModel& model, double delta,
                              double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double mi = mutual_information(information_profile(model));
  return BoundResult{baseline_mi_epsilon(mi, delta, sigma, n), true,
                     {{"I", mi}}};
}

BoundResult baseline_alpha_bound(const JointModel& model, double delta,
                                 double alpha, double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double ami = alpha_mutual_information(model, alpha);
  return BoundResult{baseline_alpha_epsilon(ami, delta, alpha, sigma, n), true,
                     {{"I_alpha", ami}}};
}

BoundResult rederived_moment_bound(const JointModel& model, double delta,
                                   double m, double sigma, int n) {
  check_delta(delta);
  check_moment(m);
  check_sigma_n(sigma, n);
  const InfoProfile profile = information_profile(model);
  const double mi = mutual_information(profile);
  const double root = central_moment_root(profile, m);
  return BoundResult{rederived_moment_epsilon(mi, root, delta, m, sigma, n),
                     true,
                     {{"I", mi}, {"M_m", root}}};
}

BoundResult rederived_leakage_bound(const JointModel& model, double delta,
                                    double sigma, int n) {
  check_delta(delta);
  check_sigma_n(sigma, n);
  const double leakage = maximal_leakage(model);
  return BoundResult{rederived_leakage_epsilon(leakage, delta, sigma, n), true,
                     {{"L", leakage}}};
}

namespace {

// Worst case of a per-atom bound over the joint support, for the summary
// evaluators below; per-atom behavior lives in the verifier.
BoundResult worst_case_single_draw_data(const JointModel& model, double delta,
                                        double sigma, int n) {
  const InfoProfile profile = information_profile(model);
  const double max_density = max_information(profile);
  BoundResult result = single_draw_pointwise_bound(max_density, delta, sigma, n);
  result.detail["aggregated_over_support"] = 1.0;
  return result;
}

BoundResult worst_case_pac_bayes_data(const JointModel& model, double delta,
                                      double sigma, int n) {
  double worst = 0.0;
  for (std::size_t zn = 0; zn < model.dataset_count(); ++zn) {
    if (model.p_zn().log_prob(zn) == kNegInf) continue;
    worst = std::max(worst, posterior_divergence(model, zn));
  }
  BoundResult result{pac_bayes_epsilon(worst, delta, sigma, n), true,
                     {{"divergence", worst}}};
  result.detail["aggregated_over_support"] = 1.0;
  return result;
}

}  // namespace

BoundResult evaluate_bound(const JointModel& model, const BoundQuery& query) {
  switch (query.bound_id) {
    case BoundId::kAverage:
      return avg_gen_bound(model, query.sigma, query.n);
    case BoundId::kPacBayesData:
      return worst_case_pac_bayes_data(model, query.delta, query.sigma, query.n);
    case BoundId::kPacBayesMoment:
      return pac_bayes_moment_bound(model, query.delta, query.m, query.sigma,
                                    query.n);
    case BoundId::kSingleDrawData:
      return worst_case_single_draw_data(model, query.delta, query.sigma,
                                         query.n);
    case BoundId::kSingleDrawMoment:
      return single_draw_moment_bound(model, query.delta, query.m, query.sigma,
                                      query.n);
    case BoundId::kSingleDrawMInf:
      return single_draw_m_infinity_bound(model, query.delta, query.sigma,
                                          query.n);
    case BoundId::kSingleDrawLeakage:
      return single_draw_leakage_bound(model, query.delta, query.sigma,
                                       query.n);
    case BoundId::kStrongConverse:
      return query.gamma ? strong_converse_bound(model, query.delta,
                                                 *query.gamma, query.sigma,
                                                 query.n)
                         : optimize_strong_converse(model, query.delta,
                                                    query.sigma, query.n);
    case BoundId::kBaselineMi:
      return baseline_mi_bound(model, query.delta, query.sigma, query.n);
    case BoundId::kBaselineAlpha:
      return baseline_alpha_bound(model, query.delta, query.alpha, query.sigma,
                                  query.n);
    case BoundId::kRederivedMoment:
      return rederived_moment_bound(model, query.delta, query.m, query.sigma,
                                    query.n);
    case BoundId::kRederivedLeakage:
      return rederived_leakage_bound(model, query.delta, query.sigma, query.n);
  }
  throw std::logic_error("unknown bound id");
}

std::string BoundResult::to_json(const std::string& bound_id,
                                 const std::map<std::string, double>& params) const {
  nlohmann::ordered_json j;
  j["bound_id"] = bound_id;
  nlohmann::ordered_json p;
  for (const auto& [key, value] : params) {
    p[key] = value;
  }
  j["params"] = p;
  if (std::isinf(epsilon)) {
    j["epsilon"] = "inf";
  } else {
    j["epsilon"] = epsilon;
  }
  j["feasible"] = feasible;
  nlohmann::ordered_json d;
  for (const auto& [key, value] : detail) {
    d[key] = value;
  }
  j["detail"] = d;
  return j.dump();
}

}  // namespace infobound
