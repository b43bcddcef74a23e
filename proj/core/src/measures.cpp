#include "infobound/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "infobound/logsum.hpp"

namespace infobound {

namespace {

constexpr double kZeroTol = 1e-12;

// Tiny negatives are rounding noise on quantities that are nonnegative by
// definition; anything larger is a real bug.
double clamp_nonneg(double x) {
  if (x < 0.0 && x > -kZeroTol) return 0.0;
  return x;
}

}  // namespace

InfoProfile::InfoProfile(std::vector<InfoAtom> atoms, double mean)
    : atoms_(std::move(atoms)), mean_(mean) {
  if (atoms_.empty()) throw std::invalid_argument("empty information profile");
  KahanSum total;
  KahanSum weighted;
  for (const auto& atom : atoms_) {
    const double p = std::exp(atom.log_joint);
    total.add(p);
    weighted.add(p * atom.density);
  }
  if (std::abs(total.value() - 1.0) > kZeroTol) {
    throw std::invalid_argument("profile atoms do not cover the support");
  }
  if (std::abs(weighted.value() - mean_) > kZeroTol) {
    throw std::invalid_argument("cached mean disagrees with atom average");
  }
  if (mean_ < 0.0) {
    throw std::invalid_argument("negative information density mean");
  }
}

InfoProfile information_profile(const JointModel& model) {
  const std::size_t n_w = model.hypothesis_count();
  const std::size_t n_zn = model.dataset_count();
  std::vector<InfoAtom> atoms;
  KahanSum mean;
  for (std::size_t zn = 0; zn < n_zn; ++zn) {
    for (std::size_t w = 0; w < n_w; ++w) {
      const double lj = model.joint_log_prob(w, zn);
      if (lj == kNegInf) continue;
      const double density =
          lj - model.p_w().log_prob(w) - model.p_zn().log_prob(zn);
      atoms.push_back({w, zn, lj, density});
      mean.add(std::exp(lj) * density);
    }
  }
  return InfoProfile(std::move(atoms), clamp_nonneg(mean.value()));
}

double mutual_information(const InfoProfile& profile) { return profile.mean(); }

double central_moment_root(const InfoProfile& profile, double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("invalid moment order: m must be positive");
  }
  const auto& atoms = profile.atoms();
  const auto [lo, hi] = std::minmax_element(
      atoms.begin(), atoms.end(),
      [](const InfoAtom& a, const InfoAtom& b) { return a.density < b.density; });
  if (lo->density == hi->density) return 0.0;
  const double mean = profile.mean();
  KahanSum acc;
  for (const auto& atom : atoms) {
    acc.add(std::exp(atom.log_joint) * std::pow(std::abs(atom.density - mean), m));
  }
  return std::pow(acc.value(), 1.0 / m);
}

double moment_root_infinity(const InfoProfile& profile) {
  const auto& atoms = profile.atoms();
  double lo = atoms.front().density;
  double hi = lo;
  for (const auto& atom : atoms) {
    lo = std::min(lo, atom.density);
    hi = std::max(hi, atom.density);
  }
  if (lo == hi) return 0.0;
  const double mean = profile.mean();
  return std::max(std::abs(hi - mean), std::abs(lo - mean));
}

double alpha_mutual_information(const JointModel& model, double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("alpha out of range: alpha must exceed 1");
  }
  const std::size_t n_w = model.hypothesis_count();
  const std::size_t n_zn = model.dataset_count();
  // Order of the two expectations is the one whose alpha -> inf limit is the
  // maximal leakage L(Z^n -> W): outer over hypotheses, inner over datasets.
  std::vector<double> outer_terms;
  outer_terms.reserve(n_w);
  std::vector<double> inner;
  for (std::size_t w = 0; w < n_w; ++w) {
    const double lp_w = model.p_w().log_prob(w);
    if (lp_w == kNegInf) continue;
    inner.clear();
    for (std::size_t zn = 0; zn < n_zn; ++zn) {
      const double lj = model.joint_log_prob(w, zn);
      if (lj == kNegInf) continue;
      const double lp_zn = model.p_zn().log_prob(zn);
      const double density = lj - lp_w - lp_zn;
      inner.push_back(lp_zn + alpha * density);
    }
    outer_terms.push_back(lp_w + log_sum_exp(inner) / alpha);
  }
  return clamp_nonneg(alpha / (alpha - 1.0) * log_sum_exp(outer_terms));
}

double maximal_leakage(const JointModel& model) {
  const std::size_t n_w = model.hypothesis_count();
  const std::size_t n_zn = model.dataset_count();
  std::vector<double> terms;
  terms.reserve(n_w);
  for (std::size_t w = 0; w < n_w; ++w) {
    const double lp_w = model.p_w().log_prob(w);
    if (lp_w == kNegInf) continue;
    double max_density = kNegInf;
    for (std::size_t zn = 0; zn < n_zn; ++zn) {
      const double lj = model.joint_log_prob(w, zn);
      if (lj == kNegInf) continue;
      const double density = lj - lp_w - model.p_zn().log_prob(zn);
      max_density = std::max(max_density, density);
    }
    terms.push_back(lp_w + max_density);
  }
  return clamp_nonneg(log_sum_exp(terms));
}

double max_information(const InfoProfile& profile) {
  double hi = kNegInf;
  for (const auto& atom : profile.atoms()) {
    hi = std::max(hi, atom.density);
  }
  return clamp_nonneg(hi);
}

double info_tail(const InfoProfile& profile, double gamma) {
  KahanSum acc;
  for (const auto& atom : profile.atoms()) {
    if (atom.density >= gamma) acc.add(std::exp(atom.log_joint));
  }
  return std::min(acc.value(), 1.0);
}

double posterior_divergence(const JointModel& model, std::size_t zn_index) {
  const double lp_zn = model.p_zn().log_prob(zn_index);
  if (lp_zn == kNegInf) {
    throw std::invalid_argument("conditioning on null set: P_Zn(z^n) = 0");
  }
  const auto& cond = model.kernel().conditional(zn_index);
  KahanSum acc;
  for (std::size_t w = 0; w < cond.size(); ++w) {
    const double lc = cond.log_prob(w);
    if (lc == kNegInf) continue;
    acc.add(std::exp(lc) * (lc - model.p_w().log_prob(w)));
  }
  return clamp_nonneg(acc.value());
}

double divergence_moment_root(const JointModel& model, double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("invalid moment order: m must be positive");
  }
  KahanSum acc;
  for (std::size_t zn = 0; zn < model.dataset_count(); ++zn) {
    const double lp = model.p_zn().log_prob(zn);
    if (lp == kNegInf) continue;
    acc.add(std::exp(lp) * std::pow(posterior_divergence(model, zn), m));
  }
  return std::pow(acc.value(), 1.0 / m);
}

double binary_entropy(double delta) {
  if (!(delta >= 0.0) || !(delta <= 1.0)) {
    throw std::invalid_argument("invalid probability: delta must lie in [0, 1]");
  }
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log(delta) - (1.0 - delta) * std::log1p(-delta);
}

MeasureReport measure_report(const JointModel& model) {
  const InfoProfile profile = information_profile(model);
  MeasureReport report;
  report.mutual_information = mutual_information(profile);
  for (double m : default_moment_grid()) {
    report.moment_roots[m] = central_moment_root(profile, m);
  }
  report.moment_infinity = moment_root_infinity(profile);
  report.maximal_leakage = maximal_leakage(model);
  report.max_information = max_information(profile);
  for (double alpha : default_alpha_grid()) {
    report.alpha_mi[alpha] = alpha_mutual_information(model, alpha);
  }
  return report;
}

namespace {

std::string grid_key(const char* prefix, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%g", prefix, value);
  return buf;
}

}  // namespace

std::string MeasureReport::to_json() const {
  nlohmann::ordered_json j;
  j["mutual_information"] = mutual_information;
  for (const auto& [m, value] : moment_roots) {
    j[grid_key("moment_root_", m)] = value;
  }
  j["moment_infinity"] = moment_infinity;
  j["maximal_leakage"] = maximal_leakage;
  j["max_information"] = max_information;
  for (const auto& [alpha, value] : alpha_mi) {
    j[grid_key("alpha_mi_", alpha)] = value;
  }
  return j.dump();
}

}  // namespace infobound
