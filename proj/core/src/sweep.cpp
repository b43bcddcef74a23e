#include "infobound/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "infobound/logsum.hpp"
#include "infobound/verify.hpp"

namespace infobound {

namespace {

const std::vector<std::pair<SweepAxis, std::string>>& axis_names() {
  static const std::vector<std::pair<SweepAxis, std::string>> names{
      {SweepAxis::kDelta, "delta"}, {SweepAxis::kM, "m"},
      {SweepAxis::kAlpha, "alpha"}, {SweepAxis::kN, "n"},
      {SweepAxis::kBeta, "beta"},
  };
  return names;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

struct ModelMeasures {
  double mi;
  double leakage;
  double max_info;
  InfoProfile profile;
};

ModelMeasures measures_for(const JointModel& model) {
  InfoProfile profile = information_profile(model);
  return {mutual_information(profile), maximal_leakage(model),
          max_information(profile), std::move(profile)};
}

std::string validate_axis_value(SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kDelta:
      if (!(value > 0.0) || !(value < 1.0)) return "delta out of range (0,1)";
      return {};
    case SweepAxis::kM:
      if (std::isinf(value) && value > 0) return {};
      if (!(value > 0.0)) return "m must be positive or inf";
      return {};
    case SweepAxis::kAlpha:
      if (!(value > 1.0)) return "alpha out of range (must exceed 1)";
      return {};
    case SweepAxis::kN:
      if (!(value >= 1.0) || value != std::floor(value))
        return "n must be a positive integer";
      return {};
    case SweepAxis::kBeta:
      if (!(value >= 0.0) || std::isinf(value)) return "beta must be finite and nonnegative";
      return {};
  }
  return "unknown axis";
}

}  // namespace

const std::string& sweep_axis_name(SweepAxis axis) {
  for (const auto& [ax, name] : axis_names()) {
    if (ax == axis) return name;
  }
  throw std::logic_error("unknown sweep axis");
}

std::optional<SweepAxis> sweep_axis_from_name(const std::string& name) {
  for (const auto& [ax, axname] : axis_names()) {
    if (axname == name) return ax;
  }
  return std::nullopt;
}

std::vector<SweepRow> run_sweep(const ProblemSpec& spec, const SweepSpec& sweep) {
  if (sweep.values.empty()) {
    throw std::invalid_argument("sweep: values list must not be empty");
  }
  if (sweep.bounds.empty()) {
    throw std::invalid_argument("sweep: bounds list must not be empty");
  }
  if (sweep.axis == SweepAxis::kBeta &&
      spec.learner.kind != LearnerKind::kGibbs) {
    throw std::invalid_argument("sweep: beta axis requires a gibbs learner");
  }

  std::vector<SweepRow> rows;
  rows.reserve(sweep.values.size() * sweep.bounds.size());

  // delta/m/alpha sweeps reuse one model; n/beta sweeps rebuild per value
  std::optional<JointModel> base_model;
  std::optional<ModelMeasures> base_measures;
  const bool model_per_value =
      sweep.axis == SweepAxis::kN || sweep.axis == SweepAxis::kBeta;
  if (!model_per_value) {
    base_model = build_model(spec);
    base_measures = measures_for(*base_model);
  }

  for (double value : sweep.values) {
    const std::string reason = validate_axis_value(sweep.axis, value);
    std::optional<JointModel> local_model;
    std::optional<ModelMeasures> local_measures;
    if (reason.empty() && model_per_value) {
      if (sweep.axis == SweepAxis::kN) {
        local_model = build_model(spec, static_cast<int>(value));
      } else {
        ProblemSpec varied = spec;
        varied.learner.beta = value;
        local_model = build_model(varied);
      }
      local_measures = measures_for(*local_model);
    }
    const JointModel* model = model_per_value
                                  ? (local_model ? &*local_model : nullptr)
                                  : &*base_model;
    const ModelMeasures* measures =
        model_per_value ? (local_measures ? &*local_measures : nullptr)
                        : &*base_measures;

    for (BoundId bound : sweep.bounds) {
      SweepRow row;
      row.value = value;
      row.bound_id = bound_id_name(bound);
      if (!reason.empty()) {
        row.feasible = false;
        row.epsilon = std::numeric_limits<double>::infinity();
        row.reason = reason;
        rows.push_back(std::move(row));
        continue;
      }

      BoundQuery query = sweep.fixed;
      query.bound_id = bound;
      switch (sweep.axis) {
        case SweepAxis::kDelta: query.delta = value; break;
        case SweepAxis::kM: query.m = value; break;
        case SweepAxis::kAlpha: query.alpha = value; break;
        case SweepAxis::kN: query.n = static_cast<int>(value); break;
        case SweepAxis::kBeta: break;
      }

      // m = inf names the m -> infinity limit of the moment bound
      if (sweep.axis == SweepAxis::kM && std::isinf(value)) {
        if (bound == BoundId::kSingleDrawMoment) {
          query.bound_id = BoundId::kSingleDrawMInf;
        } else if (bound == BoundId::kPacBayesMoment ||
                   bound == BoundId::kRederivedMoment) {
          row.feasible = false;
          row.epsilon = std::numeric_limits<double>::infinity();
          row.reason = "m=inf is only defined for single_draw_moment";
          row.mi = measures->mi;
          row.leakage = measures->leakage;
          row.max_information = measures->max_info;
          row.moment_root = moment_root_infinity(measures->profile);
          rows.push_back(std::move(row));
          continue;
        }
      }

      const double effective_m =
          sweep.axis == SweepAxis::kM ? value : sweep.fixed.m;
      row.mi = measures->mi;
      row.leakage = measures->leakage;
      row.max_information = measures->max_info;
      row.moment_root = std::isinf(effective_m)
                            ? moment_root_infinity(measures->profile)
                            : central_moment_root(measures->profile, effective_m);

      try {
        const BoundResult result = evaluate_bound(*model, query);
        row.epsilon = result.epsilon;
        row.feasible = result.feasible;
      } catch (const std::invalid_argument& e) {
        row.feasible = false;
        row.epsilon = std::numeric_limits<double>::infinity();
        row.reason = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::string out = "axis,value,bound_id,epsilon,feasible,I,M_m,L,I_max,reason\n";
  const std::string& axis_name = sweep_axis_name(axis);
  for (const auto& row : rows) {
    out += axis_name;
    out += ',';
    out += format_double(row.value);
    out += ',';
    out += row.bound_id;
    out += ',';
    out += format_double(row.epsilon);
    out += ',';
    out += row.feasible ? "true" : "false";
    out += ',';
    out += format_double(row.mi);
    out += ',';
    out += format_double(row.moment_root);
    out += ',';
    out += format_double(row.leakage);
    out += ',';
    out += format_double(row.max_information);
    out += ',';
    out += row.reason;
    out += '\n';
  }
  return out;
}

}  // namespace infobound
