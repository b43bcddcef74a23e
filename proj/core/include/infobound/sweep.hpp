#ifndef INFOBOUND_SWEEP_HPP
#define INFOBOUND_SWEEP_HPP

#include <string>
#include <vector>

#include "infobound/bounds.hpp"
#include "infobound/problem.hpp"

namespace infobound {

enum class SweepAxis { kDelta, kM, kAlpha, kN, kBeta };

const std::string& sweep_axis_name(SweepAxis axis);
std::optional<SweepAxis> sweep_axis_from_name(const std::string& name);

/// One axis, its values (m may be +inf), fixed remaining parameters, and the
/// bounds to evaluate at every grid point.
struct SweepSpec {
  SweepAxis axis = SweepAxis::kDelta;
  std::vector<double> values;
  BoundQuery fixed;
  std::vector<BoundId> bounds;
};

struct SweepRow {
  double value = 0.0;
  std::string bound_id;
  double epsilon = 0.0;
  bool feasible = false;
  double mi = 0.0;
  double moment_root = 0.0;
  double leakage = 0.0;
  double max_information = 0.0;
  std::string reason;
};

/// Evaluates the grid in deterministic axis-major order. An out-of-range
/// axis value yields feasible=false rows with the reason filled in.
std::vector<SweepRow> run_sweep(const ProblemSpec& spec, const SweepSpec& sweep);

/// CSV with the fixed column order
/// axis,value,bound_id,epsilon,feasible,I,M_m,L,I_max,reason.
std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace infobound

#endif  // INFOBOUND_SWEEP_HPP
