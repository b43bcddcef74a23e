#ifndef INFOBOUND_MEASURES_HPP
#define INFOBOUND_MEASURES_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "infobound/joint.hpp"

namespace infobound {

/// One support atom of the joint with its information density in nats.
struct InfoAtom {
  std::size_t w;
  std::size_t zn;
  double log_joint;
  double density;
};

/// Atom-level distribution of the information density i(W, Z^n).
/// Atoms cover exactly the joint support; the cached mean is I(W;Z^n).
class InfoProfile {
 public:
  InfoProfile(std::vector<InfoAtom> atoms, double mean);

  const std::vector<InfoAtom>& atoms() const { return atoms_; }
  double mean() const { return mean_; }

 private:
  std::vector<InfoAtom> atoms_;
  double mean_;
};

InfoProfile information_profile(const JointModel& model);

/// I(W;Z^n) in nats; never negative (values within 1e-12 of 0 clamp to 0).
double mutual_information(const InfoProfile& profile);

/// M_m: mth root of the mth absolute central moment of the density.
double central_moment_root(const InfoProfile& profile, double m);

/// M_inf: largest |density - I| over the support.
double moment_root_infinity(const InfoProfile& profile);

/// Order-alpha dependence measure (alpha > 1), computed in the log domain.
/// Converges to maximal_leakage as alpha grows.
double alpha_mutual_information(const JointModel& model, double alpha);

/// L(Z^n -> W): log of the P_W-average of the per-hypothesis maximum
/// density ratio over datasets in the support of P_{Z^n}.
double maximal_leakage(const JointModel& model);

/// I_max: largest density over the support.
double max_information(const InfoProfile& profile);

/// P[i(W,Z^n) >= gamma]; right tail, inclusive at the boundary.
double info_tail(const InfoProfile& profile, double gamma);

/// D(P_{W|Z^n = z^n} || P_W) in nats.
double posterior_divergence(const JointModel& model, std::size_t zn_index);

/// mth root of E_{P_{Z^n}}[D(P_{W|Z^n} || P_W)^m]; equals I(W;Z^n) at m = 1.
double divergence_moment_root(const JointModel& model, double m);

/// -d log d - (1-d) log(1-d) with 0 log 0 = 0; natural log.
double binary_entropy(double delta);

/// Every measure the bounds consume, on fixed m / alpha grids.
struct MeasureReport {
  double mutual_information = 0.0;
  std::map<double, double> moment_roots;
  double moment_infinity = 0.0;
  double maximal_leakage = 0.0;
  double max_information = 0.0;
  std::map<double, double> alpha_mi;

  std::string to_json() const;
};

inline const std::vector<double>& default_moment_grid() {
  static const std::vector<double> grid{1, 2, 3, 4, 8, 16};
  return grid;
}

inline const std::vector<double>& default_alpha_grid() {
  static const std::vector<double> grid{1.1, 1.5, 2, 4, 10, 100, 1e4};
  return grid;
}

MeasureReport measure_report(const JointModel& model);

}  // namespace infobound

#endif  // INFOBOUND_MEASURES_HPP
