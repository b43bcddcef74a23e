// Golden model suite shared by the unit tests and the acceptance suite:
// copy channel, independent kernel, the Gibbs case used throughout, two
// larger Gibbs variants, and 30 seeded random models.

#ifndef INFOBOUND_TESTS_GOLDEN_HPP
#define INFOBOUND_TESTS_GOLDEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "infobound/problem.hpp"
#include "infobound/rng.hpp"
#include "oracle.hpp"

namespace golden {

struct GoldenCase {
  std::string name;
  std::vector<std::string> z_labels;
  std::vector<std::string> w_labels;
  std::vector<double> p_z_weights;
  std::vector<std::vector<double>> loss;
  int n = 1;
  // structured cases carry a learner; random cases carry raw conditional rows
  std::optional<infobound::LearnerSpec> learner;
  std::vector<std::vector<double>> cond_rows;
};

inline std::vector<std::string> index_labels(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) labels.push_back(std::to_string(i));
  return labels;
}

inline infobound::LearningProblem make_problem(const GoldenCase& g) {
  return infobound::LearningProblem(infobound::Alphabet(g.z_labels),
                                    infobound::Alphabet(g.w_labels), g.loss,
                                    std::nullopt);
}

inline double resolved_sigma(const GoldenCase& g) {
  return infobound::sigma_from_bounded_loss(make_problem(g)).value;
}

inline infobound::JointModel build_core_model(const GoldenCase& g) {
  infobound::FiniteDistribution p_z =
      infobound::make_distribution(g.z_labels, g.p_z_weights);
  if (g.learner) {
    infobound::ProblemSpec spec{make_problem(g), p_z, *g.learner, g.n};
    return infobound::build_model(spec);
  }
  infobound::Alphabet datasets =
      infobound::Alphabet::tuple_power(p_z.alphabet(), g.n);
  std::vector<infobound::FiniteDistribution> conditionals;
  conditionals.reserve(g.cond_rows.size());
  for (const auto& row : g.cond_rows) {
    conditionals.push_back(infobound::make_distribution(g.w_labels, row));
  }
  return infobound::build_joint(
      p_z, g.n, infobound::PosteriorKernel(std::move(datasets),
                                           std::move(conditionals)));
}

inline testoracle::OracleModel build_oracle_model(const GoldenCase& g) {
  testoracle::OracleModel m;
  m.p_z = testoracle::normalize(g.p_z_weights);
  m.n = g.n;
  m.n_w = g.w_labels.size();
  std::size_t datasets = 1;
  for (int k = 0; k < g.n; ++k) datasets *= g.z_labels.size();

  std::vector<std::vector<std::size_t>> tuples;
  {
    std::vector<std::size_t> digits(static_cast<std::size_t>(g.n), 0);
    for (std::size_t i = 0; i < datasets; ++i) {
      tuples.push_back(digits);
      for (int k = g.n - 1; k >= 0; --k) {
        auto& d = digits[static_cast<std::size_t>(k)];
        if (++d < g.z_labels.size()) break;
        d = 0;
      }
    }
  }

  m.cond.resize(datasets);
  for (std::size_t zi = 0; zi < datasets; ++zi) {
    if (!g.learner) {
      m.cond[zi] = testoracle::normalize(g.cond_rows[zi]);
      continue;
    }
    const auto& learner = *g.learner;
    std::vector<double> prior = learner.prior_weights.empty()
                                    ? std::vector<double>(m.n_w, 1.0)
                                    : learner.prior_weights;
    prior = testoracle::normalize(std::move(prior));
    switch (learner.kind) {
      case infobound::LearnerKind::kGibbs:
        m.cond[zi] =
            testoracle::oracle_gibbs_row(g.loss, prior, learner.beta, tuples[zi]);
        break;
      case infobound::LearnerKind::kErmNoisy:
        m.cond[zi] =
            testoracle::oracle_erm_row(g.loss, learner.noise, tuples[zi], m.n_w);
        break;
      case infobound::LearnerKind::kIndependent:
        m.cond[zi] = prior;
        break;
    }
  }
  m.build();
  return m;
}

inline GoldenCase make_copy_channel() {
  GoldenCase g;
  g.name = "copy_channel";
  g.z_labels = {"0", "1"};
  g.w_labels = {"0", "1"};
  g.p_z_weights = {1.0, 1.0};
  g.loss = {{0.0, 1.0}, {1.0, 0.0}};
  g.n = 1;
  infobound::LearnerSpec learner;
  learner.kind = infobound::LearnerKind::kErmNoisy;
  learner.noise = 0.0;
  g.learner = learner;
  return g;
}

inline GoldenCase make_independent() {
  GoldenCase g;
  g.name = "independent";
  g.z_labels = {"0", "1"};
  g.w_labels = {"0", "1"};
  g.p_z_weights = {1.0, 1.0};
  g.loss = {{0.0, 1.0}, {1.0, 0.0}};
  g.n = 1;
  infobound::LearnerSpec learner;
  learner.kind = infobound::LearnerKind::kIndependent;
  g.learner = learner;
  return g;
}

inline GoldenCase make_gibbs_golden() {
  GoldenCase g;
  g.name = "gibbs_golden";
  g.z_labels = {"0", "1"};
  g.w_labels = {"0", "1"};
  g.p_z_weights = {1.0, 1.0};
  g.loss = {{0.0, 1.0}, {1.0, 0.0}};
  g.n = 2;
  infobound::LearnerSpec learner;
  learner.kind = infobound::LearnerKind::kGibbs;
  learner.beta = 1.0;
  g.learner = learner;
  return g;
}

inline GoldenCase make_extended_gibbs(int n, double beta) {
  GoldenCase g;
  g.name = "extended_gibbs_n" + std::to_string(n);
  g.z_labels = index_labels(3);
  g.w_labels = index_labels(5);
  g.p_z_weights = {1.0, 1.0, 1.0};
  g.loss = {{0.0, 0.5, 1.0},
            {0.25, 0.0, 0.75},
            {1.0, 0.25, 0.0},
            {0.5, 1.0, 0.25},
            {0.75, 0.25, 0.5}};
  g.n = n;
  infobound::LearnerSpec learner;
  learner.kind = infobound::LearnerKind::kGibbs;
  learner.beta = beta;
  g.learner = learner;
  return g;
}

// Seeded generator: sizes in 2..4, n in 1..4, weights in [0.75, 1.5], loss
// entries in [0, 1); every fifth seed zeroes one kernel entry to exercise
// null atoms.
inline GoldenCase make_random_case(std::uint64_t seed) {
  infobound::SplitMix64 stream = infobound::SplitMix64::for_counter(seed, 0);
  GoldenCase g;
  g.name = "random_" + std::to_string(seed);
  const std::size_t n_z = 2 + stream.next_u64() % 3;
  const std::size_t n_w = 2 + stream.next_u64() % 3;
  g.n = static_cast<int>(1 + stream.next_u64() % 4);
  g.z_labels = index_labels(n_z);
  g.w_labels = index_labels(n_w);
  for (std::size_t z = 0; z < n_z; ++z) {
    g.p_z_weights.push_back(0.75 + 0.75 * stream.next_double());
  }
  std::size_t datasets = 1;
  for (int k = 0; k < g.n; ++k) datasets *= n_z;
  const bool zero_one_entry = seed % 5 == 0;
  for (std::size_t zi = 0; zi < datasets; ++zi) {
    std::vector<double> row;
    for (std::size_t w = 0; w < n_w; ++w) {
      row.push_back(0.75 + 0.75 * stream.next_double());
    }
    if (zero_one_entry && zi == 0) row[0] = 0.0;
    g.cond_rows.push_back(std::move(row));
  }
  for (std::size_t w = 0; w < n_w; ++w) {
    std::vector<double> row;
    for (std::size_t z = 0; z < n_z; ++z) {
      row.push_back(stream.next_double());
    }
    g.loss.push_back(std::move(row));
  }
  return g;
}

inline std::vector<GoldenCase> golden_suite() {
  std::vector<GoldenCase> suite;
  suite.push_back(make_copy_channel());
  suite.push_back(make_independent());
  suite.push_back(make_gibbs_golden());
  suite.push_back(make_extended_gibbs(4, 0.5));
  suite.push_back(make_extended_gibbs(6, 2.0));
  for (std::uint64_t i = 0; i < 30; ++i) {
    suite.push_back(make_random_case(1000 + i));
  }
  return suite;
}

}  // namespace golden

#endif  // INFOBOUND_TESTS_GOLDEN_HPP
