#ifndef INFOBOUND_ALPHABET_HPP
#define INFOBOUND_ALPHABET_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infobound {

/// Hard cap on enumerated atoms; exceeding it is an error, never a silent
/// fallback to sampling.
inline constexpr std::size_t kDefaultAtomBudget = 10'000'000;

/// Ordered finite set of distinct string labels with index <-> label lookup.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  /// Alphabet over all n-tuples of `base`, enumerated lexicographically with
  /// the first component most significant. Labels are the component labels
  /// joined by commas.
  static Alphabet tuple_power(const Alphabet& base, int n,
                              std::size_t atom_budget = kDefaultAtomBudget);

 private:
  std::vector<std::string> labels_;
};

/// Number of n-tuples over a base-sized alphabet, or nullopt past the budget.
std::optional<std::size_t> checked_power(std::size_t base, int n,
                                         std::size_t atom_budget);

/// Splits a lexicographic tuple index into its component indices.
void decode_tuple(std::size_t tuple_index, int n, std::size_t base,
                  std::vector<std::size_t>& out);

}  // namespace infobound

#endif  // INFOBOUND_ALPHABET_HPP
