#include "infobound/alphabet.hpp"

#include <stdexcept>
#include <unordered_set>

namespace infobound {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw std::invalid_argument("alphabet must have at least one symbol");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate alphabet label: " + label);
    }
  }
}

std::optional<std::size_t> Alphabet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> checked_power(std::size_t base, int n,
                                         std::size_t atom_budget) {
  std::size_t count = 1;
  for (int k = 0; k < n; ++k) {
    if (count > atom_budget / base) return std::nullopt;
    count *= base;
  }
  if (count > atom_budget) return std::nullopt;
  return count;
}

void decode_tuple(std::size_t tuple_index, int n, std::size_t base,
                  std::vector<std::size_t>& out) {
  out.resize(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = tuple_index % base;
    tuple_index /= base;
  }
}

Alphabet Alphabet::tuple_power(const Alphabet& base, int n,
                               std::size_t atom_budget) {
  if (n < 1) throw std::invalid_argument("tuple power requires n >= 1");
  const auto count = checked_power(base.size(), n, atom_budget);
  if (!count) {
    throw std::invalid_argument("enumeration too large: |Z|^n exceeds atom budget");
  }
  std::vector<std::string> labels;
  labels.reserve(*count);
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < *count; ++i) {
    std::string label = base.label(digits[0]);
    for (std::size_t k = 1; k < digits.size(); ++k) {
      label += ',';
      label += base.label(digits[k]);
    }
    labels.push_back(std::move(label));
    // lexicographic increment, last component fastest
    for (int k = n - 1; k >= 0; --k) {
      auto& d = digits[static_cast<std::size_t>(k)];
      if (++d < base.size()) break;
      d = 0;
    }
  }
  return Alphabet(std::move(labels));
}

}  // namespace infobound
