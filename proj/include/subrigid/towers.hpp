#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "subrigid/language.hpp"
#include "subrigid/measures.hpp"
#include "subrigid/scalar.hpp"

namespace subrigid {

/// h_a^(n) = |sigma_[0,n)(a)| for every letter a of A_n.
struct HeightVector {
  std::size_t level = 0;
  std::vector<BigInt> h;
};

HeightVector heights(const DirectiveSequence& seq, std::size_t n);

/// sum_{i < |w|} h_{w_i}; the last letter is excluded. w must be complete.
BigInt equiv_key(const HeightVector& heights, WordView w);

/// Level measures mu_n of an ultimately periodic directive sequence, built
/// lazily and cached. Levels past the prefix repeat with the tail period.
class SadicMeasures {
 public:
  explicit SadicMeasures(DirectiveSequence seq, std::optional<Mode> mode = std::nullopt);

  const DirectiveSequence& sequence() const { return seq_; }
  Mode mode() const { return mode_; }
  std::shared_ptr<MeasureTable> level(std::size_t n);

 private:
  DirectiveSequence seq_;
  Mode mode_;
  std::mutex mu_;
  std::map<std::size_t, std::shared_ptr<MeasureTable>> cache_;
};

/// mu(T_w^(n)) = h_{w_1} mu_n([w]) / sum_a h_a mu_n([a]); 0 off the language.
Scalar subtower_mass(SadicMeasures& measures, std::size_t n, WordView w);

struct ClassMass {
  std::size_t level = 0;
  BigInt key;
  std::vector<Word> members;
  Scalar mass;
  /// True when length_cap reaches floor(key / min_a h_a) + 1, the longest
  /// length a member could have.
  bool complete_enumeration = false;
};

/// Complete words of the level-n language with the given key, up to
/// length_cap letters, and their total subtower mass.
ClassMass class_mass(SadicMeasures& measures, std::size_t n, const BigInt& key, std::size_t length_cap);
ClassMass class_mass(SadicMeasures& measures, std::size_t n, WordView representative, std::size_t length_cap);

}  // namespace subrigid
