#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "subrigid/language.hpp"
#include "subrigid/morphism.hpp"
#include "subrigid/scalar.hpp"

namespace subrigid {

/// (ancestor, i, j): w is phi(ancestor) with i letters cut from the front of
/// phi(ancestor_1) and j letters cut from the back of phi(ancestor_last).
struct Interpretation {
  Word ancestor;
  std::size_t i = 0;
  std::size_t j = 0;
  auto operator<=>(const Interpretation&) const = default;
};

/// All interpretations of w under phi whose ancestors satisfy `in_language`.
/// The predicate must be factor-closed, since it is used to prune prefixes.
std::vector<Interpretation> interpretations(const Morphism& phi, WordView w,
                                            const std::function<bool(WordView)>& in_language);

/// Perron-Frobenius letter frequencies (sum 1). Exact mode needs constant length.
std::vector<Scalar> letter_frequencies(const Morphism& sigma, Mode mode);

struct MeasureValue {
  Scalar value;
  bool in_language = true;
};

/// Cylinder measures of the unique invariant measure of a primitive
/// substitution subshift, or of the pushforward of such a measure through a
/// morphism (the S-adic levels above a finite prefix). Lookups are
/// memoized and serialized by an internal mutex, so a table may be shared.
class MeasureTable {
 public:
  /// Exact mode when sigma has constant length unless `mode` forces Float.
  /// Requesting Exact for a non-constant-length sigma throws InvalidInput.
  static std::shared_ptr<MeasureTable> of_substitution(const Morphism& sigma,
                                                       std::optional<Mode> mode = std::nullopt);
  /// mu(w) = (1/Z) sum over phi-interpretations s of base(a(s)),
  /// Z = sum_a |phi(a)| base(a).
  static std::shared_ptr<MeasureTable> pushforward(const Morphism& phi, std::shared_ptr<MeasureTable> base);

  Mode mode() const { return mode_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// The substitution, when this table is not a pushforward.
  const std::optional<Morphism>& substitution() const { return substitution_; }
  /// Power of the substitution used for the recursion (min image length >= 2).
  const Morphism& working() const { return working_; }
  unsigned working_exponent() const { return working_exponent_; }
  /// Perron-Frobenius eigenvalue of the working power.
  const Scalar& lambda() const { return lambda_; }
  /// Non-empty when the float two-word system looked ill-conditioned.
  const std::string& warning() const { return warning_; }

  std::vector<Scalar> letter_frequencies();
  std::map<Word, Scalar> two_word_measures();

  MeasureValue measure(WordView w);
  Scalar operator()(WordView w) { return measure(w).value; }

  /// Language words of length n (thread-safe copy).
  std::vector<Word> words(std::size_t n);
  bool contains(WordView w);

  /// Recomputes mu(w) for |w| >= 3 through one ancestor step using the
  /// memoized ancestors, for checking the recursion as an identity.
  Scalar recompute(WordView w);

 private:
  MeasureTable() = default;
  Scalar measure_locked(const Word& w);
  Scalar ancestor_sum(const Word& w);
  void build_base();

  mutable std::mutex mu_;
  Mode mode_ = Mode::Exact;
  Alphabet alphabet_;
  std::optional<Morphism> substitution_;
  Morphism working_;  // for a pushforward: phi
  unsigned working_exponent_ = 1;
  Scalar lambda_;
  Scalar normalizer_;  // Z for a pushforward
  std::string warning_;
  std::shared_ptr<LanguageTable> language_;
  std::shared_ptr<MeasureTable> base_;
  std::map<Word, Scalar> memo_;
};

/// occurrences(w, sigma^k(a)) / (|sigma^k(a)| - |w| + 1), sigma^k(a) built
/// from `start`. Throws when the generated word is shorter than w.
double empirical_frequency(const Morphism& sigma, WordView w, unsigned depth, Letter start = 0);

/// Frequencies of every length-n factor of sigma^depth(start), in one pass.
std::map<Word, double> empirical_frequencies(const Morphism& sigma, std::size_t n, unsigned depth, Letter start = 0);

/// Smallest depth with |sigma^depth(start)| >= min_length.
unsigned depth_for_length(const Morphism& sigma, std::size_t min_length, Letter start = 0);

}  // namespace subrigid
