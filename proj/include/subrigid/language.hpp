#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "subrigid/morphism.hpp"
#include "subrigid/scalar.hpp"
#include "subrigid/words.hpp"

namespace subrigid {

/// Factors of a substitution subshift (or of a morphic image of another
/// language), materialized length by length. Extension is single-writer;
/// callers sharing a table across threads must serialize `extend_to`.
class LanguageTable {
 public:
  /// Language of a primitive substitution. Throws RejectedInput when sigma
  /// is not primitive or never grows (all images of length 1).
  static LanguageTable of_substitution(const Morphism& sigma, std::size_t n_max = 64);

  /// Factors of phi(y) for y in the base language: the language of the
  /// subshift generated by shifted phi-images of the base subshift.
  static LanguageTable of_image(const Morphism& phi, std::shared_ptr<LanguageTable> base,
                                std::size_t n_max = 64);

  std::size_t alphabet_size() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  /// The substitution generating this language, when it is one.
  const std::optional<Morphism>& generator() const { return generator_; }

  std::size_t max_length() const { return levels_.size() - 1; }
  void extend_to(std::size_t n);

  /// L_n; extends the table when needed.
  const std::set<Word>& words(std::size_t n);
  bool contains(WordView w);

  /// Rounds needed for the length-2 closure to stabilize.
  std::size_t closure_iterations() const { return closure_iterations_; }

 private:
  LanguageTable() = default;
  std::set<Word> compute_level(std::size_t n);
  std::size_t ancestor_length(std::size_t n) const;

  Alphabet alphabet_;
  std::optional<Morphism> generator_;
  Morphism expander_;  // working morphism whose images are >= 2 letters when possible
  std::shared_ptr<LanguageTable> base_;  // null for substitution languages
  std::deque<std::set<Word>> levels_;  // levels_[0] = {empty word}; deque keeps references stable
  std::size_t closure_iterations_ = 0;
};

/// Smallest k with min_a |sigma^k(a)| >= 2, or nullopt when sigma never grows.
std::optional<unsigned> growth_exponent(const Morphism& sigma);

struct ComplexityProfile {
  std::vector<std::size_t> p;  // p[n] = |L_n|, p[0] = 1
  std::vector<std::size_t> q;  // q[n] = number of complete words of length n
  Scalar ratio(std::size_t n) const { return Scalar(Rational(q.at(n), p.at(n))); }
};

ComplexityProfile complexity_profile(LanguageTable& language, std::size_t n_max);

enum class ReturnSide { Right, Left };

struct ReturnWordSet {
  std::set<Word> words;
  /// True when no word of the language starting with u avoids a second
  /// occurrence of u within the scanned window, so the set is complete.
  bool certified = false;
  std::size_t window = 0;
  /// 2*||sigma|| - 1 when u is a letter occurring in every image.
  std::optional<std::size_t> boundary_bound;
};

/// Right return words: uw in L, u a proper suffix of uw, no other
/// occurrence of u. Left return words: the mirror notion on wu.
/// Throws InvalidInput when u is not in the language.
ReturnWordSet return_words(LanguageTable& language, WordView u, ReturnSide side = ReturnSide::Right,
                           std::size_t max_window = 1024);

enum class PeriodicityVerdict { AperiodicEvidence, Periodic, Inconclusive };
const char* to_string(PeriodicityVerdict v);

/// Periodic iff p(n+1) = p(n) for some n < n_max.
PeriodicityVerdict aperiodicity_check(const Morphism& sigma, std::size_t n_max = 32);

/// Ultimately periodic sequence of morphisms sigma_n : A_{n+1}* -> A_n*.
class DirectiveSequence {
 public:
  DirectiveSequence(std::vector<Morphism> prefix, std::vector<Morphism> tail);
  static DirectiveSequence constant(const Morphism& sigma) { return DirectiveSequence({}, {sigma}); }

  const Morphism& at(std::size_t n) const;
  const Alphabet& alphabet(std::size_t n) const { return at(n).target(); }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period() const { return tail_.size(); }
  const std::vector<Morphism>& prefix() const { return prefix_; }
  const std::vector<Morphism>& tail() const { return tail_; }

  /// sigma_[n,m) = sigma_n o ... o sigma_{m-1} : A_m* -> A_n*; n < m.
  Morphism connecting(std::size_t n, std::size_t m) const;
  /// sigma_[n, n+period) for n >= prefix_length(): the level-n substitution.
  Morphism level_substitution(std::size_t n) const;
  /// Tail composition primitive.
  bool is_primitive() const;

 private:
  std::vector<Morphism> prefix_;
  std::vector<Morphism> tail_;
};

/// Language of the level-n subshift X^(n).
LanguageTable sadic_language(const DirectiveSequence& seq, std::size_t level, std::size_t n_max = 64);

}  // namespace subrigid
