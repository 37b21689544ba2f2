#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "subrigid/language.hpp"
#include "subrigid/measures.hpp"
#include "subrigid/morphism.hpp"
#include "subrigid/scalar.hpp"

namespace subrigid {

/// D_m(c,d): total measure of length-m cylinders starting with c and ending with d.
struct FirstLastMassVector {
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<Scalar> entries;  // row-major, entries[c * d + e]

  const Scalar& at(Letter c, Letter e) const { return entries[c * d + e]; }
  Scalar total() const;
  /// a_m = sum_c D_m(c,c)
  Scalar complete_mass() const;
  /// sum over pairs with f(x) = g(y)
  Scalar matched_mass(const std::vector<Letter>& f, const std::vector<Letter>& g) const;
  bool operator==(const FirstLastMassVector&) const = default;
};

/// First/last mass vectors of a constant-length substitution. Lengths up to
/// the image length come from cylinder enumeration; longer ones from the
/// transfer recursion through ancestors of length n+1 and n+2.
class FirstLastEngine {
 public:
  explicit FirstLastEngine(std::shared_ptr<MeasureTable> table);

  std::size_t length() const { return ell_; }
  std::size_t alphabet_size() const { return d_; }
  const Morphism& substitution() const { return sigma_; }
  MeasureTable& table() { return *table_; }

  FirstLastMassVector get(std::size_t m);
  /// Direct sum over L_m, independent of the recursion.
  FirstLastMassVector enumerate(std::size_t m);

  /// Position maps p_k(a) = sigma(a)_k, k in [1, ell].
  std::vector<Letter> position_map(std::size_t k) const;

 private:
  FirstLastMassVector compute(std::size_t m);

  std::shared_ptr<MeasureTable> table_;
  Morphism sigma_;
  std::size_t ell_ = 0;
  std::size_t d_ = 0;
  std::mutex mu_;
  std::map<std::size_t, FirstLastMassVector> memo_;
};

struct ClosureBound {
  Scalar upper;
  std::size_t semigroup_size = 0;
  /// Base length and position-map pair attaining the bound.
  std::size_t base_length = 0;
};

/// sup_m a_m <= max over base lengths b in [2, ell] and pairs (f, g) in the
/// semigroup generated by the transfer maps (plus the identity) of
/// sum_{f(x)=g(y)} D_b(x,y). nullopt when the semigroup exceeds `cap`.
std::optional<ClosureBound> closure_upper_bound(FirstLastEngine& engine, std::size_t cap = 200000);

struct Certificate {
  std::string kind;
  Scalar bound;
  std::string witness;
  std::string sequence;
};

struct RateReport {
  Scalar lower;
  std::optional<Scalar> upper;
  bool exact = false;
  std::optional<std::size_t> witness_length;
  /// Level-0 key of the witness class, m* - 1 for constant length.
  std::optional<BigInt> witness_key;
  std::string partial_rigidity_sequence;
  std::string upper_method;
  std::vector<Certificate> certificates;
  std::vector<std::pair<std::size_t, Scalar>> profile;  // (m, a_m)
};

/// a_m for m in [2, max_m]. Constant length uses the recursion; otherwise
/// complete cylinders are enumerated directly.
std::vector<std::pair<std::size_t, Scalar>> complete_mass_profile(const Morphism& sigma, std::size_t max_m);

/// Default scan cap 4*ell + 8.
std::size_t default_max_m(std::size_t ell);

/// Rate of a primitive aperiodic constant-length substitution. Rejects
/// periodic input.
RateReport delta_constant_length(const Morphism& sigma, std::size_t max_m);

struct TmAnalysis {
  RateReport report;
  /// c[m][g] = C_m(+g) for m in [2, max_m].
  std::map<std::size_t, std::vector<Scalar>> shifts;
};

/// Thue-Morse type substitution sigma_u over a finite abelian group.
TmAnalysis tm_analysis(const FiniteAbelianGroup& group, WordView u, std::size_t max_m);

/// When sigma is sigma_u for the cyclic group of its alphabet size, the group
/// and u; nullopt otherwise.
std::optional<std::pair<FiniteAbelianGroup, Word>> as_thue_morse_type(const Morphism& sigma);

/// Every applicable sufficient-condition certificate for the sequence.
std::vector<Certificate> certificates(const DirectiveSequence& seq);

struct Diagnostic {
  std::string verdict;  // "not_rigid_certified", "rigid_certified", "inconclusive"
  std::vector<Scalar> ratios;  // ratios[n] = q(n)/p(n), n >= 1 (index 0 unused)
  std::optional<Scalar> upper;
  std::string trend;
};

Diagnostic rigidity_diagnostic(const Morphism& sigma, std::size_t n_max);

/// Product of rates in [0,1]; throws InvalidInput otherwise.
Scalar product_rate(const std::vector<Scalar>& rates);

struct RateFactor {
  BigInt ell;
  unsigned q = 1;  // ell_k = ell_{k-1}^q (1 for the first factor)
  unsigned long m = 0;
  Rational ratio;   // (ell-1)/(ell+1)
  Rational delta_k;
  bool bracket_ok = false;  // ratio * delta_k <= target <= delta_k
};

struct RateConstruction {
  Rational target;
  Rational eps;
  std::vector<RateFactor> factors;
  bool exact_hit = false;
  bool converged = false;
};

/// Greedy product of zeta_ell rates approaching target from above.
RateConstruction approximate_rate(const Rational& target, const Rational& eps);

}  // namespace subrigid
