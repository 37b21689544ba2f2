#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subrigid/words.hpp"

namespace subrigid {

/// Dense non-negative integer matrix, row-major. For an incidence matrix the
/// rows are indexed by target letters and the columns by source letters.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  std::uint64_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  std::uint64_t column_sum(std::size_t c) const;
  bool positive() const;
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// A non-erasing morphism from words over `source` to words over `target`.
class Morphism {
 public:
  Morphism() = default;
  /// Throws InvalidInput when an image is empty, the image count differs
  /// from the source size, or an image uses a letter outside the target.
  Morphism(Alphabet source, Alphabet target, std::vector<Word> images);
  /// Endomorphism ("substitution") on one alphabet.
  Morphism(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  bool is_substitution() const { return source_ == target_; }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(WordView w) const;
  /// max_a |sigma(a)|
  std::size_t norm() const;
  std::size_t min_image_length() const;
  std::optional<std::size_t> constant_length() const;
  IntMatrix incidence() const;

  /// Human-readable "0->01, 1->10".
  std::string describe() const;

  bool operator==(const Morphism&) const = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

/// outer o inner, i.e. a -> outer(inner(a)). Requires inner.target == outer.source.
Morphism compose(const Morphism& outer, const Morphism& inner);
/// sigma^k for a substitution, k >= 1.
Morphism power(const Morphism& sigma, unsigned k);

struct MorphismProfile {
  std::optional<std::size_t> constant_length;
  bool proper = false;
  bool positive = false;
  bool primitive = false;
  /// Largest m such that every image is a product of runs b^k with k >= m.
  std::size_t max_consecutivity = 1;
  std::size_t norm = 0;
  std::size_t min_image_length = 0;
};

/// Primitivity is only meaningful for substitutions; for other morphisms it
/// is reported false.
MorphismProfile classify(const Morphism& sigma);

/// Wielandt-bounded test: some power M^k, k <= (d-1)^2 + 1, is positive.
bool is_primitive_matrix(const IntMatrix& m);

/// Smallest k >= 1 such that sigma^k is positive, if sigma is primitive.
std::optional<unsigned> positivity_exponent(const Morphism& sigma);

/// Product of cyclic groups Z/d_1 x ... x Z/d_r. Elements are dense
/// indices ordered lexicographically by their tuples.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::size_t> orders);

  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& orders() const { return orders_; }
  std::vector<std::size_t> tuple(Letter g) const;
  Letter element(const std::vector<std::size_t>& tuple) const;
  Letter add(Letter g, Letter h) const;
  Letter negate(Letter g) const;
  Letter subtract(Letter g, Letter h) const { return add(g, negate(h)); }
  Letter zero() const { return 0; }
  /// "0", "1", ... for a cyclic group; "(a,b)" tuples otherwise.
  Alphabet alphabet() const;

 private:
  std::vector<std::size_t> orders_;
  std::size_t size_ = 1;
};

/// sigma_u(g) = (u_1 + g)(u_2 + g)...(u_l + g).
Morphism tm_substitution(const FiniteAbelianGroup& group, WordView u);

/// Named substitutions: "thue_morse", "zeta" {l}, "sigma_j" {j, d},
/// "tm_ternary_0100".
Morphism builtin_family(const std::string& name, const std::map<std::string, long>& params = {});

}  // namespace subrigid
