#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subrigid {

/// Letters are dense indices 0..d-1; display symbols only exist in Alphabet.
using Letter = std::uint16_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

/// Count of each letter in a word, indexed by letter.
using AbelianVector = std::vector<std::size_t>;

class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InvalidInput on an empty or duplicated symbol list.
  explicit Alphabet(std::vector<std::string> symbols);

  /// Symbols "0", "1", ..., "d-1".
  static Alphabet numeric(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter a) const;
  const std::vector<std::string>& symbols() const { return symbols_; }
  Letter index_of(std::string_view symbol) const;
  bool contains(std::string_view symbol) const;

  /// Parses a display string. Single-character alphabets are read char by
  /// char; otherwise symbols must be separated by whitespace.
  Word parse(std::string_view text) const;
  std::string format(WordView w) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

/// |w| >= 2 and the first letter equals the last.
bool is_complete(WordView w);

AbelianVector abelianize(WordView w, std::size_t alphabet_size);

/// Number of (possibly overlapping) occurrences of u in w. Empty u is rejected.
std::size_t occurrences(WordView u, WordView w);

/// Distinct length-n factors of w; n = 0 is rejected.
std::set<Word> factors(WordView w, std::size_t n);

/// Inserts every length-n factor of w into out.
void collect_factors(WordView w, std::size_t n, std::set<Word>& out);

inline Word concat(WordView a, WordView b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace subrigid
