#include "subrigid/words.hpp"

#include <algorithm>
#include <cctype>

#include "subrigid/error.hpp"

namespace subrigid {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidInput("alphabet must contain at least one symbol");
  if (symbols_.size() > 0xFFFF) throw InvalidInput("alphabet too large");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw InvalidInput("alphabet symbols must be nonempty");
    if (!seen.insert(s).second) throw InvalidInput("duplicate alphabet symbol '" + s + "'");
    if (s.size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::numeric(std::size_t size) {
  std::vector<std::string> symbols;
  symbols.reserve(size);
  for (std::size_t i = 0; i < size; ++i) symbols.push_back(std::to_string(i));
  return Alphabet(std::move(symbols));
}

const std::string& Alphabet::symbol(Letter a) const {
  if (a >= symbols_.size()) throw InvalidInput("letter index out of alphabet");
  return symbols_[a];
}

Letter Alphabet::index_of(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) throw InvalidInput("unknown symbol '" + std::string(symbol) + "'");
  return static_cast<Letter>(it - symbols_.begin());
}

bool Alphabet::contains(std::string_view symbol) const {
  return std::find(symbols_.begin(), symbols_.end(), symbol) != symbols_.end();
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (single_char_) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      w.push_back(index_of(std::string_view(&c, 1)));
    }
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) w.push_back(index_of(text.substr(i, j - i)));
    i = j;
  }
  return w;
}

std::string Alphabet::format(WordView w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out.push_back(' ');
    out += symbol(w[i]);
  }
  return out;
}

bool is_complete(WordView w) { return w.size() >= 2 && w.front() == w.back(); }

AbelianVector abelianize(WordView w, std::size_t alphabet_size) {
  AbelianVector counts(alphabet_size, 0);
  for (Letter a : w) {
    if (a >= alphabet_size) throw InvalidInput("letter outside alphabet");
    ++counts[a];
  }
  return counts;
}

std::size_t occurrences(WordView u, WordView w) {
  if (u.empty()) throw InvalidInput("occurrences: pattern must be nonempty");
  if (u.size() > w.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + u.size() <= w.size(); ++i) {
    if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

void collect_factors(WordView w, std::size_t n, std::set<Word>& out) {
  if (n == 0) throw InvalidInput("factors: length must be positive");
  if (n > w.size()) return;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + n);
}

std::set<Word> factors(WordView w, std::size_t n) {
  std::set<Word> out;
  collect_factors(w, n, out);
  return out;
}

}  // namespace subrigid
