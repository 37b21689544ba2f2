#include "subrigid/language.hpp"

#include <algorithm>

#include "subrigid/error.hpp"

namespace subrigid {

std::optional<unsigned> growth_exponent(const Morphism& sigma) {
  if (sigma.min_image_length() >= 2) return 1;
  if (sigma.norm() <= 1) return std::nullopt;
  // Primitive substitutions with some image of length >= 2 reach
  // min length >= 2 within (d-1)^2 + 2 steps; cap generously.
  std::size_t cap = sigma.source().size() * sigma.source().size() + 2;
  Morphism cur = sigma;
  for (unsigned k = 1; k <= cap; ++k) {
    if (cur.min_image_length() >= 2) return k;
    cur = compose(sigma, cur);
  }
  return std::nullopt;
}

LanguageTable LanguageTable::of_substitution(const Morphism& sigma, std::size_t n_max) {
  if (!sigma.is_substitution()) throw InvalidInput("language: morphism is not a substitution");
  if (!classify(sigma).primitive) throw RejectedInput("substitution is not primitive");
  auto k = growth_exponent(sigma);
  if (!k) throw RejectedInput("substitution never grows; its subshift is finite");

  LanguageTable t;
  t.alphabet_ = sigma.source();
  t.generator_ = sigma;
  t.expander_ = power(sigma, *k);
  t.levels_.push_back({Word{}});

  std::set<Word> letters;
  for (std::size_t a = 0; a < t.alphabet_.size(); ++a) letters.insert(Word{static_cast<Letter>(a)});
  t.levels_.push_back(std::move(letters));

  // Length 2 by closure: start from factors inside single images, then add
  // the factors of images of known 2-words until nothing changes.
  std::set<Word> two;
  for (const auto& img : t.expander_.images()) collect_factors(img, 2, two);
  std::vector<Word> frontier(two.begin(), two.end());
  while (!frontier.empty()) {
    ++t.closure_iterations_;
    std::vector<Word> next;
    for (const auto& v : frontier) {
      for (auto& f : factors(t.expander_.apply(v), 2))
        if (two.insert(f).second) next.push_back(f);
    }
    frontier = std::move(next);
  }
  t.levels_.push_back(std::move(two));
  t.extend_to(n_max);
  return t;
}

LanguageTable LanguageTable::of_image(const Morphism& phi, std::shared_ptr<LanguageTable> base,
                                      std::size_t n_max) {
  if (!base) throw InvalidInput("language: missing base language");
  if (!(phi.source() == base->alphabet())) throw InvalidInput("language: image alphabet mismatch");
  LanguageTable t;
  t.alphabet_ = phi.target();
  t.expander_ = phi;
  t.base_ = std::move(base);
  t.levels_.push_back({Word{}});
  t.extend_to(n_max);
  return t;
}

std::size_t LanguageTable::ancestor_length(std::size_t n) const {
  if (n <= 1) return 1;
  return (n - 2) / expander_.min_image_length() + 2;
}

std::set<Word> LanguageTable::compute_level(std::size_t n) {
  std::size_t m = ancestor_length(n);
  const std::set<Word>& ancestors = base_ ? base_->words(m) : levels_.at(m);
  std::set<Word> out;
  for (const auto& v : ancestors) collect_factors(expander_.apply(v), n, out);
  return out;
}

void LanguageTable::extend_to(std::size_t n) {
  while (levels_.size() <= n) {
    std::size_t next = levels_.size();
    levels_.push_back(compute_level(next));
  }
}

const std::set<Word>& LanguageTable::words(std::size_t n) {
  extend_to(n);
  return levels_[n];
}

bool LanguageTable::contains(WordView w) {
  for (Letter a : w)
    if (a >= alphabet_.size()) return false;
  const auto& level = words(w.size());
  return level.count(Word(w.begin(), w.end())) > 0;
}

ComplexityProfile complexity_profile(LanguageTable& language, std::size_t n_max) {
  ComplexityProfile prof;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto& ws = language.words(n);
    prof.p.push_back(ws.size());
    prof.q.push_back(static_cast<std::size_t>(
        std::count_if(ws.begin(), ws.end(), [](const Word& w) { return is_complete(w); })));
  }
  return prof;
}

ReturnWordSet return_words(LanguageTable& language, WordView u, ReturnSide side, std::size_t max_window) {
  if (u.empty()) throw InvalidInput("return words: u must be nonempty");
  if (!language.contains(u)) throw InvalidInput("return words: u is not in the language");

  ReturnWordSet out;
  const std::size_t k = u.size();
  const auto& gen = language.generator();
  std::size_t window = 2 * std::max<std::size_t>(gen ? gen->norm() : 1, k);
  if (gen && k == 1) {
    const Letter b = u[0];
    bool everywhere = std::all_of(gen->images().begin(), gen->images().end(), [&](const Word& img) {
      return std::find(img.begin(), img.end(), b) != img.end();
    });
    if (everywhere) out.boundary_bound = 2 * gen->norm() - 1;
  }

  auto occurs_only_at_ends = [&](const Word& v) {
    for (std::size_t i = 1; i + k < v.size(); ++i)
      if (std::equal(u.begin(), u.end(), v.begin() + static_cast<std::ptrdiff_t>(i))) return false;
    return true;
  };

  while (true) {
    out.words.clear();
    for (std::size_t len = k + 1; len <= k + window; ++len) {
      for (const auto& v : language.words(len)) {
        if (!std::equal(u.begin(), u.end(), v.begin())) continue;
        if (!std::equal(u.begin(), u.end(), v.end() - static_cast<std::ptrdiff_t>(k))) continue;
        if (!occurs_only_at_ends(v)) continue;
        if (side == ReturnSide::Right)
          out.words.emplace(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
        else
          out.words.emplace(v.begin(), v.end() - static_cast<std::ptrdiff_t>(k));
      }
    }
    // Open prefixes: words of length k + window starting with u and with no
    // later occurrence of u. None means every return has been seen.
    bool open = false;
    for (const auto& v : language.words(k + window)) {
      if (!std::equal(u.begin(), u.end(), v.begin())) continue;
      bool again = false;
      for (std::size_t i = 1; i + k <= v.size() && !again; ++i)
        again = std::equal(u.begin(), u.end(), v.begin() + static_cast<std::ptrdiff_t>(i));
      if (!again) {
        open = true;
        break;
      }
    }
    out.window = window;
    if (!open) {
      out.certified = true;
      return out;
    }
    if (window >= max_window) return out;
    window = std::min(2 * window, max_window);
  }
}

const char* to_string(PeriodicityVerdict v) {
  switch (v) {
    case PeriodicityVerdict::AperiodicEvidence: return "aperiodic_evidence";
    case PeriodicityVerdict::Periodic: return "periodic";
    case PeriodicityVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PeriodicityVerdict aperiodicity_check(const Morphism& sigma, std::size_t n_max) {
  if (!sigma.is_substitution()) throw InvalidInput("aperiodicity check needs a substitution");
  if (!classify(sigma).primitive) throw RejectedInput("substitution is not primitive");
  if (!growth_exponent(sigma)) return PeriodicityVerdict::Periodic;
  if (n_max < 2) return PeriodicityVerdict::Inconclusive;
  auto lang = LanguageTable::of_substitution(sigma, n_max);
  for (std::size_t n = 1; n < n_max; ++n)
    if (lang.words(n + 1).size() == lang.words(n).size()) return PeriodicityVerdict::Periodic;
  return PeriodicityVerdict::AperiodicEvidence;
}

DirectiveSequence::DirectiveSequence(std::vector<Morphism> prefix, std::vector<Morphism> tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (tail_.empty()) throw InvalidInput("directive sequence needs a nonempty periodic tail");
  // sigma_n : A_{n+1} -> A_n, so sigma_n.source must equal sigma_{n+1}.target.
  auto check = [](const Morphism& cur, const Morphism& next) {
    if (!(cur.source() == next.target()))
      throw InvalidInput("directive sequence: consecutive alphabets are incompatible");
  };
  for (std::size_t i = 0; i + 1 < prefix_.size(); ++i) check(prefix_[i], prefix_[i + 1]);
  if (!prefix_.empty()) check(prefix_.back(), tail_.front());
  for (std::size_t i = 0; i < tail_.size(); ++i) check(tail_[i], tail_[(i + 1) % tail_.size()]);
}

const Morphism& DirectiveSequence::at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return tail_[(n - prefix_.size()) % tail_.size()];
}

Morphism DirectiveSequence::connecting(std::size_t n, std::size_t m) const {
  if (m <= n) throw InvalidInput("connecting morphism needs n < m");
  Morphism out = at(m - 1);
  for (std::size_t i = m - 1; i-- > n;) out = compose(at(i), out);
  return out;
}

Morphism DirectiveSequence::level_substitution(std::size_t n) const {
  if (n < prefix_.size()) throw InvalidInput("level substitution only exists past the prefix");
  return connecting(n, n + tail_.size());
}

bool DirectiveSequence::is_primitive() const {
  return classify(level_substitution(prefix_.size())).primitive;
}

LanguageTable sadic_language(const DirectiveSequence& seq, std::size_t level, std::size_t n_max) {
  if (!seq.is_primitive()) throw RejectedInput("directive sequence is not primitive");
  std::size_t p = seq.prefix_length();
  if (level >= p) return LanguageTable::of_substitution(seq.level_substitution(level), n_max);
  auto base = std::make_shared<LanguageTable>(LanguageTable::of_substitution(seq.level_substitution(p), n_max));
  return LanguageTable::of_image(seq.connecting(level, p), base, n_max);
}

}  // namespace subrigid
