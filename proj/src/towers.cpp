#include "subrigid/towers.hpp"

#include <algorithm>
#include <functional>

#include "subrigid/error.hpp"

namespace subrigid {

HeightVector heights(const DirectiveSequence& seq, std::size_t n) {
  HeightVector out;
  out.h.assign(seq.alphabet(0).size(), BigInt(1));
  for (std::size_t k = 0; k < n; ++k) {
    const Morphism& s = seq.at(k);
    std::vector<BigInt> next(s.source().size(), BigInt(0));
    for (std::size_t a = 0; a < next.size(); ++a)
      for (Letter b : s.image(static_cast<Letter>(a))) next[a] += out.h[b];
    out.h = std::move(next);
  }
  out.level = n;
  return out;
}

BigInt equiv_key(const HeightVector& heights, WordView w) {
  if (!is_complete(w)) throw InvalidInput("equivalence key needs a complete word");
  BigInt key = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] >= heights.h.size()) throw InvalidInput("letter outside the level alphabet");
    key += heights.h[w[i]];
  }
  return key;
}

SadicMeasures::SadicMeasures(DirectiveSequence seq, std::optional<Mode> mode) : seq_(std::move(seq)) {
  if (!seq_.is_primitive()) throw RejectedInput("directive sequence is not primitive");
  bool constant = seq_.level_substitution(seq_.prefix_length()).constant_length().has_value();
  mode_ = mode.value_or(constant ? Mode::Exact : Mode::Float);
  if (mode_ == Mode::Exact && !constant)
    throw InvalidInput("exact mode needs a constant-length tail composition");
}

std::shared_ptr<MeasureTable> SadicMeasures::level(std::size_t n) {
  const std::size_t p = seq_.prefix_length();
  if (n >= p) n = p + (n - p) % seq_.period();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
  }
  std::shared_ptr<MeasureTable> t;
  if (n >= p)
    t = MeasureTable::of_substitution(seq_.level_substitution(n), mode_);
  else
    t = MeasureTable::pushforward(seq_.connecting(n, p), level(p));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(n, t).first->second;
}

namespace {

Scalar as_scalar(const BigInt& x, Mode mode) {
  return mode == Mode::Exact ? Scalar(Rational(x)) : Scalar::approx(x.get_d());
}

}  // namespace

Scalar subtower_mass(SadicMeasures& measures, std::size_t n, WordView w) {
  auto table = measures.level(n);
  const Mode mode = table->mode();
  if (w.empty()) return Scalar::one(mode);
  auto mv = table->measure(w);
  if (!mv.in_language) return Scalar::zero(mode);
  HeightVector h = heights(measures.sequence(), n);
  Scalar denom = Scalar::zero(mode);
  auto freq = table->letter_frequencies();
  for (std::size_t a = 0; a < freq.size(); ++a) denom += as_scalar(h.h[a], mode) * freq[a];
  return as_scalar(h.h[w[0]], mode) * mv.value / denom;
}

ClassMass class_mass(SadicMeasures& measures, std::size_t n, const BigInt& key, std::size_t length_cap) {
  auto table = measures.level(n);
  HeightVector h = heights(measures.sequence(), n);
  BigInt min_h = *std::min_element(h.h.begin(), h.h.end());

  ClassMass out;
  out.level = n;
  out.key = key;
  out.mass = Scalar::zero(table->mode());
  BigInt longest = key / min_h + 1;
  out.complete_enumeration = longest <= BigInt(static_cast<unsigned long>(length_cap));
  std::size_t cap = out.complete_enumeration ? static_cast<std::size_t>(longest.get_ui()) : length_cap;

  // Depth-first in lexicographic order; `full` sums the heights of every
  // letter of v, a lower bound for the key of any proper extension.
  Word v;
  std::function<void(const BigInt&)> walk = [&](const BigInt& full) {
    for (std::size_t c = 0; c < h.h.size(); ++c) {
      v.push_back(static_cast<Letter>(c));
      if (table->contains(v)) {
        if (v.size() >= 2 && v.back() == v.front() && full == key) out.members.push_back(v);
        BigInt next = full + h.h[c];
        if (next <= key && v.size() < cap) walk(next);
      }
      v.pop_back();
    }
  };
  if (cap >= 1) walk(BigInt(0));

  for (const auto& w : out.members) out.mass += subtower_mass(measures, n, w);
  return out;
}

ClassMass class_mass(SadicMeasures& measures, std::size_t n, WordView representative, std::size_t length_cap) {
  return class_mass(measures, n, equiv_key(heights(measures.sequence(), n), representative), length_cap);
}

}  // namespace subrigid
