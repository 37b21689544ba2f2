#include "subrigid/measures.hpp"

#include <algorithm>
#include <cmath>

#include "subrigid/error.hpp"
#include "subrigid/linalg.hpp"

namespace subrigid {

std::vector<Interpretation> interpretations(const Morphism& phi, WordView w,
                                            const std::function<bool(WordView)>& in_language) {
  std::vector<Interpretation> out;
  if (w.empty()) return out;
  const std::size_t letters = phi.source().size();
  Word anc;
  std::size_t front = 0;

  // pos letters of w are already covered by phi(anc).
  std::function<void(std::size_t)> extend = [&](std::size_t pos) {
    const std::size_t rem = w.size() - pos;
    for (std::size_t c = 0; c < letters; ++c) {
      const Word& img = phi.image(static_cast<Letter>(c));
      const std::size_t take = std::min(rem, img.size());
      if (!std::equal(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(take),
                      w.begin() + static_cast<std::ptrdiff_t>(pos)))
        continue;
      anc.push_back(static_cast<Letter>(c));
      if (in_language(anc)) {
        if (img.size() >= rem)
          out.push_back({anc, front, img.size() - rem});
        else
          extend(pos + img.size());
      }
      anc.pop_back();
    }
  };

  for (std::size_t c = 0; c < letters; ++c) {
    const Word& img = phi.image(static_cast<Letter>(c));
    for (std::size_t i = 0; i < img.size(); ++i) {
      const std::size_t avail = img.size() - i;
      const std::size_t take = std::min(avail, w.size());
      if (!std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(take),
                      img.begin() + static_cast<std::ptrdiff_t>(i)))
        continue;
      anc.assign(1, static_cast<Letter>(c));
      if (!in_language(anc)) continue;
      front = i;
      if (avail >= w.size())
        out.push_back({anc, i, avail - w.size()});
      else
        extend(avail);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_primitive(const Morphism& sigma) {
  if (!sigma.is_substitution()) throw InvalidInput("measures need a substitution");
  if (!classify(sigma).primitive) throw RejectedInput("substitution is not primitive");
}

std::vector<double> power_iteration(const IntMatrix& m, double* eigenvalue) {
  const std::size_t d = m.rows;
  std::vector<double> v(d, 1.0 / static_cast<double>(d)), next(d);
  double lambda = 0.0;
  for (int iter = 0; iter < 1000000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) next[r] += static_cast<double>(m.at(r, c)) * v[c];
    double s = 0.0;
    for (double x : next) s += x;
    double diff = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      next[r] /= s;
      diff = std::max(diff, std::fabs(next[r] - v[r]));
    }
    v.swap(next);
    lambda = s;
    if (diff < 1e-13) break;
  }
  if (eigenvalue) *eigenvalue = lambda;
  return v;
}

}  // namespace

std::vector<Scalar> letter_frequencies(const Morphism& sigma, Mode mode) {
  require_primitive(sigma);
  const IntMatrix m = sigma.incidence();
  const std::size_t d = m.rows;
  std::vector<Scalar> out;
  if (mode == Mode::Exact) {
    auto len = sigma.constant_length();
    if (!len) throw InvalidInput("exact letter frequencies need a constant-length substitution");
    Matrix<Rational> a(d, std::vector<Rational>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        a[r][c] = Rational(static_cast<unsigned long>(m.at(r, c))) - (r == c ? Rational(*len) : Rational(0));
    for (auto& q : normalized_kernel_vector(std::move(a))) out.emplace_back(q);
    return out;
  }
  for (double x : power_iteration(m, nullptr)) out.push_back(Scalar::approx(x));
  return out;
}

std::shared_ptr<MeasureTable> MeasureTable::of_substitution(const Morphism& sigma, std::optional<Mode> mode) {
  require_primitive(sigma);
  auto k = growth_exponent(sigma);
  if (!k) throw RejectedInput("substitution never grows; its subshift is finite");
  auto len = sigma.constant_length();
  Mode chosen = mode.value_or(len ? Mode::Exact : Mode::Float);
  if (chosen == Mode::Exact && !len)
    throw InvalidInput("exact mode needs a constant-length substitution");

  std::shared_ptr<MeasureTable> t(new MeasureTable());
  t->mode_ = chosen;
  t->alphabet_ = sigma.source();
  t->substitution_ = sigma;
  t->working_exponent_ = *k;
  t->working_ = power(sigma, *k);
  t->language_ = std::make_shared<LanguageTable>(LanguageTable::of_substitution(sigma, 4));
  if (chosen == Mode::Exact) {
    BigInt lam;
    mpz_ui_pow_ui(lam.get_mpz_t(), *len, *k);
    t->lambda_ = Scalar(Rational(lam));
  } else {
    double lam = 0.0;
    power_iteration(t->working_.incidence(), &lam);
    t->lambda_ = Scalar::approx(lam);
  }
  t->build_base();
  return t;
}

void MeasureTable::build_base() {
  const auto freq = subrigid::letter_frequencies(*substitution_, mode_);
  for (std::size_t a = 0; a < freq.size(); ++a) memo_[Word{static_cast<Letter>(a)}] = freq[a];

  // Two-word system: lambda x_ab = sum_c N1(ab|c) f_c + sum_cd N2(ab|cd) x_cd.
  // N2 has one unit entry per column, so lambda I - N2 is invertible (lambda >= 2).
  const auto& l2 = language_->words(2);
  std::vector<Word> idx(l2.begin(), l2.end());
  const std::size_t n = idx.size();
  std::map<Word, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[idx[i]] = i;

  std::vector<Scalar> rhs(n, Scalar::zero(mode_));
  std::vector<std::vector<int>> n2(n, std::vector<int>(n, 0));
  for (std::size_t c = 0; c < working_.source().size(); ++c) {
    const Word& img = working_.image(static_cast<Letter>(c));
    for (std::size_t p = 0; p + 1 < img.size(); ++p) {
      auto it = pos.find(Word{img[p], img[p + 1]});
      if (it == pos.end()) throw Error("two-word factor of an image missing from the language");
      rhs[it->second] += freq[c];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Word straddle{working_.image(idx[j][0]).back(), working_.image(idx[j][1]).front()};
    auto it = pos.find(straddle);
    if (it == pos.end()) throw Error("straddling two-word factor missing from the language");
    n2[it->second][j] += 1;
  }

  if (mode_ == Mode::Exact) {
    const Rational lam = lambda_.rational();
    Matrix<Rational> a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? lam : Rational(0)) - n2[i][j];
      b[i] = rhs[i].rational();
    }
    auto x = solve_exact(std::move(a), std::move(b));
    for (std::size_t i = 0; i < n; ++i) memo_[idx[i]] = Scalar(x[i]);
  } else {
    const double lam = lambda_.to_double();
    Matrix<double> a(n, std::vector<double>(n));
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? lam : 0.0) - n2[i][j];
      b[i] = rhs[i].to_double();
    }
    auto sol = solve_float(std::move(a), std::move(b));
    if (sol.pivot_ratio < 1e-10) warning_ = "two-word system is ill-conditioned";
    for (std::size_t i = 0; i < n; ++i) memo_[idx[i]] = Scalar::approx(sol.x[i]);
  }
}

std::shared_ptr<MeasureTable> MeasureTable::pushforward(const Morphism& phi, std::shared_ptr<MeasureTable> base) {
  if (!base || !base->substitution_) throw InvalidInput("pushforward needs a substitution measure");
  if (!(phi.source() == base->alphabet_)) throw InvalidInput("pushforward: alphabet mismatch");
  std::shared_ptr<MeasureTable> t(new MeasureTable());
  t->mode_ = base->mode_;
  t->alphabet_ = phi.target();
  t->working_ = phi;
  t->base_ = base;
  auto ancestors = std::make_shared<LanguageTable>(LanguageTable::of_substitution(*base->substitution_, 4));
  t->language_ = std::make_shared<LanguageTable>(LanguageTable::of_image(phi, ancestors, 4));
  t->lambda_ = Scalar::one(t->mode_);
  Scalar z = Scalar::zero(t->mode_);
  for (std::size_t a = 0; a < phi.source().size(); ++a) {
    Word letter{static_cast<Letter>(a)};
    Scalar len = t->mode_ == Mode::Exact ? Scalar(Rational(phi.image(letter[0]).size()))
                                         : Scalar::approx(static_cast<double>(phi.image(letter[0]).size()));
    z += len * base->measure(letter).value;
  }
  t->normalizer_ = z;
  return t;
}

Scalar MeasureTable::ancestor_sum(const Word& w) {
  Scalar sum = Scalar::zero(mode_);
  if (base_) {
    auto in_base = [this](WordView v) { return base_->contains(v); };
    for (const auto& s : interpretations(working_, w, in_base)) sum += base_->measure(s.ancestor).value;
    return sum / normalizer_;
  }
  auto in_lang = [this](WordView v) { return language_->contains(v); };
  for (const auto& s : interpretations(working_, w, in_lang)) sum += measure_locked(s.ancestor);
  return sum / lambda_;
}

Scalar MeasureTable::measure_locked(const Word& w) {
  if (w.empty()) return Scalar::one(mode_);
  if (!language_->contains(w)) return Scalar::zero(mode_);
  auto it = memo_.find(w);
  if (it != memo_.end()) return it->second;
  Scalar v = ancestor_sum(w);
  memo_.emplace(w, v);
  return v;
}

MeasureValue MeasureTable::measure(WordView w) {
  std::lock_guard<std::mutex> lock(mu_);
  Word key(w.begin(), w.end());
  bool in = key.empty() || language_->contains(key);
  return {in ? measure_locked(key) : Scalar::zero(mode_), in};
}

Scalar MeasureTable::recompute(WordView w) {
  std::lock_guard<std::mutex> lock(mu_);
  Word key(w.begin(), w.end());
  if (!language_->contains(key)) return Scalar::zero(mode_);
  return ancestor_sum(key);
}

std::vector<Scalar> MeasureTable::letter_frequencies() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Scalar> out;
  for (std::size_t a = 0; a < alphabet_.size(); ++a) out.push_back(measure_locked(Word{static_cast<Letter>(a)}));
  return out;
}

std::map<Word, Scalar> MeasureTable::two_word_measures() {
  std::lock_guard<std::mutex> lock(mu_);
  std::map<Word, Scalar> out;
  for (const auto& w : language_->words(2)) out.emplace(w, measure_locked(w));
  return out;
}

std::vector<Word> MeasureTable::words(std::size_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto& s = language_->words(n);
  return {s.begin(), s.end()};
}

bool MeasureTable::contains(WordView w) {
  std::lock_guard<std::mutex> lock(mu_);
  return language_->contains(w);
}

double empirical_frequency(const Morphism& sigma, WordView w, unsigned depth, Letter start) {
  if (w.empty()) throw InvalidInput("empirical frequency needs a nonempty word");
  Word cur{start};
  for (unsigned i = 0; i < depth; ++i) cur = sigma.apply(cur);
  if (cur.size() < w.size()) throw InvalidInput("generated prefix is shorter than the word");
  return static_cast<double>(occurrences(w, cur)) / static_cast<double>(cur.size() - w.size() + 1);
}

std::map<Word, double> empirical_frequencies(const Morphism& sigma, std::size_t n, unsigned depth, Letter start) {
  if (n == 0) throw InvalidInput("empirical frequency needs a nonempty word");
  Word cur{start};
  for (unsigned i = 0; i < depth; ++i) cur = sigma.apply(cur);
  if (cur.size() < n) throw InvalidInput("generated prefix is shorter than the word");
  // Count windows by a base-d code, then decode.
  const std::size_t d = sigma.source().size();
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= d;
  std::vector<std::uint64_t> counts(cells, 0);
  std::size_t code = 0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    code = (code * d + cur[i]) % cells;
    if (i + 1 >= n) ++counts[code];
  }
  const double total = static_cast<double>(cur.size() - n + 1);
  std::map<Word, double> out;
  for (std::size_t c = 0; c < cells; ++c) {
    if (!counts[c]) continue;
    Word w(n);
    for (std::size_t i = n, x = c; i-- > 0; x /= d) w[i] = static_cast<Letter>(x % d);
    out.emplace(std::move(w), static_cast<double>(counts[c]) / total);
  }
  return out;
}

unsigned depth_for_length(const Morphism& sigma, std::size_t min_length, Letter start) {
  if (sigma.norm() <= 1) throw InvalidInput("substitution does not grow");
  const std::size_t d = sigma.source().size();
  std::vector<std::size_t> len(d, 1);
  unsigned depth = 0;
  while (len[start] < min_length) {
    std::vector<std::size_t> next(d, 0);
    for (std::size_t a = 0; a < d; ++a)
      for (Letter b : sigma.image(static_cast<Letter>(a))) next[a] = std::min(next[a] + len[b], min_length);
    if (next == len) throw InvalidInput("substitution does not grow from this letter");
    len = std::move(next);
    ++depth;
  }
  return depth;
}

}  // namespace subrigid
