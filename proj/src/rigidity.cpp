#include "subrigid/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "subrigid/error.hpp"

namespace subrigid {

Scalar FirstLastMassVector::total() const {
  Scalar s = Scalar::zero(entries.empty() ? Mode::Exact : entries.front().mode());
  for (const auto& x : entries) s += x;
  return s;
}

Scalar FirstLastMassVector::complete_mass() const {
  Scalar s = Scalar::zero(entries.empty() ? Mode::Exact : entries.front().mode());
  for (std::size_t c = 0; c < d; ++c) s += entries[c * d + c];
  return s;
}

Scalar FirstLastMassVector::matched_mass(const std::vector<Letter>& f, const std::vector<Letter>& g) const {
  Scalar s = Scalar::zero(entries.empty() ? Mode::Exact : entries.front().mode());
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      if (f[x] == g[y]) s += entries[x * d + y];
  return s;
}

FirstLastEngine::FirstLastEngine(std::shared_ptr<MeasureTable> table) : table_(std::move(table)) {
  if (!table_ || !table_->substitution()) throw InvalidInput("first/last masses need a substitution measure");
  sigma_ = *table_->substitution();
  auto len = sigma_.constant_length();
  if (!len) throw InvalidInput("first/last masses need a constant-length substitution");
  ell_ = *len;
  d_ = sigma_.source().size();
}

std::vector<Letter> FirstLastEngine::position_map(std::size_t k) const {
  std::vector<Letter> p(d_);
  for (std::size_t a = 0; a < d_; ++a) p[a] = sigma_.image(static_cast<Letter>(a))[k - 1];
  return p;
}

FirstLastMassVector FirstLastEngine::enumerate(std::size_t m) {
  if (m < 1) throw InvalidInput("first/last masses need m >= 1");
  FirstLastMassVector out{m, d_, std::vector<Scalar>(d_ * d_, Scalar::zero(table_->mode()))};
  for (const auto& w : table_->words(m)) out.entries[w.front() * d_ + w.back()] += table_->measure(w).value;
  return out;
}

FirstLastMassVector FirstLastEngine::get(std::size_t m) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
  }
  // Computed outside the lock; concurrent fills produce the same value.
  FirstLastMassVector v = compute(m);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(m, std::move(v)).first->second;
}

FirstLastMassVector FirstLastEngine::compute(std::size_t m) {
  if (m < 2) throw InvalidInput("first/last masses need m >= 2");
  if (m <= ell_) return enumerate(m);
  // m = n*ell + i with n >= 1 and i in [1, ell].
  const std::size_t n = (m - 1) / ell_;
  const std::size_t i = m - n * ell_;
  const Mode mode = table_->mode();
  FirstLastMassVector out{m, d_, std::vector<Scalar>(d_ * d_, Scalar::zero(mode))};

  auto accumulate = [&](const FirstLastMassVector& src, std::size_t kf, std::size_t kg) {
    auto f = position_map(kf);
    auto g = position_map(kg);
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = 0; b < d_; ++b) {
        const Scalar& x = src.entries[a * d_ + b];
        if (!x.is_zero()) out.entries[f[a] * d_ + g[b]] += x;
      }
  };
  // w starts at position k of sigma(v_1). Ancestors of length n+1 when
  // k <= ell-i+1, else of length n+2 with w ending at position k' = k+i-1-ell.
  const FirstLastMassVector shorter = get(n + 1);
  for (std::size_t k = 1; k + i <= ell_ + 1; ++k) accumulate(shorter, k, k + i - 1);
  if (i > 1) {
    const FirstLastMassVector longer = get(n + 2);
    for (std::size_t k = 1; k <= i - 1; ++k) accumulate(longer, ell_ - i + k + 1, k);
  }
  const Scalar ell = mode == Mode::Exact ? Scalar(Rational(ell_)) : Scalar::approx(static_cast<double>(ell_));
  for (auto& x : out.entries) x /= ell;
  return out;
}

std::optional<ClosureBound> closure_upper_bound(FirstLastEngine& engine, std::size_t cap) {
  using Map = std::vector<Letter>;
  using Pair = std::pair<Map, Map>;
  const std::size_t ell = engine.length();
  const std::size_t d = engine.alphabet_size();

  std::vector<Pair> gens;
  for (std::size_t i = 1; i <= ell; ++i) {
    for (std::size_t k = 1; k + i <= ell + 1; ++k) gens.emplace_back(engine.position_map(k), engine.position_map(k + i - 1));
    for (std::size_t k = 1; k + 1 <= i; ++k) gens.emplace_back(engine.position_map(ell - i + k + 1), engine.position_map(k));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  Map id(d);
  for (std::size_t a = 0; a < d; ++a) id[a] = static_cast<Letter>(a);
  std::set<Pair> seen{{id, id}};
  std::deque<Pair> queue{{id, id}};
  while (!queue.empty()) {
    Pair p = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Pair q{Map(d), Map(d)};
      for (std::size_t x = 0; x < d; ++x) {
        q.first[x] = p.first[g.first[x]];
        q.second[x] = p.second[g.second[x]];
      }
      if (seen.insert(q).second) {
        if (seen.size() > cap) return std::nullopt;
        queue.push_back(std::move(q));
      }
    }
  }

  std::optional<ClosureBound> best;
  for (std::size_t b = 2; b <= std::max<std::size_t>(ell, 2); ++b) {
    auto base = engine.get(b);
    for (const auto& p : seen) {
      Scalar v = base.matched_mass(p.first, p.second);
      if (!best || v > best->upper) best = ClosureBound{v, seen.size(), b};
    }
  }
  return best;
}

std::size_t default_max_m(std::size_t ell) { return 4 * ell + 8; }

std::vector<std::pair<std::size_t, Scalar>> complete_mass_profile(const Morphism& sigma, std::size_t max_m) {
  std::vector<std::pair<std::size_t, Scalar>> out;
  auto table = MeasureTable::of_substitution(sigma);
  if (sigma.constant_length()) {
    FirstLastEngine engine(table);
    for (std::size_t m = 2; m <= max_m; ++m) out.emplace_back(m, engine.get(m).complete_mass());
    return out;
  }
  for (std::size_t m = 2; m <= max_m; ++m) {
    Scalar s = Scalar::zero(table->mode());
    for (const auto& w : table->words(m))
      if (is_complete(w)) s += table->measure(w).value;
    out.emplace_back(m, s);
  }
  return out;
}

namespace {

std::string height_sequence(std::size_t coefficient, std::size_t ell) {
  std::string base = std::to_string(ell) + "^n";
  return coefficient == 1 ? base : std::to_string(coefficient) + "*" + base;
}

void require_aperiodic(const Morphism& sigma) {
  if (aperiodicity_check(sigma) == PeriodicityVerdict::Periodic)
    throw RejectedInput("substitution generates a periodic subshift");
}

Scalar min_scalar(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

}  // namespace

std::optional<std::pair<FiniteAbelianGroup, Word>> as_thue_morse_type(const Morphism& sigma) {
  if (!sigma.is_substitution()) return std::nullopt;
  FiniteAbelianGroup group({sigma.source().size()});
  Word u = sigma.image(0);
  if (tm_substitution(group, u).images() != sigma.images()) return std::nullopt;
  return std::make_pair(group, u);
}

RateReport delta_constant_length(const Morphism& sigma, std::size_t max_m) {
  auto len = sigma.constant_length();
  if (!len) throw InvalidInput("this rate computation needs a constant-length substitution");
  if (!classify(sigma).primitive) throw RejectedInput("substitution is not primitive");
  require_aperiodic(sigma);
  if (max_m < 2) throw InvalidInput("profile cap must be at least 2");

  FirstLastEngine engine(MeasureTable::of_substitution(sigma));
  RateReport r;
  std::size_t witness = 2;
  for (std::size_t m = 2; m <= max_m; ++m) {
    Scalar a = engine.get(m).complete_mass();
    if (r.profile.empty() || a > r.lower) {
      r.lower = a;
      witness = m;
    }
    r.profile.emplace_back(m, a);
  }
  r.witness_length = witness;
  r.witness_key = BigInt(static_cast<unsigned long>(witness - 1));
  r.partial_rigidity_sequence = height_sequence(witness - 1, *len);

  if (auto closure = closure_upper_bound(engine)) {
    r.upper = closure->upper;
    r.upper_method = "transfer_closure";
  }
  if (auto tm = as_thue_morse_type(sigma)) {
    // max over i in [2, ell] and g of C_i(+g)
    const auto& group = tm->first;
    std::optional<Scalar> bound;
    for (std::size_t i = 2; i <= *len; ++i) {
      auto dm = engine.get(i);
      for (std::size_t g = 0; g < group.size(); ++g) {
        Scalar c = Scalar::zero(dm.entries.front().mode());
        for (std::size_t a = 0; a < group.size(); ++a)
          c += dm.at(static_cast<Letter>(a), group.add(static_cast<Letter>(a), static_cast<Letter>(g)));
        if (!bound || c > *bound) bound = c;
      }
    }
    if (bound && (!r.upper || *bound < *r.upper)) {
      r.upper = bound;
      r.upper_method = "thue_morse_type";
    } else if (bound && r.upper) {
      r.upper = min_scalar(*r.upper, *bound);
    }
  }
  r.exact = r.upper && *r.upper == r.lower;

  r.certificates.push_back({"complete_mass_witness", r.lower, "m*=" + std::to_string(witness), r.partial_rigidity_sequence});
  for (auto& c : certificates(DirectiveSequence::constant(sigma))) r.certificates.push_back(std::move(c));
  return r;
}

TmAnalysis tm_analysis(const FiniteAbelianGroup& group, WordView u, std::size_t max_m) {
  Morphism sigma = tm_substitution(group, u);
  if (!classify(sigma).primitive) throw RejectedInput("Thue-Morse type substitution is not primitive");
  if (aperiodicity_check(sigma) == PeriodicityVerdict::Periodic)
    throw RejectedInput("Thue-Morse type substitution is periodic (as for u = 010 over Z/2)");
  const std::size_t ell = u.size();
  if (max_m < 2) throw InvalidInput("profile cap must be at least 2");

  FirstLastEngine engine(MeasureTable::of_substitution(sigma));
  TmAnalysis out;
  RateReport& r = out.report;
  std::size_t witness = 2;
  std::optional<Scalar> upper;
  for (std::size_t m = 2; m <= std::max(max_m, ell); ++m) {
    auto dm = engine.get(m);
    std::vector<Scalar> c(group.size(), Scalar::zero(dm.entries.front().mode()));
    for (std::size_t g = 0; g < group.size(); ++g)
      for (std::size_t a = 0; a < group.size(); ++a)
        c[g] += dm.at(static_cast<Letter>(a), group.add(static_cast<Letter>(a), static_cast<Letter>(g)));
    if (m <= ell)
      for (const auto& x : c)
        if (!upper || x > *upper) upper = x;
    if (m <= max_m) {
      if (r.profile.empty() || c[0] > r.lower) {
        r.lower = c[0];
        witness = m;
      }
      r.profile.emplace_back(m, c[0]);
      out.shifts.emplace(m, std::move(c));
    }
  }
  r.upper = upper;
  r.upper_method = "thue_morse_type";
  r.exact = *r.upper == r.lower;
  r.witness_length = witness;
  r.witness_key = BigInt(static_cast<unsigned long>(witness - 1));
  r.partial_rigidity_sequence = height_sequence(witness - 1, ell);
  r.certificates.push_back({"complete_mass_witness", r.lower, "m*=" + std::to_string(witness), r.partial_rigidity_sequence});
  return out;
}

std::vector<Certificate> certificates(const DirectiveSequence& seq) {
  std::vector<Certificate> out;
  const std::size_t p = seq.prefix_length();
  const std::size_t t = seq.period();

  std::size_t m_star = SIZE_MAX;
  std::size_t rank = SIZE_MAX;
  bool all_constant = true;
  for (const auto& s : seq.tail()) {
    m_star = std::min(m_star, classify(s).max_consecutivity);
    rank = std::min(rank, s.source().size());
    all_constant = all_constant && s.constant_length().has_value();
  }
  for (const auto& s : seq.prefix()) all_constant = all_constant && s.constant_length().has_value();

  std::string heights_desc = "h^(n) = |sigma_[0,n)(a)|";
  if (p == 0 && t == 1 && all_constant) heights_desc = height_sequence(1, *seq.tail()[0].constant_length());

  if (m_star >= 2) {
    const long m = static_cast<long>(m_star);
    if (all_constant)
      out.push_back({"m_consecutive_constant_length", Scalar(Rational(m - 1, m)), "m*=" + std::to_string(m_star),
                     heights_desc});
    out.push_back({"m_consecutive", Scalar(Rational(m - 1, m * static_cast<long>(rank))),
                   "m*=" + std::to_string(m_star) + ", d=" + std::to_string(rank),
                   "h_b^(n) for a letter b whose tower has mass >= 1/d"});
  }

  // Return words at each tail level; the levels repeat, so every one recurs
  // infinitely often.
  std::map<std::size_t, std::size_t> return_counts;
  for (std::size_t n = p; n < p + t; ++n) {
    auto lang = LanguageTable::of_substitution(seq.level_substitution(n), 4);
    std::size_t c = 0;
    bool ok = true;
    for (std::size_t a = 0; a < lang.alphabet_size() && ok; ++a) {
      Word letter{static_cast<Letter>(a)};
      auto rw = return_words(lang, letter);
      ok = rw.certified;
      c += rw.words.size();
    }
    if (ok) return_counts[n] = c;
  }
  if (!return_counts.empty()) {
    auto best = std::min_element(return_counts.begin(), return_counts.end(),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
    out.push_back({"return_words", Scalar(Rational(1, static_cast<long>(best->second))),
                   "level " + std::to_string(best->first) + ": sum_a |R(a)| = " + std::to_string(best->second),
                   "return times of a heaviest return class at levels " + std::to_string(best->first) + " + k*" +
                       std::to_string(t)});
  }

  // A positive morphism repeated along the sequence: a positive tail entry,
  // the tail composition, or a positive power of it.
  std::optional<std::size_t> level;
  std::optional<Morphism> tau;
  std::string which;
  for (std::size_t i = 0; i < t && !tau; ++i)
    if (classify(seq.tail()[i]).positive) {
      level = p + i;
      tau = seq.tail()[i];
      which = "tail entry " + std::to_string(i);
    }
  if (!tau) {
    Morphism comp = seq.level_substitution(p);
    if (auto k = positivity_exponent(comp)) {
      level = p;
      tau = *k == 1 ? comp : power(comp, *k);
      which = *k == 1 ? "tail composition" : "tail composition to the power " + std::to_string(*k);
    }
  }
  if (tau) {
    // The return-word count must be taken where tau is the level morphism.
    auto lang = LanguageTable::of_substitution(seq.level_substitution(*level), 4);
    std::size_t c = 0;
    bool ok = true;
    for (std::size_t a = 0; a < lang.alphabet_size() && ok; ++a) {
      Word letter{static_cast<Letter>(a)};
      auto rw = return_words(lang, letter);
      ok = rw.certified;
      c += rw.words.size();
    }
    BigInt crude;
    mpz_ui_pow_ui(crude.get_mpz_t(), tau->source().size(), 2 * tau->norm() - 1);
    crude *= static_cast<unsigned long>(tau->target().size());
    if (ok)
      out.push_back({"repeated_positive_morphism", Scalar(Rational(1, static_cast<long>(c))),
                     which + " at level " + std::to_string(*level) + ", c=" + std::to_string(c) +
                         ", crude bound c<=" + crude.get_str(),
                     "return times of a heaviest return class at the repeated level"});
  }
  return out;
}

Diagnostic rigidity_diagnostic(const Morphism& sigma, std::size_t n_max) {
  if (!classify(sigma).primitive) throw RejectedInput("substitution is not primitive");
  require_aperiodic(sigma);
  Diagnostic out;
  auto lang = LanguageTable::of_substitution(sigma, n_max);
  auto prof = complexity_profile(lang, n_max);
  out.ratios.push_back(Scalar(Rational(0)));
  for (std::size_t n = 1; n <= n_max; ++n) out.ratios.push_back(prof.ratio(n));

  out.verdict = "inconclusive";
  if (auto len = sigma.constant_length()) {
    auto report = delta_constant_length(sigma, default_max_m(*len));
    out.upper = report.upper;
    if (report.upper && *report.upper < Scalar(Rational(1)))
      out.verdict = "not_rigid_certified";
    else if (report.lower == Scalar(Rational(1)))
      out.verdict = "rigid_certified";
  }
  if (n_max >= 2) {
    const auto& last = out.ratios[n_max];
    const auto& mid = out.ratios[std::max<std::size_t>(1, n_max / 2)];
    out.trend = last > mid ? "rising" : (last < mid ? "falling" : "flat");
  } else {
    out.trend = "flat";
  }
  return out;
}

Scalar product_rate(const std::vector<Scalar>& rates) {
  if (rates.empty()) throw InvalidInput("product rate needs at least one rate");
  Scalar out = Scalar::one(rates.front().mode());
  const Scalar zero = Scalar::zero(out.mode()), one = Scalar::one(out.mode());
  for (const auto& r : rates) {
    if (r.mode() != out.mode()) throw InvalidInput("rates mix exact and float values");
    if (r < zero || r > one) throw InvalidInput("rate outside [0,1]: " + r.str());
    out *= r;
  }
  return out;
}

namespace {

Rational zeta_ratio(const BigInt& ell) { return Rational(ell - 1, ell + 1); }

Rational rational_pow(const Rational& q, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
  return Rational(num, den);
}

double log_ratio(const BigInt& ell) {
  // log((ell-1)/(ell+1)) = log1p(-2/(ell+1)), stable for large ell.
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, BigInt(ell + 1).get_mpz_t());
  double inv = std::ldexp(2.0 / mant, static_cast<int>(-exp));
  return std::log1p(-inv);
}

// Largest m >= 0 with delta * r^m >= target, given delta >= target.
unsigned long max_exponent(const Rational& delta, const BigInt& ell, const Rational& target) {
  const Rational r = zeta_ratio(ell);
  const double bound = (std::log(target.get_d()) - std::log(delta.get_d())) / log_ratio(ell);
  // Each factor costs about log2(ell) bits; refuse absurd sizes.
  const double bits = bound * std::log2(ell.get_d() + 1.0);
  if (!(bits < 2e8)) throw InvalidInput("tolerance too small for exact arithmetic");
  unsigned long m = bound > 0 ? static_cast<unsigned long>(bound) : 0;
  while (m > 0 && delta * rational_pow(r, m) < target) --m;
  while (delta * rational_pow(r, m + 1) >= target) ++m;
  return m;
}

}  // namespace

RateConstruction approximate_rate(const Rational& target, const Rational& eps) {
  if (target <= 0 || target >= 1) throw InvalidInput("target rate must lie in (0,1)");
  if (eps <= 0) throw InvalidInput("tolerance must be positive");
  RateConstruction out;
  out.target = target;
  out.eps = eps;

  // ell >= (1+delta)/(1-delta) makes (ell-1)/(ell+1) >= delta.
  Rational need = (1 + target) / (1 - target);
  BigInt ell = need.get_num() / need.get_den();
  if (ell * need.get_den() < need.get_num()) ell += 1;
  if (ell < 6) ell = 6;
  const Rational eps0 = 1 - zeta_ratio(ell);

  Rational delta = 1;
  unsigned q = 1;
  for (std::size_t k = 0;; ++k) {
    unsigned long m = max_exponent(delta, ell, target);
    if (m == 0) throw Error("rate construction made no progress");
    delta *= rational_pow(zeta_ratio(ell), m);
    RateFactor f{ell, q, m, zeta_ratio(ell), delta, false};
    f.bracket_ok = f.ratio * delta <= target && target <= delta;
    out.factors.push_back(f);
    if (delta == target) {
      out.exact_hit = true;
      out.converged = true;
      break;
    }
    if (delta - target <= eps) {
      out.converged = true;
      break;
    }
    if (k > 64) break;
    // Next ell = ell^q, q >= 2 minimal with ratio >= target/delta (so the
    // next exponent is positive) and 1 - ratio <= eps0 / 2^(k+1).
    const Rational rho = target / delta;
    Rational slack = eps0;
    slack /= Rational(BigInt(1) << static_cast<mp_bitcnt_t>(k + 1));
    BigInt next = ell * ell;
    q = 2;
    while (zeta_ratio(next) < rho || 1 - zeta_ratio(next) > slack) {
      next *= ell;
      ++q;
    }
    ell = next;
  }
  return out;
}

}  // namespace subrigid
