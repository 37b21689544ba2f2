#include <doctest.h>

#include "oracles.hpp"
#include "subrigid/error.hpp"
#include "subrigid/language.hpp"

using namespace subrigid;

namespace {

Morphism thue_morse() { return builtin_family("thue_morse"); }
Morphism zeta(long l) { return builtin_family("zeta", {{"l", l}}); }
Morphism fib() {
  Alphabet a({"0", "1"});
  return Morphism(a, {a.parse("01"), a.parse("0")});
}
Morphism sub(std::vector<std::string> rules) {
  Alphabet a = Alphabet::numeric(rules.size());
  std::vector<Word> imgs;
  for (const auto& r : rules) imgs.push_back(a.parse(r));
  return Morphism(a, imgs);
}

}  // namespace

TEST_CASE("language matches brute-force factors of long iterates") {
  std::vector<Morphism> cases = {thue_morse(), zeta(6), fib(), builtin_family("tm_ternary_0100"),
                                 builtin_family("sigma_j", {{"j", 2}, {"d", 3}}), sub({"012", "02", "1"})};
  for (const auto& sigma : cases) {
    auto lang = LanguageTable::of_substitution(sigma, 12);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(lang.words(n) == oracle::brute_language(sigma, n));
  }
}

TEST_CASE("Thue-Morse language examples") {
  auto lang = LanguageTable::of_substitution(thue_morse());
  CHECK(lang.words(2) == std::set<Word>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK_FALSE(lang.contains(Word{0, 0, 0}));
  CHECK_FALSE(lang.contains(Word{1, 1, 1}));
  CHECK(lang.contains(Word{0, 1, 1, 0}));
  auto z = LanguageTable::of_substitution(zeta(6));
  CHECK(z.words(2).size() == 4);
}

TEST_CASE("factor closure and substitution stability") {
  for (const auto& sigma : {thue_morse(), zeta(7), fib()}) {
    auto lang = LanguageTable::of_substitution(sigma, 16);
    for (std::size_t n = 2; n <= 16; ++n)
      for (const auto& w : lang.words(n))
        for (const auto& f : factors(w, n - 1)) CHECK(lang.contains(f));
    for (std::size_t m = 2; m <= 6; ++m)
      for (const auto& w : lang.words(m)) {
        Word img = sigma.apply(w);
        std::size_t n = std::min<std::size_t>(img.size(), 16);
        for (const auto& f : factors(img, n)) CHECK(lang.contains(f));
      }
  }
}

TEST_CASE("rejects non-primitive and non-growing substitutions") {
  CHECK_THROWS_AS(LanguageTable::of_substitution(sub({"01", "1"})), RejectedInput);
  CHECK_THROWS_AS(LanguageTable::of_substitution(sub({"1", "0"})), RejectedInput);
  CHECK(growth_exponent(fib()) == std::optional<unsigned>(2));
  CHECK(growth_exponent(thue_morse()) == std::optional<unsigned>(1));
  CHECK_FALSE(growth_exponent(sub({"1", "0"})).has_value());
}

TEST_CASE("complexity profile") {
  auto lang = LanguageTable::of_substitution(thue_morse(), 20);
  auto cp = complexity_profile(lang, 20);
  std::vector<std::size_t> known = {1, 2, 4, 6, 10, 12, 16, 20, 22, 24, 28};
  for (std::size_t n = 0; n < known.size(); ++n) CHECK(cp.p[n] == known[n]);
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(cp.p[n] >= cp.p[n - 1]);
    CHECK(cp.q[n] < cp.p[n]);
    std::size_t complete = 0;
    for (const auto& w : lang.words(n)) complete += oracle::is_complete(w);
    CHECK(cp.q[n] == complete);
  }
  CHECK(cp.ratio(2) == Scalar(Rational(1, 2)));
}

TEST_CASE("aperiodicity check") {
  CHECK(aperiodicity_check(thue_morse(), 10) == PeriodicityVerdict::AperiodicEvidence);
  CHECK(aperiodicity_check(sub({"010", "101"})) == PeriodicityVerdict::Periodic);
  CHECK(aperiodicity_check(sub({"0"})) == PeriodicityVerdict::Periodic);
  CHECK(std::string(to_string(PeriodicityVerdict::Inconclusive)) == "inconclusive");
}

TEST_CASE("return words of Thue-Morse") {
  auto lang = LanguageTable::of_substitution(thue_morse());
  auto left0 = return_words(lang, Word{0}, ReturnSide::Left);
  CHECK(left0.words == std::set<Word>{{0}, {0, 1}, {0, 1, 1}});
  CHECK(left0.words == oracle::brute_return_segments(thue_morse(), Word{0}));
  auto left1 = return_words(lang, Word{1}, ReturnSide::Left);
  CHECK(left1.words == std::set<Word>{{1}, {1, 0}, {1, 0, 0}});
  auto right0 = return_words(lang, Word{0}, ReturnSide::Right);
  CHECK(right0.words == std::set<Word>{{0}, {1, 0}, {1, 1, 0}});
  CHECK(right0.certified);
  CHECK(right0.boundary_bound == std::optional<std::size_t>(3));
  for (const auto& w : right0.words) CHECK(w.size() <= 3);
  auto wider = return_words(lang, Word{0}, ReturnSide::Right, 4096);
  CHECK(wider.words == right0.words);
  CHECK_THROWS_AS(return_words(lang, Word{0, 0, 0}), InvalidInput);
}

TEST_CASE("return words against brute force on other substitutions") {
  for (const auto& sigma : {zeta(6), fib(), builtin_family("tm_ternary_0100")}) {
    auto lang = LanguageTable::of_substitution(sigma);
    for (Letter a = 0; a < sigma.source().size(); ++a) {
      auto r = return_words(lang, Word{a}, ReturnSide::Left);
      CHECK(r.certified);
      CHECK(r.words == oracle::brute_return_segments(sigma, Word{a}));
    }
    for (const auto& u : lang.words(3)) {
      auto r = return_words(lang, u, ReturnSide::Left);
      if (r.certified) CHECK(r.words == oracle::brute_return_segments(sigma, u, 200000));
    }
  }
  auto z = LanguageTable::of_substitution(zeta(6));
  for (const auto& w : return_words(z, Word{1}).words) CHECK(w.size() <= 11);
}

TEST_CASE("directive sequences") {
  auto seq = DirectiveSequence({zeta(6)}, {thue_morse()});
  CHECK(seq.prefix_length() == 1);
  CHECK(seq.period() == 1);
  CHECK(seq.at(0) == zeta(6));
  CHECK(seq.at(5) == thue_morse());
  CHECK(seq.connecting(0, 2) == compose(zeta(6), thue_morse()));
  CHECK(seq.level_substitution(1) == thue_morse());
  CHECK(seq.is_primitive());
  CHECK_THROWS(seq.level_substitution(0));

  Morphism from3(Alphabet::numeric(3), Alphabet({"0", "1"}), {Word{0}, Word{1}, Word{0, 1}});
  CHECK_THROWS_AS(DirectiveSequence({from3}, {thue_morse()}), InvalidInput);
  Morphism to3(Alphabet({"0", "1"}), Alphabet::numeric(3), {Word{0, 1}, Word{2}});
  CHECK_NOTHROW(DirectiveSequence({to3}, {thue_morse()}));
  CHECK_THROWS_AS(DirectiveSequence({}, {}), InvalidInput);

  auto level0 = sadic_language(DirectiveSequence::constant(thue_morse()), 0, 10);
  auto level3 = sadic_language(DirectiveSequence::constant(thue_morse()), 3, 10);
  auto direct = LanguageTable::of_substitution(thue_morse(), 10);
  auto top = sadic_language(seq, 1, 10);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(level0.words(n) == direct.words(n));
    CHECK(level3.words(n) == direct.words(n));
    CHECK(top.words(n) == direct.words(n));
  }
  // Level 0 of zeta_6 composed with Thue-Morse: factors of zeta_6(TM words).
  auto bottom = sadic_language(seq, 0, 8);
  auto composite = compose(zeta(6), power(thue_morse(), 12));
  for (std::size_t n = 1; n <= 8; ++n) {
    std::set<Word> expect;
    for (Letter a = 0; a < 2; ++a) collect_factors(composite.image(a), n, expect);
    CHECK(bottom.words(n) == expect);
  }
}
