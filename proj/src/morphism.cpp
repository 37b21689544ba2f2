#include "subrigid/morphism.hpp"

#include <algorithm>
#include <sstream>

#include "subrigid/error.hpp"

namespace subrigid {

std::uint64_t IntMatrix::column_sum(std::size_t c) const {
  std::uint64_t s = 0;
  for (std::size_t r = 0; r < rows; ++r) s += at(r, c);
  return s;
}

bool IntMatrix::positive() const {
  return std::all_of(entries.begin(), entries.end(), [](std::uint64_t x) { return x > 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw InvalidInput("matrix dimension mismatch");
  IntMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      auto aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

Morphism::Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size())
    throw InvalidInput("morphism needs exactly one image per source letter");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty())
      throw InvalidInput("image of '" + source_.symbol(static_cast<Letter>(a)) + "' is empty");
    for (Letter b : images_[a])
      if (b >= target_.size()) throw InvalidInput("image letter outside target alphabet");
  }
}

Morphism::Morphism(Alphabet alphabet, std::vector<Word> images)
    : Morphism(alphabet, alphabet, std::move(images)) {}

Word Morphism::apply(WordView w) const {
  Word out;
  for (Letter a : w) {
    if (a >= images_.size()) throw InvalidInput("letter outside source alphabet");
    const Word& img = images_[a];
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::size_t Morphism::norm() const {
  std::size_t n = 0;
  for (const auto& img : images_) n = std::max(n, img.size());
  return n;
}

std::size_t Morphism::min_image_length() const {
  std::size_t n = images_.empty() ? 0 : images_.front().size();
  for (const auto& img : images_) n = std::min(n, img.size());
  return n;
}

std::optional<std::size_t> Morphism::constant_length() const {
  if (images_.empty()) return std::nullopt;
  auto n = images_.front().size();
  for (const auto& img : images_)
    if (img.size() != n) return std::nullopt;
  return n;
}

IntMatrix Morphism::incidence() const {
  IntMatrix m(target_.size(), source_.size());
  for (std::size_t a = 0; a < images_.size(); ++a)
    for (Letter b : images_[a]) ++m.at(b, a);
  return m;
}

std::string Morphism::describe() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (a) os << ", ";
    os << source_.symbol(static_cast<Letter>(a)) << "->" << target_.format(images_[a]);
  }
  return os.str();
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!(inner.target() == outer.source()))
    throw InvalidInput("compose: alphabet mismatch between morphisms");
  std::vector<Word> images;
  images.reserve(inner.source().size());
  for (const auto& img : inner.images()) images.push_back(outer.apply(img));
  return Morphism(inner.source(), outer.target(), std::move(images));
}

Morphism power(const Morphism& sigma, unsigned k) {
  if (k == 0) throw InvalidInput("power: exponent must be positive");
  if (!sigma.is_substitution()) throw InvalidInput("power: not a substitution");
  Morphism out = sigma;
  for (unsigned i = 1; i < k; ++i) out = compose(sigma, out);
  return out;
}

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix support(const IntMatrix& m) {
  BoolMatrix s(m.rows, std::vector<bool>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) s[i][j] = m.at(i, j) > 0;
  return s;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  std::size_t n = a.size();
  BoolMatrix out(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) out[i][j] = true;
  return out;
}

bool all_true(const BoolMatrix& m) {
  for (const auto& row : m)
    for (bool x : row)
      if (!x) return false;
  return true;
}

std::size_t min_run_length(const Word& w) {
  std::size_t best = w.size();
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    best = std::min(best, j - i);
    i = j;
  }
  return best;
}

}  // namespace

std::optional<unsigned> positivity_exponent(const Morphism& sigma) {
  if (!sigma.is_substitution()) return std::nullopt;
  auto m = sigma.incidence();
  std::size_t d = m.rows;
  std::size_t bound = (d - 1) * (d - 1) + 1;
  BoolMatrix base = support(m);
  BoolMatrix cur = base;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (all_true(cur)) return static_cast<unsigned>(k);
    cur = bool_product(cur, base);
  }
  return std::nullopt;
}

bool is_primitive_matrix(const IntMatrix& m) {
  if (m.rows != m.cols || m.rows == 0) return false;
  std::size_t d = m.rows;
  std::size_t bound = (d - 1) * (d - 1) + 1;
  BoolMatrix base = support(m);
  BoolMatrix cur = base;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (all_true(cur)) return true;
    cur = bool_product(cur, base);
  }
  return false;
}

MorphismProfile classify(const Morphism& sigma) {
  MorphismProfile p;
  p.constant_length = sigma.constant_length();
  p.norm = sigma.norm();
  p.min_image_length = sigma.min_image_length();
  auto m = sigma.incidence();
  p.positive = m.positive();
  p.primitive = sigma.is_substitution() && is_primitive_matrix(m);

  const auto& imgs = sigma.images();
  p.proper = std::all_of(imgs.begin(), imgs.end(), [&](const Word& w) {
    return w.front() == imgs.front().front() && w.back() == imgs.front().back();
  });

  std::size_t m_star = p.norm;
  for (const auto& img : imgs) m_star = std::min(m_star, min_run_length(img));
  p.max_consecutivity = std::max<std::size_t>(1, m_star);
  return p;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw InvalidInput("group needs at least one cyclic factor");
  for (auto d : orders_) {
    if (d < 1) throw InvalidInput("group order must be >= 1");
    size_ *= d;
    if (size_ > 0xFFFF) throw InvalidInput("group too large");
  }
}

std::vector<std::size_t> FiniteAbelianGroup::tuple(Letter g) const {
  std::vector<std::size_t> t(orders_.size());
  std::size_t x = g;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    t[i] = x % orders_[i];
    x /= orders_[i];
  }
  return t;
}

Letter FiniteAbelianGroup::element(const std::vector<std::size_t>& t) const {
  if (t.size() != orders_.size()) throw InvalidInput("group tuple has wrong arity");
  std::size_t x = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (t[i] >= orders_[i]) throw InvalidInput("group tuple component out of range");
    x = x * orders_[i] + t[i];
  }
  return static_cast<Letter>(x);
}

Letter FiniteAbelianGroup::add(Letter g, Letter h) const {
  auto a = tuple(g), b = tuple(h);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % orders_[i];
  return element(a);
}

Letter FiniteAbelianGroup::negate(Letter g) const {
  auto a = tuple(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (orders_[i] - a[i]) % orders_[i];
  return element(a);
}

Alphabet FiniteAbelianGroup::alphabet() const {
  if (orders_.size() == 1) return Alphabet::numeric(size_);
  std::vector<std::string> symbols;
  for (std::size_t g = 0; g < size_; ++g) {
    auto t = tuple(static_cast<Letter>(g));
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    symbols.push_back(s + ")");
  }
  return Alphabet(std::move(symbols));
}

Morphism tm_substitution(const FiniteAbelianGroup& group, WordView u) {
  if (u.empty()) throw InvalidInput("Thue-Morse type substitution needs a nonempty word");
  for (Letter x : u)
    if (x >= group.size()) throw InvalidInput("word letter outside the group");
  std::vector<Word> images;
  for (std::size_t g = 0; g < group.size(); ++g) {
    Word img;
    for (Letter x : u) img.push_back(group.add(x, static_cast<Letter>(g)));
    images.push_back(std::move(img));
  }
  return Morphism(group.alphabet(), std::move(images));
}

namespace {

long param(const std::map<std::string, long>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw InvalidInput("missing family parameter '" + key + "'");
  return it->second;
}

}  // namespace

Morphism builtin_family(const std::string& name, const std::map<std::string, long>& params) {
  if (name == "thue_morse") {
    return tm_substitution(FiniteAbelianGroup({2}), Word{0, 1});
  }
  if (name == "zeta") {
    long l = param(params, "l");
    if (l < 2) throw InvalidInput("zeta requires l >= 2");
    Word u(static_cast<std::size_t>(l), 1);
    u[0] = 0;
    return tm_substitution(FiniteAbelianGroup({2}), u);
  }
  if (name == "sigma_j") {
    long j = param(params, "j");
    long d = param(params, "d");
    if (j < 1 || d < 2) throw InvalidInput("sigma_j requires j >= 1 and d >= 2");
    Word u;
    u.insert(u.end(), static_cast<std::size_t>(j), Letter{0});
    u.insert(u.end(), static_cast<std::size_t>(j), Letter{1});
    return tm_substitution(FiniteAbelianGroup({static_cast<std::size_t>(d)}), u);
  }
  if (name == "tm_ternary_0100") {
    return tm_substitution(FiniteAbelianGroup({3}), Word{0, 1, 0, 0});
  }
  throw InvalidInput("unknown substitution family '" + name + "'");
}

}  // namespace subrigid
