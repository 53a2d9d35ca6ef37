#include "klein/derived_groups.hpp"

#include <stdexcept>
#include <vector>

#include "klein/checked.hpp"

namespace klein {

namespace {

// Generator indices in Alphabet::g2() and Alphabet::f2().
constexpr int kAlpha = 0;
constexpr int kBeta = 1;
constexpr int kGamma = 2;
constexpr int kF2Alpha = 0;
constexpr int kF2Gamma = 1;

int to_f2(int g2_gen) { return g2_gen == kAlpha ? kF2Alpha : kF2Gamma; }
int from_f2(int f2_gen) { return f2_gen == kF2Alpha ? kAlpha : kGamma; }

std::vector<Letter> checked_g2_letters(std::span<const Letter> word) {
  for (const auto& l : word) {
    if (l.gen < kAlpha || l.gen > kGamma) throw std::invalid_argument("G2 word: letter outside {a, b, g}");
    if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("G2 word: raw letters must have exponent +-1");
  }
  return {word.begin(), word.end()};
}

void require_g2(const ReducedWord& w) {
  if (!(w.alphabet() == Alphabet::g2())) throw std::invalid_argument("G2 word must be over {a, b, g}");
}

}  // namespace

G2Element::G2Element(ReducedWord word, std::int64_t beta_exp) : w(std::move(word)), n(beta_exp) {
  if (!(w.alphabet() == Alphabet::f2())) {
    throw std::invalid_argument("G2Element: w must be a word over {a, g}");
  }
}

G2Element g2_multiply(const G2Element& x, const G2Element& y) {
  return {concat_reduce(x.w, phi_power(y.w, x.n)), checked_add(signed_by_parity(sigma(y.w), x.n), y.n)};
}

G2Element g2_inverse(const G2Element& x) {
  // beta^-n w^-1 = Phi^n(w^-1) beta^{-(-1)^sigma(w) n}
  return {phi_power(x.w.inverse(), x.n), checked_neg(signed_by_parity(sigma(x.w), x.n))};
}

G2Element g2_power(const G2Element& x, std::int64_t n) {
  G2Element base = n < 0 ? g2_inverse(x) : x;
  if (n < 0) n = checked_neg(n);
  G2Element result;
  while (n > 0) {
    if (n & 1) result = g2_multiply(result, base);
    n >>= 1;
    if (n > 0) base = g2_multiply(base, base);
  }
  return result;
}

G2Element g2_rewrite(std::span<const Letter> word) {
  auto letters = checked_g2_letters(word);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      const Letter left = letters[i];
      const Letter right = letters[i + 1];
      if (left.gen != kBeta || right.gen == kBeta) continue;
      if (right.gen == kAlpha) {
        letters[i] = right;
        letters[i + 1] = {kBeta, -left.exp};
      } else {
        letters[i] = {kGamma, -right.exp};
        letters[i + 1] = left;
      }
      changed = true;
    }
  }
  G2Element out;
  for (const auto& l : letters) {
    if (l.gen == kBeta) {
      out.n = checked_add(out.n, l.exp);
    } else {
      out.w.append(to_f2(l.gen), l.exp);
    }
  }
  return out;
}

G2Element g2_rewrite(const ReducedWord& word) {
  require_g2(word);
  return g2_rewrite(word.letters());
}

ReducedWord g2_omega(std::span<const Letter> word) {
  const auto letters = checked_g2_letters(word);
  ReducedWord out(Alphabet::f2());
  std::int64_t betas_seen = 0;
  for (const auto& l : letters) {
    if (l.gen == kBeta) {
      ++betas_seen;
    } else if (l.gen == kAlpha) {
      out.append(kF2Alpha, betas_seen % 2 == 0 ? l.exp : -l.exp);
    } else {
      out.append(kF2Gamma, l.exp);
    }
  }
  return out;
}

ReducedWord g2_omega(const ReducedWord& word) {
  require_g2(word);
  return g2_omega(word.letters());
}

ReducedWord g2_word(const G2Element& x) {
  ReducedWord out(Alphabet::g2());
  for (const auto& s : x.w.syllables()) out.append(from_f2(s.gen), s.exp);
  out.append(kBeta, x.n);
  return out;
}

std::int64_t g2_sigma(const G2Element& x) { return sigma(x.w); }

bool G2Order::is_positive(const G2Element& g) const {
  if (const auto s = g2_sigma(g); s != 0) return s > 0;
  if (g.n != 0) return g.n > 0;
  if (g.w.empty()) return false;
  return f2_compare(ReducedWord(Alphabet::f2()), g.w) == std::strong_ordering::less;
}

std::strong_ordering G2Order::compare(const G2Element& x, const G2Element& y) const {
  const auto quotient = g2_multiply(g2_inverse(x), y);
  if (quotient.n == 0 && quotient.w.empty()) return std::strong_ordering::equal;
  return is_positive(quotient) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering g2_compare(const G2Element& x, const G2Element& y, const G2Order& order) {
  return order.compare(x, y);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::array<int, 3>, 4> kSigns{{
    {1, 1, 1},
    {1, -1, -1},
    {-1, 1, -1},
    {-1, -1, 1},
}};

SignDiagonal from_signs(const std::array<int, 3>& s) {
  for (std::size_t i = 0; i < kSigns.size(); ++i) {
    if (kSigns[i] == s) return static_cast<SignDiagonal>(i);
  }
  throw std::invalid_argument("linear part must be a sign diagonal with determinant +1");
}

}  // namespace

AffineIso3::AffineIso3(SignDiagonal linear, std::array<Rational, 3> translation)
    : linear_(linear), translation_(std::move(translation)) {}

int AffineIso3::sign(int axis) const {
  return kSigns[static_cast<std::size_t>(linear_)][static_cast<std::size_t>(axis)];
}

bool AffineIso3::is_identity() const {
  return linear_ == SignDiagonal::ppp && translation_[0] == 0 && translation_[1] == 0 && translation_[2] == 0;
}

AffineIso3 AffineIso3::inverse() const {
  // (L, t)^-1 = (L, -L t) since L = L^-1.
  std::array<Rational, 3> t;
  for (int i = 0; i < 3; ++i) t[i] = -sign(i) * translation_[i];
  return {linear_, std::move(t)};
}

std::array<Rational, 3> AffineIso3::apply(const std::array<Rational, 3>& x) const {
  std::array<Rational, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = sign(i) * x[i] + translation_[i];
  return out;
}

bool AffineIso3::operator<(const AffineIso3& other) const {
  if (linear_ != other.linear_) return linear_ < other.linear_;
  return translation_ < other.translation_;
}

AffineIso3 affine_compose(const AffineIso3& f, const AffineIso3& g) {
  std::array<int, 3> signs;
  for (int i = 0; i < 3; ++i) signs[i] = f.sign(i) * g.sign(i);
  return {from_signs(signs), f.apply(g.translation())};
}

AffineIso3 affine_power(const AffineIso3& f, std::int64_t n) {
  AffineIso3 base = n < 0 ? f.inverse() : f;
  if (n < 0) n = checked_neg(n);
  AffineIso3 result;
  while (n > 0) {
    if (n & 1) result = affine_compose(result, base);
    n >>= 1;
    if (n > 0) base = affine_compose(base, base);
  }
  return result;
}

AffineIso3 affine_conjugate(const AffineIso3& g, const AffineIso3& f) {
  return affine_compose(affine_compose(g, f), g.inverse());
}

std::string to_string(SignDiagonal d) {
  const auto& s = kSigns[static_cast<std::size_t>(d)];
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ',';
    out += s[static_cast<std::size_t>(i)] > 0 ? '+' : '-';
  }
  return out + "]";
}

SignDiagonal parse_sign_diagonal(std::string_view text) {
  std::array<int, 3> signs{};
  std::size_t k = 0;
  for (char c : text) {
    if (c == '+' || c == '-') {
      if (k == 3) throw std::invalid_argument("sign diagonal has more than three entries");
      signs[k++] = c == '+' ? 1 : -1;
    } else if (c != '[' && c != ']' && c != ',' && c != ' ') {
      throw std::invalid_argument("unexpected character in sign diagonal \"" + std::string(text) + "\"");
    }
  }
  if (k != 3) throw std::invalid_argument("sign diagonal needs three entries");
  return from_signs(signs);
}

AffineIso3 g1_generator(G1Generator which) {
  const Rational half(1, 2);
  switch (which) {
    case G1Generator::alpha:
      return {SignDiagonal::pmm, {half, Rational(0), Rational(0)}};
    case G1Generator::beta:
      return {SignDiagonal::mpm, {Rational(0), half, half}};
  }
  throw std::invalid_argument("unknown G1 generator");
}

AffineIso3 g1_evaluate(std::span<const Letter> word) {
  static const AffineIso3 alpha = g1_generator(G1Generator::alpha);
  static const AffineIso3 beta = g1_generator(G1Generator::beta);
  static const AffineIso3 alpha_inv = alpha.inverse();
  static const AffineIso3 beta_inv = beta.inverse();
  AffineIso3 out;
  for (const auto& l : word) {
    if (l.gen == 0) {
      out = affine_compose(out, l.exp > 0 ? alpha : alpha_inv);
    } else if (l.gen == 1) {
      out = affine_compose(out, l.exp > 0 ? beta : beta_inv);
    } else {
      throw std::invalid_argument("G1 word: letter outside {a, b}");
    }
  }
  return out;
}

AffineIso3 g1_evaluate(const ReducedWord& word) {
  if (!(word.alphabet() == Alphabet::ab())) throw std::invalid_argument("G1 word must be over {a, b}");
  return g1_evaluate(word.letters());
}

std::optional<int> g1_element_order(const AffineIso3& f) {
  AffineIso3 power = f;
  for (int m = 1; m <= 6; ++m) {
    if (power.is_identity()) return m;
    power = affine_compose(power, f);
  }
  return std::nullopt;
}

bool in_half_integer_lattice(const AffineIso3& f) {
  for (const auto& t : f.translation()) {
    const auto den = boost::multiprecision::denominator(t);
    if (den != 1 && den != 2) return false;
  }
  return true;
}

}  // namespace klein
