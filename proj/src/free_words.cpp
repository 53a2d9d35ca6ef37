#include "klein/free_words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "klein/checked.hpp"

namespace klein {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw std::invalid_argument("alphabet must have at least one generator");
  }
  for (const auto& n : names_) {
    if (n.empty() || n == "e") {
      throw std::invalid_argument("invalid generator name '" + n + "'");
    }
  }
}

std::optional<int> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

const Alphabet& Alphabet::f2() {
  static const Alphabet alphabet({"a", "g"});
  return alphabet;
}

const Alphabet& Alphabet::ab() {
  static const Alphabet alphabet({"a", "b"});
  return alphabet;
}

const Alphabet& Alphabet::g2() {
  static const Alphabet alphabet({"a", "b", "g"});
  return alphabet;
}

// ---------------------------------------------------------------------------

ReducedWord ReducedWord::generator(const Alphabet& alphabet, int gen, std::int64_t exp) {
  ReducedWord w(alphabet);
  w.append(gen, exp);
  return w;
}

ReducedWord ReducedWord::from_syllables(const Alphabet& alphabet, std::span<const Syllable> syllables) {
  ReducedWord w(alphabet);
  for (const auto& s : syllables) w.append(s.gen, s.exp);
  return w;
}

ReducedWord ReducedWord::from_letters(const Alphabet& alphabet, std::span<const Letter> letters) {
  ReducedWord w(alphabet);
  for (const auto& l : letters) w.append(l.gen, l.exp);
  return w;
}

void ReducedWord::append(int gen, std::int64_t exp) {
  if (gen < 0 || static_cast<std::size_t>(gen) >= alphabet_->rank()) {
    throw std::invalid_argument("generator index out of range");
  }
  if (exp == 0) return;
  if (!syllables_.empty() && syllables_.back().gen == gen) {
    auto merged = checked_add(syllables_.back().exp, exp);
    if (merged == 0) {
      syllables_.pop_back();
    } else {
      syllables_.back().exp = merged;
    }
    return;
  }
  syllables_.push_back({gen, exp});
}

std::int64_t ReducedWord::length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n = checked_add(n, s.exp < 0 ? checked_neg(s.exp) : s.exp);
  return n;
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord w(*alphabet_);
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    w.syllables_.push_back({it->gen, checked_neg(it->exp)});
  }
  return w;
}

std::vector<Letter> ReducedWord::letters() const {
  std::vector<Letter> out;
  for (const auto& s : syllables_) {
    const int sign = s.exp > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (s.exp > 0 ? s.exp : -s.exp); ++k) out.push_back({s.gen, sign});
  }
  return out;
}

ReducedWord concat_reduce(const ReducedWord& u, const ReducedWord& v) {
  if (!(u.alphabet() == v.alphabet())) {
    throw std::invalid_argument("concat_reduce: alphabet mismatch");
  }
  ReducedWord out = u;
  for (const auto& s : v.syllables()) out.append(s.gen, s.exp);
  return out;
}

namespace {

void require_f2(const ReducedWord& w, const char* what) {
  if (!(w.alphabet() == Alphabet::f2())) {
    throw std::invalid_argument(std::string(what) + ": word must be over {a, g}");
  }
}

}  // namespace

std::int64_t sigma(const ReducedWord& w) {
  require_f2(w, "sigma");
  std::int64_t total = 0;
  for (const auto& s : w.syllables()) {
    if (s.gen == 0) total = checked_add(total, s.exp);
  }
  return total;
}

ReducedWord phi_power(const ReducedWord& w, std::int64_t n) {
  require_f2(w, "phi_power");
  if (n % 2 == 0) return w;
  ReducedWord out(w.alphabet());
  for (const auto& s : w.syllables()) out.append(s.gen, s.gen == 1 ? checked_neg(s.exp) : s.exp);
  return out;
}

std::string to_string(const ReducedWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += w.alphabet().name(s.gen);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

namespace {

std::vector<Syllable> parse_syllables(const Alphabet& alphabet, std::string_view text) {
  std::vector<Syllable> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse word \"" + std::string(text) + "\" at position " +
                                std::to_string(i) + ": " + why);
  };
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_space();
  if (i == text.size()) return out;
  {
    auto rest = text.substr(i);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
    if (rest == "e") return out;
  }

  while (true) {
    skip_space();
    if (i == text.size()) break;

    // Longest generator name matching here; upper case single letters invert.
    int gen = -1;
    int sign = 1;
    std::size_t best = 0;
    for (std::size_t g = 0; g < alphabet.rank(); ++g) {
      const auto& name = alphabet.name(static_cast<int>(g));
      if (name.size() > best && text.substr(i, name.size()) == name) {
        gen = static_cast<int>(g);
        best = name.size();
      }
    }
    if (gen < 0 && std::isupper(static_cast<unsigned char>(text[i]))) {
      const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      if (auto g = alphabet.find(std::string_view(&lower, 1))) {
        gen = *g;
        sign = -1;
        best = 1;
      }
    }
    if (gen < 0) fail("unknown generator");
    i += best;

    std::int64_t exp = 1;
    skip_space();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_space();
      const bool braced = i < text.size() && text[i] == '{';
      if (braced) ++i;
      const char* first = text.data() + i;
      const char* last = text.data() + text.size();
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, exp);
      if (ec != std::errc{}) fail("bad exponent");
      i = static_cast<std::size_t>(ptr - text.data());
      if (braced) {
        if (i >= text.size() || text[i] != '}') fail("missing '}'");
        ++i;
      }
    }
    exp = checked_mul(exp, sign);
    if (exp != 0) out.push_back({gen, exp});
  }
  return out;
}

}  // namespace

std::vector<Letter> parse_letters(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> out;
  for (const auto& s : parse_syllables(alphabet, text)) {
    const int unit = s.exp > 0 ? 1 : -1;
    const std::int64_t count = s.exp > 0 ? s.exp : -s.exp;
    if (count > (1 << 20)) {
      throw std::invalid_argument("exponent too large for a raw word in \"" + std::string(text) + "\"");
    }
    for (std::int64_t k = 0; k < count; ++k) out.push_back({s.gen, unit});
  }
  return out;
}

ReducedWord parse_word(const Alphabet& alphabet, std::string_view text) {
  return ReducedWord::from_syllables(alphabet, parse_syllables(alphabet, text));
}

std::vector<ReducedWord> enumerate_reduced_words(const Alphabet& alphabet, int length) {
  std::vector<ReducedWord> out;
  for (auto& raw : enumerate_raw_words(alphabet, length)) {
    auto w = ReducedWord::from_letters(alphabet, raw);
    if (w.length() == length) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<Letter>> enumerate_raw_words(const Alphabet& alphabet, int length) {
  std::vector<Letter> symbols;
  for (std::size_t g = 0; g < alphabet.rank(); ++g) {
    symbols.push_back({static_cast<int>(g), 1});
    symbols.push_back({static_cast<int>(g), -1});
  }
  std::vector<std::vector<Letter>> out{{}};
  for (int k = 0; k < length; ++k) {
    std::vector<std::vector<Letter>> next;
    next.reserve(out.size() * symbols.size());
    for (const auto& prefix : out) {
      for (const auto& s : symbols) {
        next.push_back(prefix);
        next.back().push_back(s);
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Monomial::to_string() const {
  if (degree == 0) return "1";
  std::string out;
  for (int k = degree - 1; k >= 0; --k) out += ((bits >> k) & 1u) ? 'Y' : 'X';
  return out;
}

TruncatedSeries::TruncatedSeries(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0 || max_degree > kMaxSupportedDegree) {
    throw std::invalid_argument("truncation degree out of supported range");
  }
}

TruncatedSeries TruncatedSeries::one(int max_degree) {
  TruncatedSeries s(max_degree);
  s.add(Monomial{}, 1);
  return s;
}

std::int64_t TruncatedSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void TruncatedSeries::add(const Monomial& m, std::int64_t c) {
  if (m.degree > max_degree_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Monomial{} && terms_.begin()->second == 1;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    const auto mag = c < 0 ? -c : c;
    if (m.degree == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << m.to_string();
    }
    first = false;
  }
  return os.str();
}

TruncatedSeries multiply(const TruncatedSeries& s, const TruncatedSeries& t) {
  if (s.max_degree() != t.max_degree()) {
    throw std::invalid_argument("multiply: truncation degrees differ");
  }
  TruncatedSeries out(s.max_degree());
  for (const auto& [ms, cs] : s.terms()) {
    for (const auto& [mt, ct] : t.terms()) {
      if (ms.degree + mt.degree > s.max_degree()) continue;
      out.add(Monomial{static_cast<std::uint8_t>(ms.degree + mt.degree), (ms.bits << mt.degree) | mt.bits},
              checked_mul(cs, ct));
    }
  }
  return out;
}

namespace {

// Dense coefficient buffer indexed by (2^degree - 1) + bits.
class DenseSeries {
 public:
  explicit DenseSeries(int max_degree)
      : max_degree_(max_degree), coeffs_((std::size_t{1} << (max_degree + 1)) - 1, 0) {
    coeffs_[0] = 1;
  }

  // this *= (1 + Z)^sign for the indeterminate `letter`, sign = +1 or -1.
  void multiply_generator(int letter, int sign) {
    // Walk from high degree to low so each coefficient is read before the
    // monomials it feeds into are updated.
    for (int d = max_degree_ - 1; d >= 0; --d) {
      const std::uint64_t count = std::uint64_t{1} << d;
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        const std::int64_t c = coeffs_[index(d, bits)];
        if (c == 0) continue;
        if (sign > 0) {
          auto& target = coeffs_[index(d + 1, (bits << 1) | static_cast<std::uint64_t>(letter))];
          target = checked_add(target, c);
        } else {
          // c*m * (1 - Z + Z^2 - ...)
          std::uint64_t b = bits;
          std::int64_t term = c;
          for (int e = d + 1; e <= max_degree_; ++e) {
            b = (b << 1) | static_cast<std::uint64_t>(letter);
            term = checked_neg(term);
            auto& target = coeffs_[index(e, b)];
            target = checked_add(target, term);
          }
        }
      }
    }
  }

  TruncatedSeries to_series() const {
    TruncatedSeries s(max_degree_);
    for (int d = 0; d <= max_degree_; ++d) {
      const std::uint64_t count = std::uint64_t{1} << d;
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        s.add(Monomial{static_cast<std::uint8_t>(d), bits}, coeffs_[index(d, bits)]);
      }
    }
    return s;
  }

 private:
  static std::size_t index(int degree, std::uint64_t bits) {
    return ((std::size_t{1} << degree) - 1) + static_cast<std::size_t>(bits);
  }

  int max_degree_;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace

TruncatedSeries magnus_expand(const ReducedWord& w, int max_degree) {
  require_f2(w, "magnus_expand");
  if (max_degree < 0 || max_degree > TruncatedSeries::kMaxSupportedDegree) {
    throw std::invalid_argument("magnus_expand: truncation degree out of supported range");
  }
  DenseSeries dense(max_degree);
  for (const auto& s : w.syllables()) {
    const int sign = s.exp > 0 ? 1 : -1;
    const std::int64_t count = s.exp > 0 ? s.exp : -s.exp;
    for (std::int64_t k = 0; k < count; ++k) dense.multiply_generator(s.gen, sign);
  }
  return dense.to_series();
}

std::strong_ordering f2_compare(const ReducedWord& u, const ReducedWord& v) {
  require_f2(u, "f2_compare");
  require_f2(v, "f2_compare");
  const auto quotient = concat_reduce(u.inverse(), v);
  if (quotient.empty()) return std::strong_ordering::equal;
  const auto degree = static_cast<int>(std::max<std::int64_t>(1, checked_add(u.length(), v.length())));
  const auto series = magnus_expand(quotient, std::min(degree, TruncatedSeries::kMaxSupportedDegree));
  for (const auto& [m, c] : series.terms()) {
    if (m.degree == 0) continue;  // the constant term is always 1
    return c > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  throw std::domain_error("f2_compare: nontrivial quotient invisible at truncation degree " +
                          std::to_string(degree));
}

}  // namespace klein
