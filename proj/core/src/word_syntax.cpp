#include <cctype>

#include "loxogen/automaton.hpp"
#include "loxogen/error.hpp"

namespace loxogen {

namespace {

class WordParser {
 public:
  WordParser(const Alphabet& alphabet, std::string_view text)
      : alphabet_(alphabet), text_(text) {}

  Word parse() {
    Word w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected ')'");
    return w;
  }

 private:
  Word sequence() {
    Word out;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') return out;
      Word item;
      if (text_[pos_] == '(') {
        ++pos_;
        item = sequence();
        skip_space();
        if (pos_ == text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
      } else {
        item.push_back(letter());
      }
      const unsigned times = exponent();
      for (unsigned i = 0; i < times; ++i) out.insert(out.end(), item.begin(), item.end());
    }
  }

  Letter letter() {
    std::size_t best_len = 0;
    Letter best = 0;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      const std::string& name = alphabet_.names()[i];
      if (name.size() > best_len && text_.substr(pos_, name.size()) == name) {
        best_len = name.size();
        best = static_cast<Letter>(i);
      }
    }
    if (best_len == 0) fail("unknown letter");
    pos_ += best_len;
    return best;
  }

  unsigned exponent() {
    skip_space();
    if (pos_ == text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_space();
    const std::size_t begin = pos_;
    unsigned long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (value > 1000000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == begin) fail("missing exponent");
    return static_cast<unsigned>(value);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw InputError(std::string("cannot parse word '") + std::string(text_) +
                     "' at offset " + std::to_string(pos_) + ": " + what);
  }

  const Alphabet& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  return WordParser(alphabet, text).parse();
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  bool compact = true;
  for (const auto& n : alphabet.names()) compact = compact && n.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

}  // namespace loxogen
