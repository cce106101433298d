#include "adl/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>

namespace adl {

ParseError::ParseError(std::string message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error([&] {
        std::string what = "parse error at offset " + std::to_string(offset) +
                           ": " + message;
        if (!expected.empty()) {
          what += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) what += i + 1 == expected.size() ? " or " : ", ";
            what += expected[i];
          }
          what += ')';
        }
        return what;
      }()),
      message_(std::move(message)),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  Always,
  Never,
  Given,
  Exists,
  Not,       // !
  And,       // &
  Or,        // |
  Arrow,     // ->
  Question,  // ?
  Colon,     // :
  LParen,
  RParen,
  LBracket,
  RBracket,
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Always: return "'always'";
    case Tok::Never: return "'never'";
    case Tok::Given: return "'given'";
    case Tok::Exists: return "'exists'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Question: return "'?'";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
  }
  return "token";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && ident_char(src_[end])) ++end;
      t.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      if (t.text == "always") t.kind = Tok::Always;
      else if (t.text == "never") t.kind = Tok::Never;
      else if (t.text == "given") t.kind = Tok::Given;
      else if (t.text == "exists") t.kind = Tok::Exists;
      else t.kind = Tok::Ident;
      return t;
    }
    if (digit(c) || c == '.') {
      std::size_t end = pos_;
      while (end < src_.size() && digit(src_[end])) ++end;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        const std::size_t frac = end;
        while (end < src_.size() && digit(src_[end])) ++end;
        if (end == frac) {
          throw ParseError("malformed number", pos_, {"digit"});
        }
      }
      t.kind = Tok::Number;
      t.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return t;
    }
    auto single = [&](Tok kind) {
      t.kind = kind;
      t.text = src_.substr(pos_, 1);
      ++pos_;
      return t;
    };
    switch (c) {
      case '!': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '?': return single(Tok::Question);
      case ':': return single(Tok::Colon);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          t.kind = Tok::Arrow;
          t.text = src_.substr(pos_, 2);
          pos_ += 2;
          return t;
        }
        break;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Nesting beyond this is rejected instead of risking the native stack.
constexpr int kMaxDepth = 512;

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Formula parse_all() {
    Formula f = expr();
    if (cur_.kind != Tok::End) fail({describe(Tok::End)});
    return f;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) {
        throw ParseError("expression nested too deeply", p.cur_.offset);
      }
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = cur_.kind == Tok::End
                            ? "end of input"
                            : "'" + std::string(cur_.text) + "'";
    throw ParseError("unexpected " + found, cur_.offset, std::move(expected));
  }

  void expect(Tok kind) {
    if (cur_.kind != kind) fail({describe(kind)});
    advance();
  }

  std::string identifier() {
    if (cur_.kind != Tok::Ident) fail({describe(Tok::Ident)});
    std::string name(cur_.text);
    advance();
    return name;
  }

  Formula expr() {
    DepthGuard guard(*this);
    Formula lhs = disjunct();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return implication(std::move(lhs), expr());
    }
    return lhs;
  }

  Formula disjunct() {
    Formula lhs = conjunct();
    while (cur_.kind == Tok::Or) {
      advance();
      lhs = disjunction(std::move(lhs), conjunct());
    }
    return lhs;
  }

  Formula conjunct() {
    Formula lhs = unary();
    while (cur_.kind == Tok::And) {
      advance();
      lhs = conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    DepthGuard guard(*this);
    if (cur_.kind == Tok::Not) {
      advance();
      return negation(unary());
    }
    return primary();
  }

  Formula number() {
    const Token t = cur_;
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("malformed number", t.offset);
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ParseError("probability " + std::string(t.text) +
                           " outside [0, 1]",
                       t.offset);
    }
    advance();
    return Formula::prob(value);
  }

  Formula primary() {
    switch (cur_.kind) {
      case Tok::Always:
        advance();
        return Formula::always();
      case Tok::Never:
        advance();
        return Formula::never();
      case Tok::Number:
        return number();
      case Tok::Ident: {
        std::string name = identifier();
        return Formula::atom(std::move(name));
      }
      case Tok::Exists: {
        advance();
        expect(Tok::LParen);
        std::string role = identifier();
        expect(Tok::RParen);
        return Formula::exists(std::move(role));
      }
      case Tok::LBracket: {
        advance();
        std::string role = identifier();
        expect(Tok::RBracket);
        expect(Tok::LParen);
        Formula body = expr();
        Formula condition = Formula::always();
        if (cur_.kind == Tok::Given) {
          advance();
          condition = expr();
        } else if (cur_.kind != Tok::RParen) {
          fail({describe(Tok::Given), describe(Tok::RParen)});
        }
        expect(Tok::RParen);
        return Formula::expectation(std::move(role), std::move(body),
                                    std::move(condition));
      }
      case Tok::LParen: {
        advance();
        Formula inner = expr();
        if (cur_.kind == Tok::Question) {
          advance();
          Formula if_yes = expr();
          expect(Tok::Colon);
          Formula if_no = expr();
          expect(Tok::RParen);
          return Formula::conditional(std::move(inner), std::move(if_yes),
                                      std::move(if_no));
        }
        if (cur_.kind != Tok::RParen) {
          fail({describe(Tok::Question), describe(Tok::RParen)});
        }
        advance();
        return inner;
      }
      default:
        fail({"formula"});
    }
  }

  Lexer lexer_;
  Token cur_;
  int depth_ = 0;
};

}  // namespace

Formula parse(std::string_view input) { return Parser(input).parse_all(); }

}  // namespace adl
