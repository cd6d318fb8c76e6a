// Recursive-descent parser for EdgeProg sources. The grammar is documented in
// README.md; keywords are case-sensitive and `//` starts a line comment.

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "edgeprog/dsl/parser.hpp"

namespace edgeprog::dsl {

std::vector<Diagnostic> check_structure(const ProgramAst& ast);  // validate.cpp

namespace {

enum class Tok {
  Ident,
  String,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Comma,
  Dot,
  At,
  Minus,
  Lt,
  Gt,
  Le,
  Ge,
  EqEq,
  NotEq,
  AndAnd,
  OrOr,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string literal";
    case Tok::Number: return "number";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::At: return "'@'";
    case Tok::Minus: return "'-'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Le: return "'<='";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

// Internal unwinding signal; converted to ProgramError at the API boundary.
struct SyntaxFailure {
  Diagnostic diag;
};

[[noreturn]] void fail(SourceLoc loc, std::string message) {
  throw SyntaxFailure{Diagnostic{Severity::Error, DiagCode::SyntaxError, std::move(message), loc}};
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = lex_string(t.loc);
      } else {
        t.kind = lex_punct(t.loc);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string lex_string(SourceLoc start) {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail(start, "unterminated string literal");
      char c = src_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail(start, "unterminated string literal");
        char e = src_[pos_];
        if (e == 'n') {
          out += '\n';
        } else if (e == 't') {
          out += '\t';
        } else {
          out += e;
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  Tok lex_punct(SourceLoc loc) {
    char c = src_[pos_];
    char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto two = [&](Tok t) {
      advance();
      advance();
      return t;
    };
    auto one = [&](Tok t) {
      advance();
      return t;
    };
    switch (c) {
      case '{': return one(Tok::LBrace);
      case '}': return one(Tok::RBrace);
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case ';': return one(Tok::Semi);
      case ',': return one(Tok::Comma);
      case '.': return one(Tok::Dot);
      case '@': return one(Tok::At);
      case '-': return one(Tok::Minus);
      case '<': return n == '=' ? two(Tok::Le) : one(Tok::Lt);
      case '>': return n == '=' ? two(Tok::Ge) : one(Tok::Gt);
      case '=':
        if (n == '=') return two(Tok::EqEq);
        break;
      case '!':
        if (n == '=') return two(Tok::NotEq);
        break;
      case '&':
        if (n == '&') return two(Tok::AndAnd);
        break;
      case '|':
        if (n == '|') return two(Tok::OrOr);
        break;
      default:
        break;
    }
    fail(loc, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProgramAst program() {
    ProgramAst ast;
    keyword("Application");
    ast.name = expect(Tok::Ident, "application name").text;
    expect(Tok::LBrace, "'{'");
    keyword("Configuration");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) ast.devices.push_back(device());
    expect(Tok::RBrace, "'}'");
    if (at_keyword("Implementation")) {
      next();
      expect(Tok::LBrace, "'{'");
      while (!at(Tok::RBrace)) ast.vsensors.push_back(vsensor());
      expect(Tok::RBrace, "'}'");
    }
    rule_loc_ = peek().loc;
    if (at(Tok::RBrace)) {
      // No Rule section at all; parse_program reports MissingRule.
    } else {
      keyword("Rule");
      expect(Tok::LBrace, "'{'");
      while (!at(Tok::RBrace)) ast.rules.push_back(rule());
      expect(Tok::RBrace, "'}'");
    }
    expect(Tok::RBrace, "'}' closing the application");
    expect(Tok::End, "end of input");
    return ast;
  }

  SourceLoc rule_loc() const { return rule_loc_; }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void unexpected(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::Ident || t.kind == Tok::Number
                            ? "'" + t.text + "'"
                            : std::string(describe(t.kind));
    fail(t.loc, "expected " + expected + ", found " + found);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) unexpected(what);
    return next();
  }

  void keyword(const char* kw) {
    if (!at_keyword(kw)) unexpected(std::string("'") + kw + "'");
    next();
  }

  DeviceDecl device() {
    DeviceDecl d;
    Token platform = expect(Tok::Ident, "device platform");
    d.loc = platform.loc;
    d.platform_name = platform.text;
    d.platform = platform_from_name(platform.text);
    d.alias = expect(Tok::Ident, "device alias").text;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      d.interfaces.push_back(expect(Tok::Ident, "interface name").text);
      while (at(Tok::Comma)) {
        next();
        d.interfaces.push_back(expect(Tok::Ident, "interface name").text);
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    return d;
  }

  // "FE, ID" or "{FCV1_1, FCV1_2}, SUMV1"
  static std::vector<std::vector<std::string>> stage_groups(const std::string& spec,
                                                            SourceLoc loc) {
    std::vector<std::vector<std::string>> groups;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
    };
    auto name = [&]() {
      skip();
      std::size_t start = i;
      while (i < spec.size() &&
             (std::isalnum(static_cast<unsigned char>(spec[i])) || spec[i] == '_')) {
        ++i;
      }
      if (start == i || std::isdigit(static_cast<unsigned char>(spec[start]))) {
        fail(loc, "malformed stage list \"" + spec + "\": expected stage name");
      }
      return spec.substr(start, i - start);
    };
    for (;;) {
      skip();
      std::vector<std::string> group;
      if (i < spec.size() && spec[i] == '{') {
        ++i;
        group.push_back(name());
        skip();
        while (i < spec.size() && spec[i] == ',') {
          ++i;
          group.push_back(name());
          skip();
        }
        if (i >= spec.size() || spec[i] != '}') {
          fail(loc, "malformed stage list \"" + spec + "\": expected '}'");
        }
        ++i;
      } else {
        group.push_back(name());
      }
      groups.push_back(std::move(group));
      skip();
      if (i == spec.size()) break;
      if (spec[i] != ',') fail(loc, "malformed stage list \"" + spec + "\": expected ','");
      ++i;
    }
    return groups;
  }

  Ref ref() {
    Ref r;
    Token head = expect(Tok::Ident, "interface or virtual sensor");
    r.loc = head.loc;
    if (at(Tok::Dot)) {
      next();
      r.device = head.text;
      r.name = expect(Tok::Ident, "interface name").text;
    } else {
      r.name = head.text;
    }
    return r;
  }

  Literal literal() {
    Literal lit;
    if (at(Tok::String)) {
      lit.kind = Literal::Kind::String;
      lit.text = next().text;
      return lit;
    }
    lit.kind = Literal::Kind::Number;
    if (at(Tok::Minus)) {
      next();
      lit.text = "-" + expect(Tok::Number, "number").text;
      return lit;
    }
    if (at(Tok::Ident)) {
      fail(peek().loc,
           "comparison between two live values is not supported; the right-hand side must be "
           "a literal");
    }
    lit.text = expect(Tok::Number, "literal").text;
    return lit;
  }

  VSensorDecl vsensor() {
    VSensorDecl v;
    v.loc = peek().loc;
    keyword("VSensor");
    v.name = expect(Tok::Ident, "virtual sensor name").text;
    expect(Tok::LParen, "'('");
    if (at_keyword("AUTO")) {
      next();
      v.auto_infer = true;
    } else {
      Token spec = expect(Tok::String, "stage list string or AUTO");
      v.groups = stage_groups(spec.text, spec.loc);
      for (const auto& g : v.groups) {
        for (const auto& s : g) v.stages.push_back(StageDecl{s, {}, {}, spec.loc});
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    bool have_input = false;
    bool have_output = false;
    while (!at(Tok::RBrace)) {
      Token recv = expect(Tok::Ident, "statement");
      expect(Tok::Dot, "'.'");
      Token method = expect(Tok::Ident, "setInput, setModel or setOutput");
      expect(Tok::LParen, "'('");
      if (method.text == "setInput" || method.text == "setOutput") {
        if (recv.text != v.name) {
          pending_.push_back({Severity::Error, DiagCode::UnknownReference,
                              method.text + " must be called on '" + v.name + "', not '" +
                                  recv.text + "'",
                              recv.loc});
        }
      }
      if (method.text == "setInput") {
        if (have_input) {
          pending_.push_back({Severity::Error, DiagCode::DuplicateName,
                              "duplicate setInput for '" + v.name + "'", recv.loc});
        }
        have_input = true;
        v.inputs.push_back(ref());
        while (at(Tok::Comma)) {
          next();
          v.inputs.push_back(ref());
        }
      } else if (method.text == "setModel") {
        std::string model = expect(Tok::String, "model name").text;
        std::vector<std::string> args;
        while (at(Tok::Comma)) {
          next();
          args.push_back(expect(Tok::String, "model argument string").text);
        }
        auto it = std::find_if(v.stages.begin(), v.stages.end(),
                               [&](const StageDecl& s) { return s.name == recv.text; });
        if (it == v.stages.end()) {
          pending_.push_back({Severity::Error, DiagCode::UnknownReference,
                              "'" + recv.text + "' is not a stage of '" + v.name + "'",
                              recv.loc});
        } else if (!it->model.empty()) {
          pending_.push_back({Severity::Error, DiagCode::DuplicateName,
                              "stage '" + recv.text + "' already has a model", recv.loc});
        } else {
          it->model = std::move(model);
          it->model_args = std::move(args);
          it->loc = recv.loc;
        }
      } else if (method.text == "setOutput") {
        if (have_output) {
          pending_.push_back({Severity::Error, DiagCode::DuplicateName,
                              "duplicate setOutput for '" + v.name + "'", recv.loc});
        }
        have_output = true;
        expect(Tok::Lt, "'<' output type");
        v.output_type = expect(Tok::Ident, "output type").text;
        expect(Tok::Gt, "'>'");
        while (at(Tok::Comma)) {
          next();
          if (!at(Tok::String) && !at(Tok::Number) && !at(Tok::Minus)) {
            unexpected("expected output value");
          }
          v.expected_values.push_back(literal());
        }
      } else {
        fail(method.loc, "unknown virtual sensor method '" + method.text + "'");
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Semi, "';'");
    }
    expect(Tok::RBrace, "'}'");
    return v;
  }

  CondExpr or_expr() {
    CondExpr first = and_expr();
    if (!at(Tok::OrOr)) return first;
    CondExpr node;
    node.kind = CondExpr::Kind::Or;
    node.children.push_back(std::move(first));
    while (at(Tok::OrOr)) {
      next();
      node.children.push_back(and_expr());
    }
    return node;
  }

  CondExpr and_expr() {
    CondExpr first = primary();
    if (!at(Tok::AndAnd)) return first;
    CondExpr node;
    node.kind = CondExpr::Kind::And;
    node.children.push_back(std::move(first));
    while (at(Tok::AndAnd)) {
      next();
      node.children.push_back(primary());
    }
    return node;
  }

  CondExpr primary() {
    if (at(Tok::LParen)) {
      next();
      CondExpr inner = or_expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    CondExpr leaf;
    leaf.kind = CondExpr::Kind::Compare;
    leaf.cmp.loc = peek().loc;
    leaf.cmp.subject = ref();
    switch (peek().kind) {
      case Tok::EqEq: leaf.cmp.op = CmpOp::Eq; break;
      case Tok::NotEq: leaf.cmp.op = CmpOp::Ne; break;
      case Tok::Lt: leaf.cmp.op = CmpOp::Lt; break;
      case Tok::Gt: leaf.cmp.op = CmpOp::Gt; break;
      case Tok::Le: leaf.cmp.op = CmpOp::Le; break;
      case Tok::Ge: leaf.cmp.op = CmpOp::Ge; break;
      default: unexpected("comparison operator");
    }
    next();
    leaf.cmp.value = literal();
    return leaf;
  }

  ActionRef action() {
    ActionRef a;
    Token dev = expect(Tok::Ident, "device alias");
    a.loc = dev.loc;
    a.device = dev.text;
    expect(Tok::Dot, "'.'");
    a.action = expect(Tok::Ident, "action name").text;
    if (at(Tok::LParen)) {
      next();
      if (!at(Tok::RParen)) {
        a.args.push_back(expect(Tok::String, "action argument string").text);
        while (at(Tok::Comma)) {
          next();
          a.args.push_back(expect(Tok::String, "action argument string").text);
        }
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  RuleDecl rule() {
    RuleDecl r;
    r.loc = peek().loc;
    if (at(Tok::At)) {
      next();
      Token ann = expect(Tok::Ident, "annotation name");
      if (ann.text != "interval") fail(ann.loc, "unknown rule annotation '" + ann.text + "'");
      expect(Tok::LParen, "'('");
      Token ms = expect(Tok::Number, "interval in milliseconds");
      if (ms.text.find('.') != std::string::npos) {
        fail(ms.loc, "interval must be an integer number of milliseconds");
      }
      r.interval_ms = std::stoll(ms.text);
      if (*r.interval_ms <= 0) fail(ms.loc, "interval must be positive");
      expect(Tok::RParen, "')'");
    }
    keyword("IF");
    expect(Tok::LParen, "'('");
    r.condition = or_expr();
    expect(Tok::RParen, "')'");
    keyword("THEN");
    expect(Tok::LParen, "'('");
    r.actions.push_back(action());
    while (at(Tok::AndAnd)) {
      next();
      r.actions.push_back(action());
    }
    expect(Tok::RParen, "')'");
    if (at(Tok::Semi)) next();
    return r;
  }

 public:
  std::vector<Diagnostic> pending_;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceLoc rule_loc_;
};

}  // namespace

ProgramAst parse_program(std::string_view source) {
  ProgramAst ast;
  std::vector<Diagnostic> diags;
  try {
    Parser p(Lexer(source).run());
    ast = p.program();
    diags = std::move(p.pending_);
    if (ast.rules.empty()) {
      diags.push_back({Severity::Error, DiagCode::MissingRule, "Rule section has no rules",
                       p.rule_loc()});
    }
  } catch (const SyntaxFailure& f) {
    throw ProgramError({f.diag});
  }
  for (auto& d : check_structure(ast)) {
    if (d.code == DiagCode::MissingRule) continue;  // reported above with a location
    diags.push_back(std::move(d));
  }
  std::erase_if(diags, [](const Diagnostic& d) { return d.severity != Severity::Error; });
  if (!diags.empty()) throw ProgramError(std::move(diags));
  return ast;
}

}  // namespace edgeprog::dsl
