#include "aliascalc/parse.hpp"

#include <cctype>
#include <sstream>

namespace aliascalc {

std::string Diagnostic::render() const {
  std::ostringstream os;
  os << span.line << ":" << span.col << ": " << code << ": " << message;
  return os.str();
}

namespace {

enum class Tok {
  Ident,
  KwClass,
  KwAttr,
  KwFn,
  KwLocal,
  KwProgram,
  KwCreate,
  KwForget,
  KwIf,
  KwThen,
  KwElse,
  KwLoop,
  KwCall,
  KwCurrent,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Colon,
  Assign,  // :=
  Semi,
  Comma,
  Dot,
  End,
  Error,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::KwClass: return "'class'";
    case Tok::KwAttr: return "'attr'";
    case Tok::KwFn: return "'fn'";
    case Tok::KwLocal: return "'local'";
    case Tok::KwProgram: return "'program'";
    case Tok::KwCreate: return "'create'";
    case Tok::KwForget: return "'forget'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwLoop: return "'loop'";
    case Tok::KwCall: return "'call'";
    case Tok::KwCurrent: return "'Current'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
    case Tok::Error: return "invalid character";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  const Token& peek2() {
    if (!next_) next_ = scan();
    return *next_;
  }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    if (next_) {
      tok_ = *next_;
      next_.reset();
    } else {
      tok_ = scan();
    }
  }

  Token scan() {
    skip_ws();
    SourceSpan at{line_, col_};
    if (pos_ >= text_.size()) return {Tok::End, "", at};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        id += take_char();
      static const std::pair<const char*, Tok> keywords[] = {
          {"class", Tok::KwClass},   {"attr", Tok::KwAttr},     {"fn", Tok::KwFn},
          {"local", Tok::KwLocal},   {"program", Tok::KwProgram}, {"create", Tok::KwCreate},
          {"forget", Tok::KwForget}, {"if", Tok::KwIf},         {"then", Tok::KwThen},
          {"else", Tok::KwElse},     {"loop", Tok::KwLoop},     {"call", Tok::KwCall},
          {"Current", Tok::KwCurrent}};
      for (const auto& [kw, tk] : keywords)
        if (id == kw) return {tk, id, at};
      return {Tok::Ident, id, at};
    }
    switch (c) {
      case '{': take_char(); return {Tok::LBrace, "{", at};
      case '}': take_char(); return {Tok::RBrace, "}", at};
      case '(': take_char(); return {Tok::LParen, "(", at};
      case ')': take_char(); return {Tok::RParen, ")", at};
      case ';': take_char(); return {Tok::Semi, ";", at};
      case ',': take_char(); return {Tok::Comma, ",", at};
      case '.': take_char(); return {Tok::Dot, ".", at};
      case ':':
        take_char();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          take_char();
          return {Tok::Assign, ":=", at};
        }
        return {Tok::Colon, ":", at};
      default:
        take_char();
        return {Tok::Error, std::string(1, c), at};
    }
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take_char();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take_char();
      } else {
        break;
      }
    }
  }

  char take_char() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
  std::optional<Token> next_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ParseResult run() {
    Program p;
    while (at(Tok::KwClass)) parse_class(p);
    while (at(Tok::KwFn)) parse_function(p);
    expect(Tok::KwProgram);
    expect(Tok::LBrace);
    parse_locals(p.entry_env, p.entry_local_order, "program block");
    p.main = parse_stmts();
    expect(Tok::RBrace);
    if (!at(Tok::End)) error_here("expected end of input");

    ParseResult out;
    out.diagnostics = std::move(diags_);
    if (!failed_) out.program = std::move(p);
    return out;
  }

 private:
  bool at(Tok t) const { return lex_.peek().kind == t; }

  Token expect(Tok t) {
    if (failed_) return {t, "", {}};
    if (!at(t)) {
      std::ostringstream os;
      os << "expected " << tok_name(t) << ", found " << tok_name(lex_.peek().kind);
      error_here(os.str());
      return {t, "", lex_.peek().span};
    }
    return lex_.take();
  }

  void error_here(const std::string& msg) {
    if (failed_) return;
    failed_ = true;
    diags_.push_back({"syntax", msg, lex_.peek().span});
  }

  void duplicate(const std::string& what, const std::string& name, SourceSpan span) {
    diags_.push_back({"duplicate-declaration", "duplicate " + what + " '" + name + "'", span});
  }

  void parse_class(Program& p) {
    expect(Tok::KwClass);
    Token name = expect(Tok::Ident);
    expect(Tok::LBrace);
    std::map<std::string, std::string> attrs;
    while (at(Tok::KwAttr) && !failed_) {
      lex_.take();
      Token attr = expect(Tok::Ident);
      expect(Tok::Colon);
      Token type = expect(Tok::Ident);
      expect(Tok::Semi);
      if (failed_) return;
      if (!attrs.emplace(attr.text, type.text).second)
        duplicate("attribute", attr.text, attr.span);
    }
    expect(Tok::RBrace);
    if (failed_) return;
    if (!p.class_table.classes.emplace(name.text, std::move(attrs)).second)
      duplicate("class", name.text, name.span);
  }

  void parse_function(Program& p) {
    expect(Tok::KwFn);
    Token name = expect(Tok::Ident);
    FunctionDef fn;
    fn.name = name.text;
    fn.span = name.span;
    expect(Tok::LParen);
    if (at(Tok::Ident)) {
      fn.formals.push_back(lex_.take().text);
      while (at(Tok::Comma)) {
        lex_.take();
        fn.formals.push_back(expect(Tok::Ident).text);
      }
    }
    expect(Tok::RParen);
    expect(Tok::LBrace);
    parse_locals(fn.locals, fn.local_order, "function " + fn.name);
    fn.body = parse_stmts();
    expect(Tok::RBrace);
    if (failed_) return;
    for (std::size_t i = 0; i < fn.formals.size(); ++i)
      for (std::size_t j = i + 1; j < fn.formals.size(); ++j)
        if (fn.formals[i] == fn.formals[j]) duplicate("formal", fn.formals[i], fn.span);
    if (!p.functions.emplace(fn.name, fn).second) {
      duplicate("function", fn.name, name.span);
      return;
    }
    p.function_order.push_back(fn.name);
  }

  void parse_locals(VarEnv& env, std::vector<std::string>& order, const std::string&) {
    while (at(Tok::KwLocal) && !failed_) {
      lex_.take();
      Token var = expect(Tok::Ident);
      expect(Tok::Colon);
      Token type = expect(Tok::Ident);
      expect(Tok::Semi);
      if (failed_) return;
      if (!env.vars.emplace(var.text, type.text).second)
        duplicate("local", var.text, var.span);
      else
        order.push_back(var.text);
    }
  }

  InstrPtr parse_stmts() {
    std::vector<InstrPtr> stmts;
    while (!failed_ && !at(Tok::RBrace) && !at(Tok::End)) stmts.push_back(parse_stmt());
    if (stmts.empty()) return make_skip();
    InstrPtr out = stmts.back();
    for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) out = make_seq(*it, out);
    return out;
  }

  InstrPtr parse_stmt() {
    SourceSpan span = lex_.peek().span;
    switch (lex_.peek().kind) {
      case Tok::KwCreate: {
        lex_.take();
        Token var = expect(Tok::Ident);
        expect(Tok::Semi);
        return make_create(var.text, span);
      }
      case Tok::KwForget: {
        lex_.take();
        Token var = expect(Tok::Ident);
        expect(Tok::Semi);
        return make_forget(var.text, span);
      }
      case Tok::KwIf: {
        lex_.take();
        expect(Tok::KwThen);
        expect(Tok::LBrace);
        InstrPtr then_branch = parse_stmts();
        expect(Tok::RBrace);
        expect(Tok::KwElse);
        expect(Tok::LBrace);
        InstrPtr else_branch = parse_stmts();
        expect(Tok::RBrace);
        return make_if(then_branch, else_branch, span);
      }
      case Tok::KwLoop: {
        lex_.take();
        expect(Tok::LBrace);
        InstrPtr body = parse_stmts();
        expect(Tok::RBrace);
        return make_loop(body, span);
      }
      case Tok::KwCall: {
        lex_.take();
        Token fname = expect(Tok::Ident);
        std::vector<Path> actuals = parse_actuals();
        expect(Tok::Semi);
        return make_call(fname.text, std::move(actuals), span);
      }
      case Tok::KwCurrent:
      case Tok::Ident: {
        Path p = parse_path();
        if (at(Tok::Assign)) {
          lex_.take();
          Path rhs = parse_path();
          expect(Tok::Semi);
          return make_assign(std::move(p), std::move(rhs), span);
        }
        if (at(Tok::Dot)) {
          lex_.take();
          expect(Tok::KwCall);
          Token fname = expect(Tok::Ident);
          std::vector<Path> actuals = parse_actuals();
          expect(Tok::Semi);
          return make_qualified_call(std::move(p), fname.text, std::move(actuals), span);
        }
        error_here("expected ':=' or '.call' after path");
        return make_skip();
      }
      default:
        error_here("expected a statement");
        return make_skip();
    }
  }

  std::vector<Path> parse_actuals() {
    std::vector<Path> out;
    expect(Tok::LParen);
    if (at(Tok::Ident) || at(Tok::KwCurrent)) {
      out.push_back(parse_path());
      while (at(Tok::Comma)) {
        lex_.take();
        out.push_back(parse_path());
      }
    }
    expect(Tok::RParen);
    return out;
  }

  Path parse_path() {
    std::vector<Segment> segs;
    if (at(Tok::KwCurrent)) {
      lex_.take();
    } else {
      segs.push_back(Segment::atom(expect(Tok::Ident).text));
    }
    // Stop before ".call": that dot belongs to a qualified call statement.
    while (at(Tok::Dot) && lex_.peek2().kind == Tok::Ident) {
      lex_.take();
      segs.push_back(Segment::atom(expect(Tok::Ident).text));
    }
    return Path(std::move(segs));
  }

  Lexer lex_;
  std::vector<Diagnostic> diags_;
  bool failed_ = false;
};

}  // namespace

ParseResult parse(const std::string& text) { return Parser(text).run(); }

std::optional<Path> parse_path(const std::string& text) {
  std::vector<Segment> segs;
  std::size_t pos = 0;
  auto ident = [&]() -> std::optional<std::string> {
    std::string id;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      id += text[pos++];
    if (id.empty()) return std::nullopt;
    return id;
  };
  auto first = ident();
  if (!first) return std::nullopt;
  if (*first != "Current") segs.push_back(Segment::atom(*first));
  while (pos < text.size() && text[pos] == '.') {
    ++pos;
    auto step = ident();
    if (!step || *step == "Current") return std::nullopt;
    segs.push_back(Segment::atom(*step));
  }
  if (pos != text.size()) return std::nullopt;
  return Path(std::move(segs));
}

}  // namespace aliascalc
