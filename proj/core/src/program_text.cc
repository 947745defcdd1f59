// Copyright 2026 The tablesynth Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tablesynth/program_text.h"

#include <cctype>
#include <map>
#include <optional>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

Term::Surface term_surface(Surface s) {
  return s == Surface::kR ? Term::Surface::kR : Term::Surface::kDsl;
}

std::string leaf_name(const HNode& n) {
  if (n.kind == HNode::Kind::kQualified && n.qualifier->kind == Qualifier::Kind::kInput) {
    return n.qualifier->arg;
  }
  return "?" + std::to_string(n.id);
}

std::string term_text(const HNode& n, Surface s) {
  if (n.kind == HNode::Kind::kQualified && n.qualifier->term) {
    return n.qualifier->term->to_string(term_surface(s));
  }
  return "?" + std::to_string(n.id);
}

std::string name_text(const HNode& n) {
  if (n.kind == HNode::Kind::kQualified && n.qualifier->term &&
      n.qualifier->term->kind() == Term::Kind::kConst &&
      n.qualifier->term->value().is_str()) {
    return quote_name(n.qualifier->term->value().str());
  }
  return term_text(n, Surface::kDsl);
}

class Printer {
 public:
  explicit Printer(Surface s) : surface_(s) {}

  std::string run(const HNode& root) {
    std::string result = emit(root);
    if (root.kind != HNode::Kind::kComponent) return result;
    return out_;
  }

 private:
  std::string emit(const HNode& n) {
    if (n.kind != HNode::Kind::kComponent) return leaf_name(n);
    const TableComponent* c = builtin_registry().find_table(n.component);
    std::vector<std::string> args;
    for (size_t i = 0; i < n.children.size(); ++i) {
      const HNode& child = *n.children[i];
      ParamRole role = c ? c->params[i].role : ParamRole::kTable;
      switch (role) {
        case ParamRole::kTable: args.push_back(emit(child)); break;
        case ParamRole::kColumn: args.push_back(name_text(child)); break;
        case ParamRole::kColumns: args.push_back(term_text(child, surface_)); break;
        case ParamRole::kPredicate: args.push_back(term_text(child, surface_)); break;
        case ParamRole::kNewName: {
          bool binds_expr = i + 1 < n.children.size() &&
                            (c->params[i + 1].role == ParamRole::kAggregate ||
                             c->params[i + 1].role == ParamRole::kRowExpr);
          if (binds_expr) {
            args.push_back(name_text(child) + " = " +
                           term_text(*n.children[i + 1], surface_));
            ++i;
          } else {
            args.push_back(name_text(child));
          }
          break;
        }
        case ParamRole::kRowExpr:
        case ParamRole::kAggregate: args.push_back(term_text(child, surface_)); break;
      }
    }
    if (surface_ == Surface::kR) adapt_for_r(n, &args);
    std::string frame = "df" + std::to_string(++frames_);
    out_ += frame + (surface_ == Surface::kR ? " <- " : " = ") + n.component + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out_ += ", ";
      out_ += args[i];
    }
    out_ += ")\n";
    return frame;
  }

  void adapt_for_r(const HNode& n, std::vector<std::string>* args) {
    if (n.component == "unite") {
      args->push_back("sep = \"_\"");
    } else if (n.component == "separate" && args->size() == 4) {
      auto as_string = [&](size_t child) {
        const HNode& h = *n.children[child];
        if (h.kind == HNode::Kind::kQualified && h.qualifier->term &&
            h.qualifier->term->kind() == Term::Kind::kConst) {
          return quote_string(h.qualifier->term->value().render());
        }
        return (*args)[child];
      };
      std::string into = "into = c(" + as_string(2) + ", " + as_string(3) + ")";
      args->resize(2);
      args->push_back(into);
      args->push_back("sep = \"_\"");
    }
  }

  Surface surface_;
  std::string out_;
  int frames_ = 0;
};

// ---- parsing ----

struct Token {
  enum class Kind { kIdent, kName, kNumber, kString, kPunct, kNewline, kEnd };
  Kind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  size_t line_start = 0;
  size_t i = 0;
  auto col = [&](size_t at) { return static_cast<int>(at - line_start) + 1; };
  while (i < s.size()) {
    char ch = s[i];
    if (ch == '\n' || ch == ';') {
      out.push_back({Token::Kind::kNewline, "", line, col(i)});
      if (ch == '\n') {
        ++line;
        line_start = i + 1;
      }
      ++i;
    } else if (ch == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') {
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_' || s[i] == '.')) {
        ++i;
      }
      out.push_back({Token::Kind::kIdent, std::string(s.substr(start, i - start)), line,
                     col(start)});
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t start = i;
      while (i < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
        ++i;
      }
      out.push_back({Token::Kind::kNumber, std::string(s.substr(start, i - start)), line,
                     col(start)});
    } else if (ch == '`' || ch == '"') {
      size_t start = i++;
      std::string text;
      while (i < s.size() && s[i] != ch) {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        text += s[i++];
      }
      if (i >= s.size()) throw ParseError(line, col(start), "unterminated quote");
      ++i;
      out.push_back({ch == '`' ? Token::Kind::kName : Token::Kind::kString, text, line,
                     col(start)});
    } else {
      static const char* two[] = {"==", "!=", "<-", "<=", ">="};
      std::string p(1, ch);
      for (const char* t : two) {
        if (s.substr(i, 2) == t) p = t;
      }
      if (p.size() == 1 && std::string("(),=<>+-*/").find(ch) == std::string::npos) {
        throw ParseError(line, col(i), std::string("unexpected character '") + ch + "'");
      }
      out.push_back({Token::Kind::kPunct, p, line, col(i)});
      i += p.size();
    }
  }
  out.push_back({Token::Kind::kEnd, "", line, col(i)});
  return out;
}

struct Call;

// A parsed argument: a frame reference, a name, or an expression term.
struct Arg {
  std::optional<Term> term;
  std::string name;
  bool is_name = false;
  Token at;
};

struct Call {
  std::string component;
  std::vector<Arg> args;
  Token at;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<NamedTable>& inputs,
         const Registry& registry)
      : toks_(std::move(tokens)), inputs_(inputs), registry_(registry) {}

  Hypothesis run() {
    std::optional<std::string> result;
    skip_newlines();
    while (peek().kind != Token::Kind::kEnd) {
      Token name = next();
      if (name.kind != Token::Kind::kIdent && name.kind != Token::Kind::kName) {
        fail(name, "expected a frame name");
      }
      if (peek().kind == Token::Kind::kPunct && (peek().text == "=" || peek().text == "<-")) {
        next();
        frames_[name.text] = parse_call();
      } else if (peek().kind == Token::Kind::kPunct && peek().text == "(") {
        // A bare call as the final line.
        --pos_;
        frames_["$result"] = parse_call();
        name.text = "$result";
      }
      result = name.text;
      if (peek().kind != Token::Kind::kEnd) expect_newline();
      skip_newlines();
    }
    if (!result) throw ParseError(1, 1, "empty program");
    Hypothesis h = Hypothesis::initial();
    return build(h, 0, *result, toks_.front());
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::kNewline) ++pos_;
  }
  void expect_newline() {
    if (peek().kind != Token::Kind::kNewline) fail(peek(), "expected end of line");
  }
  void expect(const std::string& p) {
    if (peek().kind != Token::Kind::kPunct || peek().text != p) {
      fail(peek(), "expected '" + p + "'");
    }
    ++pos_;
  }
  bool accept(const std::string& p) {
    if (peek().kind == Token::Kind::kPunct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  Call parse_call() {
    Call call;
    call.at = peek();
    Token name = next();
    if (name.kind != Token::Kind::kIdent) fail(name, "expected a component name");
    const TableComponent* c = registry_.find_table(name.text);
    if (!c) throw Error(ErrorCode::kUnknownComponent, name.text);
    call.component = name.text;
    expect("(");
    for (size_t i = 0; i < c->params.size(); ++i) {
      const ParamSpec& p = c->params[i];
      if (i) expect(",");
      switch (p.role) {
        case ParamRole::kTable:
        case ParamRole::kColumn:
          call.args.push_back(parse_name());
          break;
        case ParamRole::kNewName: {
          call.args.push_back(parse_name());
          bool binds_expr = i + 1 < c->params.size() &&
                            (c->params[i + 1].role == ParamRole::kAggregate ||
                             c->params[i + 1].role == ParamRole::kRowExpr);
          if (binds_expr) {
            expect("=");
            ++i;
            Arg a;
            a.at = peek();
            TypeExpr param = c->params[i].role == ParamRole::kAggregate ? TypeExpr::tbl()
                                                                        : TypeExpr::row();
            a.term = Term::lambda({{param.kind() == TypeExpr::Kind::kTbl ? "g" : "row", param}},
                                  parse_expr());
            call.args.push_back(std::move(a));
          }
          break;
        }
        case ParamRole::kColumns: {
          std::vector<std::string> names{parse_name().name};
          while (i + 1 == c->params.size() && accept(",")) {
            names.push_back(parse_name().name);
          }
          Arg a;
          a.at = peek();
          a.term = Term::cols(std::move(names));
          call.args.push_back(std::move(a));
          break;
        }
        case ParamRole::kPredicate:
        case ParamRole::kRowExpr:
        case ParamRole::kAggregate: {
          Arg a;
          a.at = peek();
          TypeExpr param =
              p.role == ParamRole::kAggregate ? TypeExpr::tbl() : TypeExpr::row();
          a.term = Term::lambda({{p.role == ParamRole::kAggregate ? "g" : "row", param}},
                                parse_expr());
          call.args.push_back(std::move(a));
          break;
        }
      }
    }
    expect(")");
    return call;
  }

  Arg parse_name() {
    Arg a;
    a.at = peek();
    Token t = next();
    if (t.kind != Token::Kind::kIdent && t.kind != Token::Kind::kName &&
        t.kind != Token::Kind::kString) {
      fail(t, "expected a name");
    }
    a.name = t.text;
    a.is_name = true;
    return a;
  }

  // comparison := additive [(< > == != <= >=) additive]
  Term parse_expr() {
    Term lhs = parse_additive();
    if (peek().kind == Token::Kind::kPunct) {
      std::string op = peek().text;
      if (op == "<" || op == ">" || op == "==" || op == "!=") {
        ++pos_;
        return Term::apply(op, {lhs, parse_additive()});
      }
    }
    return lhs;
  }

  Term parse_additive() {
    Term lhs = parse_multiplicative();
    while (peek().kind == Token::Kind::kPunct && (peek().text == "+" || peek().text == "-")) {
      std::string op = next().text;
      lhs = Term::apply(op, {lhs, parse_multiplicative()});
    }
    return lhs;
  }

  Term parse_multiplicative() {
    Term lhs = parse_primary();
    while (peek().kind == Token::Kind::kPunct && (peek().text == "*" || peek().text == "/")) {
      std::string op = next().text;
      lhs = Term::apply(op, {lhs, parse_primary()});
    }
    return lhs;
  }

  Term parse_primary() {
    Token t = next();
    switch (t.kind) {
      case Token::Kind::kNumber: {
        auto n = Number::parse(t.text);
        if (!n) fail(t, "bad number");
        return Term::constant(CellValue(*n));
      }
      case Token::Kind::kString: return Term::constant(CellValue(t.text));
      case Token::Kind::kName: return Term::column(t.text);
      case Token::Kind::kIdent:
        if (accept("(")) {
          std::string fn = t.text == "n" ? "count" : t.text;
          std::vector<Term> args;
          if (!accept(")")) {
            args.push_back(parse_expr());
            while (accept(",")) args.push_back(parse_expr());
            expect(")");
          }
          if (!registry_.find_value(fn)) throw Error(ErrorCode::kUnknownComponent, fn);
          return Term::apply(fn, std::move(args));
        }
        return Term::column(t.text);
      case Token::Kind::kPunct:
        if (t.text == "(") {
          Term inner = parse_expr();
          expect(")");
          return inner;
        }
        if (t.text == "-" && peek().kind == Token::Kind::kNumber) {
          auto n = Number::parse("-" + next().text);
          if (!n) fail(t, "bad number");
          return Term::constant(CellValue(*n));
        }
        break;
      default: break;
    }
    fail(t, "unexpected token");
  }

  Hypothesis build(Hypothesis h, int hole, const std::string& ref, const Token& at) {
    for (const NamedTable& in : inputs_) {
      if (in.name == ref) return h.bind(hole, Qualifier::input(in.name, in.table));
    }
    auto it = frames_.find(ref);
    if (it == frames_.end()) {
      throw Error(ErrorCode::kUnknownColumn,
                  "undefined frame '" + ref + "' at " + std::to_string(at.line) + ":" +
                      std::to_string(at.column));
    }
    const Call& call = it->second;
    h = h.refine(hole, call.component, registry_);
    std::vector<int> kids;
    for (const HNodePtr& c : h.find(hole)->children) kids.push_back(c->id);
    const TableComponent* c = registry_.find_table(call.component);
    for (size_t i = 0; i < kids.size(); ++i) {
      const Arg& a = call.args[i];
      if (c->params[i].role == ParamRole::kTable) {
        h = build(h, kids[i], a.name, a.at);
      } else if (a.is_name) {
        h = h.bind(kids[i], Qualifier::of_term(Term::constant(CellValue(a.name))));
      } else {
        h = h.bind(kids[i], Qualifier::of_term(*a.term));
      }
    }
    return h;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const std::vector<NamedTable>& inputs_;
  const Registry& registry_;
  std::map<std::string, Call> frames_;
};

}  // namespace

std::string print_program(const Hypothesis& h, Surface surface) {
  Printer p(surface);
  std::string text = p.run(h.root());
  if (h.root().kind != HNode::Kind::kComponent) return text + "\n";
  return text;
}

Hypothesis parse_program(std::string_view text, const std::vector<NamedTable>& inputs,
                         const Registry& registry) {
  Parser p(tokenize(text), inputs, registry);
  return p.run();
}

}  // namespace tablesynth
