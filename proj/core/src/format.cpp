#include "lcs/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace lcs {

namespace {

struct Token {
  enum class Type {
    kIdent,
    kLBrace,
    kRBrace,
    kLBracket,
    kRBracket,
    kEquals,
    kComma,
    kArrow,
    kColon,
    kBang,
    kQuery,
    kEnd,
  };
  Type type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    int line = line_, col = column_;
    if (pos_ >= text_.size()) return {Token::Type::kEnd, "", line, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ident += take();
      return {Token::Type::kIdent, ident, line, col};
    }
    switch (c) {
      case '{': take(); return {Token::Type::kLBrace, "{", line, col};
      case '}': take(); return {Token::Type::kRBrace, "}", line, col};
      case '[': take(); return {Token::Type::kLBracket, "[", line, col};
      case ']': take(); return {Token::Type::kRBracket, "]", line, col};
      case '=': take(); return {Token::Type::kEquals, "=", line, col};
      case ',': take(); return {Token::Type::kComma, ",", line, col};
      case ':': take(); return {Token::Type::kColon, ":", line, col};
      case '!': take(); return {Token::Type::kBang, "!", line, col};
      case '?': take(); return {Token::Type::kQuery, "?", line, col};
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          take();
          take();
          return {Token::Type::kArrow, "->", line, col};
        }
        break;
      default:
        break;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct RawOp {
  // kind mirrors MemOp::Kind; symbol name unresolved.
  MemOp::Kind kind;
  std::string symbol;
};

struct RawTransition {
  std::string src, dst;
  RawOp op;
  int line, column;
};

struct RawBlock {
  std::optional<std::vector<std::string>> states;
  std::optional<std::string> init;
  std::optional<std::vector<std::string>> final_states;
  std::vector<RawTransition> transitions;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  System parse() {
    expect_ident("system");
    expect(Token::Type::kLBrace);
    expect_ident("domain");
    expect(Token::Type::kEquals);
    std::vector<std::string> domain = parse_name_list();
    expect_ident("init");
    expect(Token::Type::kEquals);
    std::string init_symbol = expect_name();
    expect_ident("leader");
    RawBlock leader = parse_block(/*allow_final=*/true, "leader");
    expect_ident("contributor");
    RawBlock contributor = parse_block(/*allow_final=*/false, "contributor");
    expect(Token::Type::kRBrace);
    expect(Token::Type::kEnd);
    return resolve(domain, init_symbol, leader, contributor);
  }

 private:
  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(current_.line, current_.column, msg);
  }

  Token expect(Token::Type type) {
    if (current_.type != type) fail("expected " + describe(type));
    Token t = current_;
    advance();
    return t;
  }

  void expect_ident(const std::string& word) {
    if (current_.type != Token::Type::kIdent || current_.text != word)
      fail("expected '" + word + "'");
    advance();
  }

  // An identifier usable as a state or symbol name.
  std::string expect_name() {
    if (current_.type != Token::Type::kIdent) fail("expected identifier");
    if (is_reserved_name(current_.text))
      fail("'" + current_.text + "' is reserved and cannot name a state or symbol");
    std::string name = current_.text;
    advance();
    return name;
  }

  std::vector<std::string> parse_name_list() {
    expect(Token::Type::kLBracket);
    std::vector<std::string> names;
    if (current_.type != Token::Type::kRBracket) {
      names.push_back(expect_name());
      while (current_.type == Token::Type::kComma) {
        advance();
        names.push_back(expect_name());
      }
    }
    expect(Token::Type::kRBracket);
    return names;
  }

  RawOp parse_op() {
    if (current_.type == Token::Type::kBang) {
      advance();
      return {MemOp::Kind::kWrite, expect_name()};
    }
    if (current_.type == Token::Type::kQuery) {
      advance();
      return {MemOp::Kind::kRead, expect_name()};
    }
    if (current_.type == Token::Type::kIdent && current_.text == "eps") {
      advance();
      return {MemOp::Kind::kEpsilon, ""};
    }
    fail("expected operation (!sym, ?sym, or eps)");
  }

  RawBlock parse_block(bool allow_final, const std::string& who) {
    expect(Token::Type::kLBrace);
    RawBlock block;
    while (current_.type != Token::Type::kRBrace) {
      if (current_.type != Token::Type::kIdent) fail("expected '}' or block entry");
      if (current_.text == "states") {
        if (block.states) fail("duplicate 'states' in " + who);
        advance();
        expect(Token::Type::kEquals);
        block.states = parse_name_list();
      } else if (current_.text == "init") {
        if (block.init) fail("duplicate 'init' in " + who);
        advance();
        expect(Token::Type::kEquals);
        block.init = expect_name();
      } else if (current_.text == "final") {
        if (!allow_final) fail("'final' is only allowed in the leader block");
        if (block.final_states) fail("duplicate 'final' in " + who);
        advance();
        expect(Token::Type::kEquals);
        block.final_states = parse_name_list();
      } else {
        int line = current_.line, col = current_.column;
        std::string src = expect_name();
        expect(Token::Type::kArrow);
        std::string dst = expect_name();
        expect(Token::Type::kColon);
        RawOp op = parse_op();
        block.transitions.push_back({src, dst, op, line, col});
      }
    }
    expect(Token::Type::kRBrace);
    return block;
  }

  static std::string describe(Token::Type type) {
    switch (type) {
      case Token::Type::kIdent: return "identifier";
      case Token::Type::kLBrace: return "'{'";
      case Token::Type::kRBrace: return "'}'";
      case Token::Type::kLBracket: return "'['";
      case Token::Type::kRBracket: return "']'";
      case Token::Type::kEquals: return "'='";
      case Token::Type::kComma: return "','";
      case Token::Type::kArrow: return "'->'";
      case Token::Type::kColon: return "':'";
      case Token::Type::kBang: return "'!'";
      case Token::Type::kQuery: return "'?'";
      case Token::Type::kEnd: return "end of input";
    }
    return "?";
  }

  System resolve(const std::vector<std::string>& domain,
                 const std::string& init_symbol, const RawBlock& leader,
                 const RawBlock& contributor) {
    if (domain.empty()) throw SemanticError("empty domain");
    std::map<std::string, Symbol> symbol_index;
    for (const auto& name : domain) {
      if (!symbol_index.emplace(name, symbol_index.size()).second)
        throw SemanticError("duplicate symbol '" + name + "'");
    }
    auto symbol_of = [&](const std::string& name) {
      auto it = symbol_index.find(name);
      if (it == symbol_index.end())
        throw SemanticError("unknown symbol '" + name + "'");
      return it->second;
    };

    System s;
    s.domain_size = static_cast<std::uint32_t>(domain.size());
    s.symbol_names = domain;
    s.initial_value = symbol_of(init_symbol);

    auto build = [&](const RawBlock& block, const std::string& who,
                     Automaton& a, std::vector<StateId>* final_out) {
      std::map<std::string, StateId> index;
      bool closed = block.states.has_value();
      auto state_of = [&](const std::string& name) -> StateId {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (closed) throw SemanticError(who + ": unknown state '" + name + "'");
        StateId id = static_cast<StateId>(a.state_names.size());
        a.state_names.push_back(name);
        index.emplace(name, id);
        return id;
      };
      if (closed) {
        for (const auto& name : *block.states) {
          StateId id = static_cast<StateId>(a.state_names.size());
          if (!index.emplace(name, id).second)
            throw SemanticError(who + ": duplicate state '" + name + "'");
          a.state_names.push_back(name);
        }
      }
      if (!block.init) throw SemanticError(who + " missing init");
      a.initial = state_of(*block.init);
      if (final_out && block.final_states)
        for (const auto& name : *block.final_states)
          final_out->push_back(state_of(name));
      for (const auto& t : block.transitions) {
        StateId src = state_of(t.src);
        StateId dst = state_of(t.dst);
        MemOp op = t.op.kind == MemOp::Kind::kEpsilon
                       ? MemOp::epsilon()
                       : MemOp{t.op.kind, symbol_of(t.op.symbol)};
        a.transitions.push_back({src, op, dst});
      }
      a.state_count = static_cast<std::uint32_t>(a.state_names.size());
      if (a.state_count == 0) throw SemanticError(who + " has no states");
    };

    build(leader, "leader", s.leader, &s.final_states);
    build(contributor, "contributor", s.contributor, nullptr);
    canonicalize(s);
    validate(s);
    return s;
  }

  Lexer lexer_;
  Token current_;
};

void write_name_list(std::ostringstream& out, const std::vector<std::string>& names) {
  out << "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out << ", ";
    out << names[i];
  }
  out << "]";
}

}  // namespace

System parse_system(std::string_view text) { return Parser(text).parse(); }

std::string serialize_system(const System& s) {
  validate(s);
  std::ostringstream out;
  auto transition_lines = [&](const Automaton& a) {
    std::vector<std::string> lines;
    lines.reserve(a.transitions.size());
    for (const auto& t : a.transitions) {
      std::string op;
      switch (t.op.kind) {
        case MemOp::Kind::kWrite: op = "!" + s.symbol_names[t.op.value]; break;
        case MemOp::Kind::kRead: op = "?" + s.symbol_names[t.op.value]; break;
        case MemOp::Kind::kEpsilon: op = "eps"; break;
      }
      lines.push_back(a.state_names[t.src] + " -> " + a.state_names[t.dst] +
                      " : " + op);
    }
    std::sort(lines.begin(), lines.end());
    return lines;
  };

  out << "system {\n";
  out << "  domain = ";
  write_name_list(out, s.symbol_names);
  out << "\n";
  out << "  init = " << s.symbol_names[s.initial_value] << "\n";

  out << "  leader {\n";
  out << "    states = ";
  write_name_list(out, s.leader.state_names);
  out << "\n";
  out << "    init = " << s.leader.state_names[s.leader.initial] << "\n";
  std::vector<std::string> final_names;
  for (StateId q : s.final_states) final_names.push_back(s.leader.state_names[q]);
  out << "    final = ";
  write_name_list(out, final_names);
  out << "\n";
  for (const auto& line : transition_lines(s.leader)) out << "    " << line << "\n";
  out << "  }\n";

  out << "  contributor {\n";
  out << "    states = ";
  write_name_list(out, s.contributor.state_names);
  out << "\n";
  out << "    init = " << s.contributor.state_names[s.contributor.initial] << "\n";
  for (const auto& line : transition_lines(s.contributor)) out << "    " << line << "\n";
  out << "  }\n";

  out << "}\n";
  return out.str();
}

}  // namespace lcs
