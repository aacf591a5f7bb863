#include "eqha/toml_lite.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace eqha::toml_lite {

namespace {

struct Token {
  enum Kind { Punct, Str, Int, Bare, End } kind = End;
  std::string text;
  long long num = 0;
  int line = 0;
};

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  int line = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + msg);
  }

  void skip_space() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_space();
    Token t;
    t.line = line;
    if (pos >= s.size()) return t;
    char c = s[pos];
    if (c == '[' || c == ']' || c == '=' || c == ',' || c == '.') {
      t.kind = Token::Punct;
      t.text = std::string(1, c);
      ++pos;
      return t;
    }
    if (c == '"') {
      ++pos;
      std::string out;
      while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\\') {
          ++pos;
          if (pos >= s.size()) fail("unterminated escape");
          switch (s[pos]) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: fail("unsupported escape");
          }
          ++pos;
        } else {
          if (s[pos] == '\n') fail("newline in string");
          out += s[pos++];
        }
      }
      if (pos >= s.size()) fail("unterminated string");
      ++pos;
      t.kind = Token::Str;
      t.text = out;
      return t;
    }
    if (c == '+' || c == '-' || std::isdigit(uint8_t(c))) {
      size_t start = pos;
      if (c == '+' || c == '-') ++pos;
      if (pos >= s.size() || !std::isdigit(uint8_t(s[pos]))) fail("bad number");
      while (pos < s.size() && std::isdigit(uint8_t(s[pos]))) ++pos;
      // bare keys never start with digits in our files, so this is a number
      t.kind = Token::Int;
      t.text = s.substr(start, pos - start);
      t.num = std::stoll(t.text);
      return t;
    }
    if (std::isalpha(uint8_t(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(uint8_t(s[pos])) || s[pos] == '_' || s[pos] == '-'))
        ++pos;
      t.kind = Token::Bare;
      t.text = s.substr(start, pos - start);
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

struct Parser {
  Lexer lex;
  Token cur;
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = nullptr;

  explicit Parser(const std::string& text) : lex(text) { cur = lex.next(); }

  void advance() { cur = lex.next(); }

  bool punct(const char* p) const { return cur.kind == Token::Punct && cur.text == p; }

  void expect_punct(const char* p) {
    if (!punct(p)) lex.fail(std::string("expected '") + p + "'");
    advance();
  }

  std::string key_part() {
    if (cur.kind != Token::Bare && cur.kind != Token::Str && cur.kind != Token::Int)
      lex.fail("expected key");
    std::string k = cur.text;
    advance();
    return k;
  }

  std::vector<std::string> key_path() {
    std::vector<std::string> path{key_part()};
    while (punct(".")) {
      advance();
      path.push_back(key_part());
    }
    return path;
  }

  nlohmann::json parse_value() {
    if (cur.kind == Token::Str) {
      auto v = nlohmann::json(cur.text);
      advance();
      return v;
    }
    if (cur.kind == Token::Int) {
      auto v = nlohmann::json(cur.num);
      advance();
      return v;
    }
    if (cur.kind == Token::Bare) {
      if (cur.text == "true" || cur.text == "false") {
        auto v = nlohmann::json(cur.text == "true");
        advance();
        return v;
      }
      lex.fail("bare value '" + cur.text + "' (quote strings)");
    }
    if (punct("[")) {
      advance();
      auto arr = nlohmann::json::array();
      if (punct("]")) {
        advance();
        return arr;
      }
      while (true) {
        arr.push_back(parse_value());
        if (punct(",")) {
          advance();
          if (punct("]")) {  // trailing comma
            advance();
            return arr;
          }
          continue;
        }
        expect_punct("]");
        return arr;
      }
    }
    lex.fail("expected value");
  }

  nlohmann::json* navigate(nlohmann::json* base, const std::vector<std::string>& path,
                           size_t upto) {
    nlohmann::json* cur_tbl = base;
    for (size_t i = 0; i < upto; ++i) {
      nlohmann::json& slot = (*cur_tbl)[path[i]];
      if (slot.is_null()) slot = nlohmann::json::object();
      if (slot.is_array()) {
        if (slot.empty()) lex.fail("empty table array");
        cur_tbl = &slot.back();
      } else if (slot.is_object()) {
        cur_tbl = &slot;
      } else {
        lex.fail("key '" + path[i] + "' is not a table");
      }
    }
    return cur_tbl;
  }

  void run() {
    table = &root;
    while (cur.kind != Token::End) {
      if (punct("[")) {
        advance();
        bool array_table = punct("[");
        if (array_table) advance();
        auto path = key_path();
        expect_punct("]");
        if (array_table) expect_punct("]");
        nlohmann::json* parent = navigate(&root, path, path.size() - 1);
        nlohmann::json& slot = (*parent)[path.back()];
        if (array_table) {
          if (slot.is_null()) slot = nlohmann::json::array();
          if (!slot.is_array()) lex.fail("redefining key as table array");
          slot.push_back(nlohmann::json::object());
          table = &slot.back();
        } else {
          if (slot.is_null()) slot = nlohmann::json::object();
          if (!slot.is_object()) lex.fail("redefining key as table");
          table = &slot;
        }
        continue;
      }
      auto path = key_path();
      expect_punct("=");
      nlohmann::json* parent = navigate(table, path, path.size() - 1);
      (*parent)[path.back()] = parse_value();
    }
  }
};

}  // namespace

nlohmann::json parse(const std::string& text) {
  Parser p(text);
  p.run();
  return p.root;
}

}  // namespace eqha::toml_lite
