#include "cli/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entmed::cli {

namespace {

using json = nlohmann::json;

class Parser {
 public:
  Parser(const std::string& text, std::string source) : s_(text), source_(std::move(source)) {}

  json document() {
    json root = json::object();
    json* table = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        table = &open_table(root);
      } else {
        std::string key = bare_key();
        skip_ws();
        expect('=');
        skip_ws();
        json v = value();
        if (table->contains(key)) fail("duplicate key '" + key + "'");
        (*table)[key] = v;
      }
      end_of_line();
    }
    return root;
  }

  json lone_value() {
    skip_ws();
    json v;
    if (!eof() && (peek() == '"' || peek() == '[' || peek() == '-' || peek() == '+' || peek() == '.' ||
                   std::isdigit(static_cast<unsigned char>(peek())) || word_is_literal())) {
      v = value();
    } else {
      v = s_.substr(pos_);
      pos_ = s_.size();
    }
    skip_ws();
    if (!eof()) fail("trailing characters after value");
    return v;
  }

 private:
  const std::string& s_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw TomlError(source_ + ":" + std::to_string(line_), msg);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (!eof() && peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (!eof() && (peek() == '\n' || peek() == '\r'))
        get();
      else
        break;
    }
  }

  void end_of_line() {
    skip_ws();
    skip_comment();
    if (eof()) return;
    if (peek() == '\r') get();
    if (eof()) return;
    if (peek() != '\n') fail("expected end of line");
    get();
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  static bool key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (!eof() && key_char(peek())) ++pos_;
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  json& open_table(json& root) {
    expect('[');
    if (!eof() && peek() == '[') fail("arrays of tables are not supported");
    json* t = &root;
    while (true) {
      skip_ws();
      std::string k = bare_key();
      skip_ws();
      if (!t->contains(k)) (*t)[k] = json::object();
      t = &(*t)[k];
      if (!t->is_object()) fail("table '" + k + "' redefines a value");
      if (!eof() && peek() == '.') {
        get();
        continue;
      }
      break;
    }
    expect(']');
    return *t;
  }

  bool word_is_literal() const {
    return s_.compare(pos_, 4, "true") == 0 || s_.compare(pos_, 5, "false") == 0 || s_.compare(pos_, 3, "inf") == 0 ||
           s_.compare(pos_, 3, "nan") == 0;
  }

  json value() {
    if (eof()) fail("missing value");
    const char c = peek();
    if (c == '"') return string();
    if (c == '[') return array();
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return number();
  }

  json string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        const char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  json array() {
    expect('[');
    json arr = json::array();
    while (true) {
      skip_blank_lines();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        get();
        return arr;
      }
      json v = value();
      if (v.is_array()) fail("nested arrays are not supported");
      arr.push_back(v);
      skip_blank_lines();
      if (!eof() && peek() == ',') {
        get();
        continue;
      }
      skip_blank_lines();
      expect(']');
      return arr;
    }
  }

  json number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '+' ||
                      peek() == '-' || peek() == '_'))
      ++pos_;
    std::string tok;
    for (std::size_t i = start; i < pos_; ++i)
      if (s_[i] != '_') tok += s_[i];
    if (tok.empty()) fail("expected a value");
    std::string body = tok;
    if (body[0] == '+' || body[0] == '-') body = body.substr(1);
    if (body == "inf" || body == "nan") {
      const double v = body == "inf" ? INFINITY : NAN;
      return tok[0] == '-' ? -v : v;
    }
    const bool integral = tok.find_first_of(".eE") == std::string::npos;
    if (integral) {
      long long v = 0;
      const char* b = tok.data() + (tok[0] == '+' ? 1 : 0);
      auto r = std::from_chars(b, tok.data() + tok.size(), v);
      if (r.ec == std::errc() && r.ptr == tok.data() + tok.size()) return v;
    } else {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
      } catch (const std::logic_error&) {
      }
    }
    fail("malformed value '" + tok + "'");
  }
};

}  // namespace

json parse_toml(const std::string& text, const std::string& source) { return Parser(text, source).document(); }

json parse_toml_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw TomlError(path, "cannot open config");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_toml(ss.str(), path);
}

json parse_toml_value(const std::string& text) { return Parser(text, "--set").lone_value(); }

}  // namespace entmed::cli
