#include "clsparse/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "clsparse/edge_io.hpp"

namespace clsparse {

namespace {

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : s_(text) {}

  nlohmann::json parse() {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        table = &open_table(root);
      } else {
        std::string key = read_key();
        if (peek() == '.') fail("dotted keys are not supported; use a [table] header");
        skip_inline_space();
        expect('=');
        skip_inline_space();
        if (table->contains(key)) fail("duplicate key '" + key + "'");
        (*table)[key] = read_value();
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  char get() {
    char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') get();
    }
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\r' || peek() == '\n') {
        get();
      } else {
        break;
      }
    }
  }

  // Whitespace, newlines and comments inside arrays.
  void skip_array_space() { skip_blank_lines(); }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (peek() == '\r') get();
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    get();
  }

  static bool bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string read_key() {
    if (peek() == '"') return read_string();
    std::string key;
    while (!eof() && bare_key_char(peek())) key.push_back(get());
    if (key.empty()) fail("expected a key");
    return key;
  }

  nlohmann::json& open_table(nlohmann::json& root) {
    expect('[');
    if (peek() == '[') fail("arrays of tables are not supported");
    nlohmann::json* t = &root;
    while (true) {
      skip_inline_space();
      std::string part = read_key();
      skip_inline_space();
      if (!t->contains(part)) (*t)[part] = nlohmann::json::object();
      t = &(*t)[part];
      if (!t->is_object()) fail("'" + part + "' is not a table");
      if (peek() == '.') {
        get();
        continue;
      }
      break;
    }
    expect(']');
    return *t;
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (eof()) fail("unterminated escape");
      char e = get();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
    return out;
  }

  nlohmann::json read_number() {
    std::string tok;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_')) {
      char c = get();
      if (c != '_') tok.push_back(c);
    }
    if (tok.empty()) fail("expected a value");
    std::string_view body = tok;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    if (body == "inf") return std::numeric_limits<double>::infinity();
    if (body == "-inf") return -std::numeric_limits<double>::infinity();
    if (body == "nan" || body == "-nan") return std::numeric_limits<double>::quiet_NaN();
    const bool is_float = body.find_first_of(".eE") != std::string_view::npos;
    if (is_float) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc() || p != body.data() + body.size()) fail("invalid float '" + tok + "'");
      return v;
    }
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || p != body.data() + body.size()) fail("invalid integer '" + tok + "'");
    return v;
  }

  nlohmann::json read_value() {
    const char c = peek();
    if (c == '"') return read_string();
    if (c == '[') {
      get();
      nlohmann::json arr = nlohmann::json::array();
      while (true) {
        skip_array_space();
        if (peek() == ']') {
          get();
          break;
        }
        arr.push_back(read_value());
        skip_array_space();
        if (peek() == ',') {
          get();
        } else if (peek() == ']') {
          get();
          break;
        } else {
          fail("expected ',' or ']' in array");
        }
      }
      return arr;
    }
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    if (c == '{') fail("inline tables are not supported");
    return read_number();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

nlohmann::json parse_toml(std::string_view text) { return TomlReader(text).parse(); }

nlohmann::json load_toml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

}  // namespace clsparse
