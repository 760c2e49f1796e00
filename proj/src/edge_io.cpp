#include "clsparse/edge_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace clsparse {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view tok) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

// Recognizes `n=<N>` (with optional spaces) in a comment body.
std::optional<Index> parse_header(std::string_view body) {
  body = trim(body);
  if (body.size() < 2 || body[0] != 'n') return std::nullopt;
  body = trim(body.substr(1));
  if (body.empty() || body[0] != '=') return std::nullopt;
  return parse_number<Index>(trim(body.substr(1)));
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<Index> header_n;
  Index max_index = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (auto n = parse_header(s.substr(1))) {
        if (*n < 1) throw ParseError("header n must be positive", lineno);
        header_n = n;
      }
      continue;
    }
    auto toks = split_ws(s);
    if (toks.size() < 2 || toks.size() > 3) {
      throw ParseError("expected `u v [w]`, got " + std::to_string(toks.size()) + " fields",
                       lineno);
    }
    auto u = parse_number<Index>(toks[0]);
    auto v = parse_number<Index>(toks[1]);
    if (!u || !v || *u < 0 || *v < 0) throw ParseError("invalid vertex index", lineno);
    double w = 1.0;
    if (toks.size() == 3) {
      auto parsed = parse_number<double>(toks[2]);
      if (!parsed) throw ParseError("invalid weight '" + std::string(toks[2]) + "'", lineno);
      w = *parsed;
    }
    if (*u == *v) throw ParseError("self-loop at vertex " + std::to_string(*u), lineno);
    if (!(w > 0.0)) throw ParseError("non-positive weight", lineno);
    max_index = std::max({max_index, *u, *v});
    edges.push_back({*u, *v, w});
  }
  Index n = header_n.value_or(max_index + 1);
  if (max_index >= n) {
    throw ParseError("vertex index " + std::to_string(max_index) + " exceeds header n=" +
                         std::to_string(n),
                     0);
  }
  if (n < 1) throw ParseError("empty edge list without `# n=` header", 0);
  return Graph(n, std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

Partition read_partition(std::istream& in) {
  std::vector<Index> assignment;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    auto id = parse_number<Index>(s);
    if (!id || *id < 0) throw ParseError("invalid cluster id '" + std::string(s) + "'", lineno);
    assignment.push_back(*id);
  }
  if (assignment.empty()) throw ParseError("empty partition file", 0);
  try {
    return Partition(std::move(assignment));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

Partition load_partition(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_partition(in);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (Index c : p.assignment()) out << c << '\n';
}

void save_partition(const std::filesystem::path& path, const Partition& p) {
  auto out = open_out(path);
  write_partition(out, p);
}

}  // namespace clsparse
