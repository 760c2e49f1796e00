#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "clsparse/graph.hpp"

namespace clsparse {

// Malformed input; line() is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Edge-list text: lines `u v [w]` (0-indexed, w defaults to 1), `#` comments,
// optional `# n=<N>` header. Without the header n = 1 + max index.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);

// Writes the header and one `u v w` line per edge with round-trip precision.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

// One cluster id per line, line i = vertex i.
Partition read_partition(std::istream& in);
Partition load_partition(const std::filesystem::path& path);
void write_partition(std::ostream& out, const Partition& p);
void save_partition(const std::filesystem::path& path, const Partition& p);

// Shortest decimal text that parses back to the same double, locale-free.
std::string format_double(double x);

}  // namespace clsparse
