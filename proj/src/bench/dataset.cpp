#include "cgraph/bench/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace cgraph::bench {

DatasetError::DatasetError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Reads the next whitespace-delimited token starting at pos.
std::string_view token(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && isSpace(s[pos])) ++pos;
  const std::size_t start = pos;
  while (pos < s.size() && !isSpace(s[pos])) ++pos;
  return s.substr(start, pos - start);
}

Key toKey(std::string_view tok, std::size_t line) {
  Key k = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), k);
  if (ec != std::errc() || p != tok.data() + tok.size() || !isUserKey(k)) {
    throw DatasetError(line, "invalid node id '" + std::string(tok) + "'");
  }
  return k;
}

}  // namespace

EdgeList parseSnapEdgeList(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::size_t pos = 0;
    std::string_view view(line);
    auto first = token(view, pos);
    if (first.empty() || first.front() == '#') continue;
    auto second = token(view, pos);
    if (second.empty()) throw DatasetError(lineNo, "expected two node ids");
    if (!token(view, pos).empty()) throw DatasetError(lineNo, "more than two fields");
    const Key u = toKey(first, lineNo);
    const Key v = toKey(second, lineNo);
    out.vertices.push_back(u);
    out.vertices.push_back(v);
    if (u != v) out.edges.emplace_back(u, v);
  }
  if (in.bad()) throw DatasetError(0, "read error");
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

EdgeList loadSnapEdgeList(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError(0, "cannot open " + path.string());
  return parseSnapEdgeList(in);
}

}  // namespace cgraph::bench
