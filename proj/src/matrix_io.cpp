#include "inj/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace inj {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::vector<Token> tokens;
  std::size_t number;
};

// Splits on whitespace, except inside bracketed interval tokens.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no, bool bracket_aware) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::string text;
    int depth = 0;
    while (i < line.size()) {
      char c = line[i];
      if (bracket_aware && (c == '(' || c == '[' || c == '{')) ++depth;
      if (bracket_aware && (c == ')' || c == ']' || c == '}')) {
        if (--depth < 0) throw ParseError("unbalanced bracket", line_no, i + 1);
      }
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
      if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
      ++i;
    }
    if (depth != 0) throw ParseError("unterminated interval", line_no, start + 1);
    out.push_back({std::move(text), start + 1});
  }
  return out;
}

std::vector<Line> content_lines(std::string_view text, bool bracket_aware) {
  std::vector<Line> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      out.push_back({tokenize(line, line_no, bracket_aware), line_no});
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

template <typename T, typename Convert>
Grid<T> parse_grid(std::string_view text, bool bracket_aware, Convert convert) {
  auto lines = content_lines(text, bracket_aware);
  if (lines.empty()) return Grid<T>(0, 0);
  const std::size_t cols = lines.front().tokens.size();
  Grid<T> out(lines.size(), cols);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " entries, found " + std::to_string(line.tokens.size()),
                       line.number, 1);
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        out(i, j) = convert(line.tokens[j].text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line.number, line.tokens[j].column);
      }
    }
  }
  return out;
}

}  // namespace

QMatrix parse_matrix(std::string_view text) {
  auto g = parse_grid<Rational>(text, false, [](const std::string& t) { return parse_rational(t); });
  QMatrix m(static_cast<Index>(g.rows()), static_cast<Index>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = g(i, j);
  return m;
}

SignSetMatrix parse_sign_set_matrix(std::string_view text) {
  return parse_grid<SignSet>(text, false, [](const std::string& t) { return SignSet::parse(t); });
}

IntervalBox parse_interval_matrix(std::string_view text) {
  return parse_grid<IntervalEntry>(text, true, [](const std::string& t) { return IntervalEntry::parse(t); });
}

std::vector<SignVector> parse_sign_vectors(std::string_view text) {
  std::vector<SignVector> out;
  for (const auto& line : content_lines(text, false)) {
    if (line.tokens.size() != 1) throw ParseError("expected one sign vector per line", line.number, 1);
    try {
      out.push_back(SignVector::parse(line.tokens.front().text));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line.number, line.tokens.front().column);
    }
  }
  return out;
}

namespace {

template <typename T, typename Format>
std::string format_rows(std::size_t rows, std::size_t cols, const T& get, Format fmt) {
  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ' ';
      out += fmt(get(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_matrix(const QMatrix& m) {
  return format_rows(
      static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
      [&](std::size_t i, std::size_t j) { return m(static_cast<Index>(i), static_cast<Index>(j)); },
      [](const Rational& q) { return to_string(q); });
}

std::string format_sign_set_matrix(const SignSetMatrix& w) {
  return format_rows(
      w.rows(), w.cols(), [&](std::size_t i, std::size_t j) { return w(i, j); },
      [](const SignSet& s) { return s.token(); });
}

std::string format_interval_matrix(const IntervalBox& d) {
  return format_rows(
      d.rows(), d.cols(), [&](std::size_t i, std::size_t j) { return d(i, j); },
      [](const IntervalEntry& e) { return e.str(); });
}

std::string format_sign_vectors(const std::vector<SignVector>& vs) {
  std::string out;
  for (const auto& v : vs) out += v.str() + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace inj
