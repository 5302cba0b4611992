#include "molscope/text_format.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "molscope/construct.hpp"

namespace molscope {
namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int to_int(std::string_view tok, int line) {
  int v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    fail(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool skip_blank() {
    while (pos_ < lines_.size() && lines_[pos_].tokens.empty()) ++pos_;
    return pos_ < lines_.size();
  }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next(const char* expecting) {
    if (pos_ >= lines_.size())
      fail(lines_.empty() ? 0 : lines_.back().number, std::string("unexpected end, expected ") + expecting);
    return lines_[pos_++];
  }
  bool at_blank_or_end() const { return pos_ >= lines_.size() || lines_[pos_].tokens.empty(); }

  Square square_block() {
    const Line& head = next("square order");
    if (head.tokens.size() != 1) fail(head.number, "expected a single order");
    const int n = to_int(head.tokens[0], head.number);
    if (n < 1) fail(head.number, "order must be positive");
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      const Line& row = next("square row");
      if (static_cast<int>(row.tokens.size()) != n)
        fail(row.number, "expected " + std::to_string(n) + " entries, got " +
                             std::to_string(row.tokens.size()));
      for (auto tok : row.tokens) {
        const int v = to_int(tok, row.number);
        if (v < 1 || v > n) fail(row.number, "entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
        cells.push_back(v - 1);
      }
    }
    return Square(n, std::move(cells));
  }

  std::vector<Cell> transversal_block() {
    std::vector<Cell> cells;
    while (!at_blank_or_end()) {
      const Line& l = next("cell");
      if (l.tokens.size() != 2) fail(l.number, "expected 'row col'");
      const int r = to_int(l.tokens[0], l.number);
      const int c = to_int(l.tokens[1], l.number);
      if (r < 1 || c < 1) fail(l.number, "cells are 1-based");
      cells.push_back({r - 1, c - 1});
    }
    return cells;
  }

  ArrayBlock array_block(const Line& head) {
    if (head.tokens.size() != 3) fail(head.number, "expected '" + std::string(head.tokens[0]) + " n d'");
    ArrayBlock a;
    a.nearly = head.tokens[0] == "NOA";
    a.order = to_int(head.tokens[1], head.number);
    a.width = to_int(head.tokens[2], head.number);
    if (a.order < 1 || a.width < 1) fail(head.number, "array dimensions must be positive");
    for (int r = 0; r < a.order * a.order; ++r) {
      const Line& row = next("array row");
      if (static_cast<int>(row.tokens.size()) != a.width)
        fail(row.number, "expected " + std::to_string(a.width) + " entries");
      for (auto tok : row.tokens) {
        const int v = to_int(tok, row.number);
        if (v < 1 || v > a.order) fail(row.number, "entry outside 1.." + std::to_string(a.order));
        a.data.push_back(v - 1);
      }
    }
    return a;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

// Splits "A,B" at the top-level comma.
std::pair<std::string_view, std::string_view> split_pair(std::string_view inner, std::string_view spec) {
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    else if (inner[i] == ')') --depth;
    else if (inner[i] == ',' && depth == 0) return {inner.substr(0, i), inner.substr(i + 1)};
  }
  throw ParseError("generator '" + std::string(spec) + "' needs two arguments");
}

std::string_view parenthesized(std::string_view rest, std::string_view spec) {
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
    throw ParseError("generator '" + std::string(spec) + "' needs (A,B)");
  return rest.substr(1, rest.size() - 2);
}

int spec_int(std::string_view s, std::string_view spec) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("bad number '" + std::string(s) + "' in '" + std::string(spec) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

LatinSquare latin_from_spec(std::string_view spec, std::optional<int> limit) {
  return validate_latin(resolve_square(spec, limit));
}

void check_generated(int n, std::optional<int> limit, std::string_view spec) {
  if (n > limit.value_or(kConstructionOrderLimit))
    throw LimitExceeded("'" + std::string(spec) + "': order " + std::to_string(n) + " exceeds limit");
}

}  // namespace

DesignFile parse_design(std::string_view text) {
  Reader in(tokenize(text));
  DesignFile f;
  while (in.skip_blank()) {
    const Line& head = in.peek();
    const auto key = head.tokens[0];
    if (key == "PARTITION") {
      if (head.tokens.size() != 1) fail(head.number, "PARTITION takes no arguments");
      in.next("PARTITION");
      if (f.partition) fail(head.number, "more than one PARTITION block");
      in.skip_blank();
      f.partition = in.square_block();
    } else if (key == "TRANSVERSAL") {
      in.next("TRANSVERSAL");
      f.transversals.push_back(in.transversal_block());
    } else if (key == "OA" || key == "NOA") {
      const Line& h = in.next("array header");
      if (f.array) fail(h.number, "more than one array block");
      f.array = in.array_block(h);
    } else {
      f.squares.push_back(in.square_block());
    }
  }
  if (f.array && (!f.squares.empty() || f.partition))
    throw ParseError("a file holds either an array or squares, not both");
  return f;
}

DesignFile read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  try {
    return parse_design(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_square(const Square& s) {
  std::string out = std::to_string(s.order()) + "\n";
  for (int i = 0; i < s.order(); ++i) {
    for (int j = 0; j < s.order(); ++j) {
      if (j) out += ' ';
      out += std::to_string(s.at(i, j) + 1);
    }
    out += '\n';
  }
  return out;
}

std::string format_design(const DesignFile& f) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += '\n';
  };
  if (f.array) {
    const auto& a = *f.array;
    out += (a.nearly ? "NOA " : "OA ") + std::to_string(a.order) + " " + std::to_string(a.width) + "\n";
    for (int r = 0; r < a.order * a.order; ++r) {
      for (int c = 0; c < a.width; ++c) {
        if (c) out += ' ';
        out += std::to_string(a.data[r * a.width + c] + 1);
      }
      out += '\n';
    }
  }
  for (const auto& s : f.squares) {
    sep();
    out += format_square(s);
  }
  if (f.partition) {
    sep();
    out += "PARTITION\n" + format_square(*f.partition);
  }
  for (const auto& t : f.transversals) {
    sep();
    out += "TRANSVERSAL\n";
    for (const Cell& c : t) out += std::to_string(c.row + 1) + " " + std::to_string(c.col + 1) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("error writing " + path.string());
}

bool is_generator_spec(std::string_view spec) {
  for (std::string_view p : {"cayley:", "kron:", "power:", "boxes:", "rows:"})
    if (spec.starts_with(p)) return true;
  return false;
}

Square resolve_square(std::string_view spec, std::optional<int> limit) {
  spec = trim(spec);
  if (!is_generator_spec(spec)) {
    auto f = read_design_file(std::filesystem::path(std::string(spec)));
    if (f.squares.size() != 1 || f.partition || f.array)
      throw ParseError(std::string(spec) + ": expected exactly one square");
    return std::move(f.squares[0]);
  }
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  const auto rest = trim(spec.substr(colon + 1));

  if (kind == "cayley") {
    std::vector<int> factors;
    std::string_view r = rest;
    while (true) {
      const auto x = r.find('x');
      factors.push_back(spec_int(r.substr(0, x), spec));
      if (x == std::string_view::npos) break;
      r = r.substr(x + 1);
    }
    if (factors.size() == 1 && factors[0] == 1) factors.clear();
    for (int m : factors)
      if (m < 2) throw InvalidParams("'" + std::string(spec) + "': group factors must be >= 2");
    const GroupSpec g{std::move(factors)};
    check_generated(static_cast<int>(std::min<std::int64_t>(g.order(), 1 << 30)), limit, spec);
    return cayley_table(g, limit).square();
  }
  if (kind == "kron") {
    const auto [a, b] = split_pair(parenthesized(rest, spec), spec);
    return kronecker(latin_from_spec(a, limit), latin_from_spec(b, limit), limit).square();
  }
  if (kind == "power") {
    const auto [a, k] = split_pair(parenthesized(rest, spec), spec);
    return power(latin_from_spec(a, limit), spec_int(trim(k), spec), limit).square();
  }
  const int n = spec_int(rest, spec);
  if (n < 1) throw InvalidParams("'" + std::string(spec) + "': order must be positive");
  check_generated(n, limit, spec);
  if (kind == "boxes") return partition_boxes(n).as_square();
  return partition_rows(n).as_square();
}

RegionPartition resolve_partition(std::string_view spec, std::optional<int> limit) {
  const Square s = resolve_square(spec, limit);
  return RegionPartition(s.order(), {s.cells().begin(), s.cells().end()});
}

}  // namespace molscope
