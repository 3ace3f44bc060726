#include "rpsym/manifold.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "rpsym/error.hpp"
#include "rpsym/parse.hpp"

namespace rpsym {

Manifold::Manifold(Coordinates coords, std::vector<std::string> frame_names, ExprMatrix frame, ExprMatrix metric,
                   std::optional<std::size_t> xi)
    : coords_(std::move(coords)),
      names_(std::move(frame_names)),
      frame_(std::move(frame)),
      metric_(std::move(metric)),
      xi_(xi) {
  const std::size_t n = frame_.size();
  if (n < 2) throw GeometryError("dimension must be at least 2");
  if (!coords_ || coords_->size() != n) throw GeometryError("coordinate count must equal the dimension");
  if (names_.size() != n) throw GeometryError("frame name count must equal the dimension");
  if (metric_.size() != n) throw GeometryError("metric size must equal the dimension");
  if (determinant(frame_).is_zero()) throw GeometryError("frame is singular");
  if (!metric_.is_symmetric()) throw GeometryError("metric is not symmetric");
  if (determinant(metric_).is_zero()) throw GeometryError("metric is degenerate");
  if (xi_) {
    if (*xi_ >= n) throw GeometryError("xi index out of range");
    const Expr& gxx = metric_(*xi_, *xi_);
    if (!(gxx == Expr(-1))) {
      throw GeometryError("g(xi, xi) = " + canonical_text(gxx) + ", expected -1");
    }
  }
  frame_inv_ = inverse(frame_);
  metric_inv_ = inverse(metric_);

  brackets_.assign(n * n, FrameVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Expr> v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = apply_frame(i, frame_(j, a)) - apply_frame(j, frame_(i, a));
      FrameVector b = from_coordinate_components(v);
      brackets_[j * n + i] = -b;
      brackets_[i * n + j] = std::move(b);
    }
  }
}

std::size_t Manifold::require_xi() const {
  if (!xi_) throw GeometryError("manifold has no xi field");
  return *xi_;
}

Expr Manifold::apply_frame(std::size_t i, const Expr& f) const {
  if (f.is_constant()) return Expr();
  Expr out;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (frame_(i, a).is_zero()) continue;
    out += frame_(i, a) * differentiate(f, a);
  }
  return out;
}

FrameVector Manifold::from_coordinate_components(const std::vector<Expr>& v) const {
  const std::size_t n = dim();
  FrameVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (v[a].is_zero() || frame_inv_(a, k).is_zero()) continue;
      out[k] += v[a] * frame_inv_(a, k);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> split_words(std::string_view line, std::size_t from) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start});
  }
  return out;
}

class ManifoldReader {
 public:
  explicit ManifoldReader(std::string_view text) : text_(text) {}

  Manifold read() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle_line(line);
      start = end + 1;
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t column) const {
    throw ParseError(message, column, line_no_);
  }

  std::size_t parse_index(const Token& t, std::size_t limit) const {
    std::size_t value = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail("expected an integer, got '" + std::string(t.text) + "'", t.column);
    if (limit != 0 && (value < 1 || value > limit)) {
      fail("index " + std::to_string(value) + " outside 1.." + std::to_string(limit), t.column);
    }
    return value;
  }

  Expr parse_at(std::string_view line, std::size_t from, std::size_t to) const {
    const std::string_view piece = line.substr(from, to - from);
    if (trim(piece).empty()) fail("missing expression", from);
    try {
      return parse_expr(piece, coords_);
    } catch (const ParseError& e) {
      fail(e.message(), from + e.position());
    }
  }

  void require_coords(std::size_t column) const {
    if (!coords_) fail("'coords' must precede frame and metric lines", column);
  }

  void handle_line(std::string_view line) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') return;
    const std::size_t lead = static_cast<std::size_t>(body.data() - line.data());
    std::size_t kw_end = lead;
    while (kw_end < line.size() && !std::isspace(static_cast<unsigned char>(line[kw_end])) && line[kw_end] != ':') ++kw_end;
    const std::string_view keyword = line.substr(lead, kw_end - lead);

    if (keyword == "dim") {
      if (dim_) fail("duplicate 'dim'", lead);
      const auto words = split_words(line, kw_end);
      if (words.size() != 1) fail("'dim' takes one integer", kw_end);
      dim_ = parse_index(words[0], 0);
      if (*dim_ < 2) fail("dimension must be at least 2", words[0].column);
    } else if (keyword == "coords") {
      if (coords_) fail("duplicate 'coords'", lead);
      if (!dim_) fail("'dim' must precede 'coords'", lead);
      const auto words = split_words(line, kw_end);
      std::vector<std::string> names;
      for (const auto& w : words) {
        if (!is_identifier(w.text)) fail("invalid coordinate name '" + std::string(w.text) + "'", w.column);
        if (std::find(names.begin(), names.end(), w.text) != names.end()) {
          fail("duplicate coordinate '" + std::string(w.text) + "'", w.column);
        }
        names.emplace_back(w.text);
      }
      if (names.size() != *dim_) {
        fail("expected " + std::to_string(*dim_) + " coordinates, got " + std::to_string(names.size()), kw_end);
      }
      coords_ = make_coordinates(std::move(names));
    } else if (keyword == "frame") {
      require_coords(lead);
      const std::size_t colon = line.find(':', kw_end);
      if (colon == std::string_view::npos) fail("expected ':' after frame name", line.size());
      const std::string_view name = trim(line.substr(kw_end, colon - kw_end));
      if (!is_identifier(name)) fail("invalid frame name '" + std::string(name) + "'", kw_end);
      if (std::find(frame_names_.begin(), frame_names_.end(), name) != frame_names_.end()) {
        fail("duplicate frame '" + std::string(name) + "'", kw_end);
      }
      if (frame_names_.size() == *dim_) fail("more than " + std::to_string(*dim_) + " frame lines", lead);
      std::vector<Expr> row;
      std::size_t from = colon + 1;
      while (true) {
        const std::size_t comma = line.find(',', from);
        const std::size_t to = comma == std::string_view::npos ? line.size() : comma;
        row.push_back(parse_at(line, from, to));
        if (comma == std::string_view::npos) break;
        from = comma + 1;
      }
      if (row.size() != *dim_) {
        fail("expected " + std::to_string(*dim_) + " components, got " + std::to_string(row.size()), colon + 1);
      }
      frame_names_.emplace_back(name);
      frame_rows_.push_back(std::move(row));
    } else if (keyword == "metric") {
      require_coords(lead);
      const auto words = split_words(line, kw_end);
      if (words.size() < 3) fail("expected 'metric <i> <j> <expr>'", kw_end);
      const std::size_t i = parse_index(words[0], *dim_);
      const std::size_t j = parse_index(words[1], *dim_);
      const auto key = std::minmax(i, j);
      if (metric_.count(key)) fail("duplicate metric entry " + std::to_string(i) + " " + std::to_string(j), lead);
      metric_.emplace(key, parse_at(line, words[2].column, line.size()));
    } else if (keyword == "xi") {
      if (xi_name_) fail("duplicate 'xi'", lead);
      const auto words = split_words(line, kw_end);
      if (words.size() != 1) fail("'xi' takes one frame name", kw_end);
      xi_name_ = std::string(words[0].text);
      xi_line_ = line_no_;
      xi_column_ = words[0].column;
    } else {
      fail("unknown keyword '" + std::string(keyword) + "'", lead);
    }
  }

  Manifold finish() {
    if (!dim_) fail("missing 'dim'", 0);
    if (!coords_) fail("missing 'coords'", 0);
    if (frame_rows_.size() != *dim_) {
      fail("expected " + std::to_string(*dim_) + " frame lines, got " + std::to_string(frame_rows_.size()), 0);
    }
    const std::size_t n = *dim_;
    ExprMatrix frame(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < n; ++a) frame(i, a) = frame_rows_[i][a];
    }
    ExprMatrix metric(n);
    for (const auto& [key, value] : metric_) {
      metric(key.first - 1, key.second - 1) = value;
      metric(key.second - 1, key.first - 1) = value;
    }
    std::optional<std::size_t> xi;
    if (xi_name_) {
      const auto it = std::find(frame_names_.begin(), frame_names_.end(), *xi_name_);
      if (it == frame_names_.end()) throw ParseError("unknown frame '" + *xi_name_ + "'", xi_column_, xi_line_);
      xi = static_cast<std::size_t>(it - frame_names_.begin());
    }
    return Manifold(coords_, frame_names_, std::move(frame), std::move(metric), xi);
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  std::optional<std::size_t> dim_;
  Coordinates coords_;
  std::vector<std::string> frame_names_;
  std::vector<std::vector<Expr>> frame_rows_;
  std::map<std::pair<std::size_t, std::size_t>, Expr> metric_;
  std::optional<std::string> xi_name_;
  std::size_t xi_line_ = 0;
  std::size_t xi_column_ = 0;
};

}  // namespace

Manifold load_manifold(std::string_view text) { return ManifoldReader(text).read(); }

Manifold load_manifold_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_manifold(buf.str());
}

FrameVector lie_bracket(const Manifold& m, std::size_t i, std::size_t j) {
  if (i >= m.dim() || j >= m.dim()) throw DomainError("frame index out of range");
  return m.bracket(i, j);
}

FrameVector lie_bracket(const Manifold& m, const FrameVector& u, const FrameVector& v) {
  const std::size_t n = m.dim();
  FrameVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || i == j) continue;
      out += (u[i] * v[j]) * m.bracket(i, j);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    out[k] += apply_field(m, u, v[k]) - apply_field(m, v, u[k]);
  }
  return out;
}

Expr apply_field(const Manifold& m, const FrameVector& v, const Expr& f) {
  Expr out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (v[i].is_zero()) continue;
    out += v[i] * m.apply_frame(i, f);
  }
  return out;
}

Expr metric_pair(const Manifold& m, const FrameVector& u, const FrameVector& v) {
  Expr out;
  const auto& g = m.metric();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (v[j].is_zero() || g(i, j).is_zero()) continue;
      out += u[i] * v[j] * g(i, j);
    }
  }
  return out;
}

}  // namespace rpsym
