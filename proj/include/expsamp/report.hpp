#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace expsamp {

/// One field of an emitted row. The kind and digit count fix the printed form:
/// integer "%lld", fixed "%.{digits}f", scientific "%.{digits}e".
struct cell {
  enum class kind { empty, integer, fixed, scientific, text };
  kind k = kind::empty;
  double num = 0.0;
  long long inum = 0;
  int digits = 0;
  std::string text;

  static cell none() { return {}; }
  static cell integer(long long v) { return {kind::integer, static_cast<double>(v), v, 0, {}}; }
  static cell fixed(double v, int digits) { return {kind::fixed, v, 0, digits, {}}; }
  static cell sci(double v, int digits = 6) { return {kind::scientific, v, 0, digits, {}}; }
  static cell str(std::string s) { return {kind::text, 0.0, 0, 0, std::move(s)}; }
};

struct report_row {
  cell param;
  cell value;
  cell reference;
  cell abs_err;
};

/// A titled block of rows; notes only appear in text output.
struct report {
  std::string title;
  std::vector<report_row> rows;
  std::vector<std::string> notes;
};

enum class output_format { text, csv, json };

namespace detail {

inline std::string fmt_double(const char* f, int prec, double v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, prec, v);
  return buf;
}

inline std::string render_cell(const cell& c) {
  switch (c.k) {
    case cell::kind::empty: return {};
    case cell::kind::integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld", c.inum);
      return buf;
    }
    case cell::kind::fixed: return fmt_double("%.*f", c.digits, c.num);
    case cell::kind::scientific: return fmt_double("%.*e", c.digits, c.num);
    case cell::kind::text: return c.text;
  }
  return {};
}

inline bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

/// Classify a raw numeric or text token the way the renderer produced it.
inline cell classify_token(std::string_view s) {
  if (s.empty()) return cell::none();
  const std::string tok(s);
  if (is_integer_token(s)) return cell::integer(std::strtoll(tok.c_str(), nullptr, 10));
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() + tok.size() && (std::isdigit(static_cast<unsigned char>(tok.back())))) {
    const std::size_t e = tok.find_first_of("eE");
    const std::size_t dot = tok.find('.');
    const std::size_t mant_end = e == std::string::npos ? tok.size() : e;
    const int digits = dot == std::string::npos || dot > mant_end ? 0 : static_cast<int>(mant_end - dot - 1);
    return e != std::string::npos ? cell::sci(v, digits) : cell::fixed(v, digits);
  }
  return cell::str(tok);
}

inline constexpr const char* csv_header = "param,value,reference,abs_err";

}  // namespace detail

/// One header, then the rows of every report in order; LF line endings.
inline std::string render_csv(const std::vector<report>& reports) {
  std::string out = std::string(detail::csv_header) + "\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += detail::render_cell(row.param) + "," +
             detail::render_cell(row.value) + "," +
             detail::render_cell(row.reference) + "," +
             detail::render_cell(row.abs_err) + "\n";
    }
  }
  return out;
}

/// A single JSON array of row objects {param, value, reference, abs_err};
/// empty cells are null, text cells strings, numbers keep their printed digits.
inline std::string render_json(const std::vector<report>& reports) {
  auto field = [](const cell& c) -> std::string {
    if (c.k == cell::kind::empty) return "null";
    if (c.k == cell::kind::text) return nlohmann::json(c.text).dump();
    return detail::render_cell(c);
  };
  std::string out = "[";
  bool first = true;
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += first ? "\n" : ",\n";
      first = false;
      out += "  {\"param\": " + field(row.param) + ", \"value\": " + field(row.value) +
             ", \"reference\": " + field(row.reference) +
             ", \"abs_err\": " + field(row.abs_err) + "}";
    }
  }
  out += first ? "]\n" : "\n]\n";
  return out;
}

inline std::string render_text(const std::vector<report>& reports) {
  std::string out;
  bool first = true;
  for (const auto& r : reports) {
    if (!first) out += "\n";
    first = false;
    if (!r.title.empty()) out += "# " + r.title + "\n";
    std::vector<std::array<std::string, 4>> cells;
    cells.push_back({"param", "value", "reference", "abs_err"});
    for (const auto& row : r.rows) {
      cells.push_back({detail::render_cell(row.param),
                       detail::render_cell(row.value),
                       detail::render_cell(row.reference),
                       detail::render_cell(row.abs_err)});
    }
    std::array<std::size_t, 4> width{};
    for (const auto& c : cells) {
      for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], c[i].size());
    }
    if (!r.rows.empty()) {
      for (const auto& c : cells) {
        std::string line;
        for (std::size_t i = 0; i < 4; ++i) {
          std::string f = c[i];
          if (i + 1 < 4) f.resize(width[i], ' ');
          line += f;
          if (i + 1 < 4) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
      }
    }
    for (const auto& n : r.notes) out += "# " + n + "\n";
  }
  return out;
}

inline std::string render(const std::vector<report>& reports, output_format fmt) {
  switch (fmt) {
    case output_format::csv: return render_csv(reports);
    case output_format::json: return render_json(reports);
    case output_format::text: return render_text(reports);
  }
  return {};
}

/// Parses render_csv output back into rows (as a single untitled report).
inline report parse_csv(std::string_view text) {
  report r;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != detail::csv_header) throw std::invalid_argument("csv: unexpected header");
      header = false;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t s = 0;
    while (true) {
      const std::size_t comma = line.find(',', s);
      f.push_back(line.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    if (f.size() != 4) throw std::invalid_argument("csv: expected 4 fields");
    r.rows.push_back({detail::classify_token(f[0]), detail::classify_token(f[1]), detail::classify_token(f[2]),
                      detail::classify_token(f[3])});
  }
  if (header) throw std::invalid_argument("csv: missing header");
  return r;
}

namespace detail {

/// SAX consumer that keeps the raw spelling of numbers.
class row_sax : public nlohmann::json_sax<nlohmann::json> {
 public:
  explicit row_sax(report& out) : out_(out) {}

  bool null() override { return put(cell::none()); }
  bool boolean(bool) override { return fail("boolean"); }
  bool number_integer(number_integer_t v) override { return put(cell::integer(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(cell::integer(static_cast<long long>(v))); }
  bool number_float(number_float_t, const string_t& raw) override { return put(classify_token(raw)); }
  bool string(string_t& s) override { return put(cell::str(s)); }
  bool binary(binary_t&) override { return fail("binary"); }
  bool start_object(std::size_t) override {
    if (depth_ != 1) return fail("object placement");
    ++depth_;
    out_.rows.emplace_back();
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ != 0) return fail("nested array");
    ++depth_;
    return true;
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& e) override {
    throw std::invalid_argument(std::string("json: ") + e.what());
  }

 private:
  bool put(cell c) {
    if (depth_ != 2) return fail("value placement");
    auto& row = out_.rows.back();
    if (key_ == "param") row.param = std::move(c);
    else if (key_ == "value") row.value = std::move(c);
    else if (key_ == "reference") row.reference = std::move(c);
    else if (key_ == "abs_err") row.abs_err = std::move(c);
    else return fail("key '" + key_ + "'");
    return true;
  }
  bool fail(const std::string& what) { throw std::invalid_argument("json: unexpected " + what); }

  report& out_;
  int depth_ = 0;
  std::string key_;
};

}  // namespace detail

inline report parse_json(std::string_view text) {
  report r;
  detail::row_sax sax(r);
  nlohmann::json::sax_parse(text.begin(), text.end(), &sax);
  return r;
}

}  // namespace expsamp
