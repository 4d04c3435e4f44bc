#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "code.hpp"
#include "cube.hpp"
#include "errors.hpp"
#include "ordered.hpp"
#include "poset.hpp"

namespace poset_codes {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

inline std::int64_t parse_int(std::string_view s, int line, const std::string& what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, "expected an integer for " + what + ", got '" + std::string(s) + "'");
  }
  return v;
}

// Reads `key=<int>`.
inline std::int64_t parse_assignment(std::string_view s, std::string_view key, int line) {
  s = trim(s);
  if (s.substr(0, key.size()) != key || s.size() <= key.size() || s[key.size()] != '=') {
    throw ParseError(line, "expected '" + std::string(key) + "=<int>', got '" + std::string(s) + "'");
  }
  return parse_int(s.substr(key.size() + 1), line, std::string(key));
}

struct Line {
  int number;
  std::string text;
};

// Non-empty lines with comments stripped.
inline std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto s = strip_comment(raw);
    if (!s.empty()) out.push_back({number, std::string(s)});
  }
  return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// ---- posets ---------------------------------------------------------------

inline Poset read_poset(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, "empty poset file, expected 'n=<int>'");
  const auto n = detail::parse_assignment(lines[0].text, "n", lines[0].number);
  if (n < 1 || n > Poset::kMaxElements) {
    throw ParseError(lines[0].number, "n must be between 1 and " + std::to_string(Poset::kMaxElements));
  }
  std::vector<std::pair<int, int>> covers;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [number, text] = lines[i];
    const auto lt = text.find('<');
    if (lt == std::string::npos) throw ParseError(number, "expected '<lo> < <hi>', got '" + text + "'");
    const auto lo = detail::parse_int(std::string_view(text).substr(0, lt), number, "lo");
    const auto hi = detail::parse_int(std::string_view(text).substr(lt + 1), number, "hi");
    if (lo < 1 || lo > n || hi < 1 || hi > n) {
      throw ParseError(number, "label out of range 1.." + std::to_string(n) + " in '" + text + "'");
    }
    covers.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
  }
  try {
    return Poset::from_cover_relations(static_cast<int>(n), covers);
  } catch (const InvalidPosetError& e) {
    throw ParseError(lines.back().number, e.what());
  }
}

inline Poset read_poset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open poset file '" + path.string() + "'");
  try {
    return read_poset(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.message());
  }
}

inline void write_poset(std::ostream& out, const Poset& poset) {
  out << "n=" << poset.size() << "\n";
  for (const auto& [lo, hi] : poset.covers()) out << lo << " < " << hi << "\n";
}

// ---- codes ----------------------------------------------------------------

namespace detail {

inline std::vector<std::int64_t> parse_row(const std::string& token, int line) {
  std::vector<std::int64_t> row;
  if (token.find(',') != std::string::npos) {
    std::string_view rest = token;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_int(rest.substr(0, comma), line, "matrix entry"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return row;
  }
  for (char c : token) {
    if (c < '0' || c > '9') throw ParseError(line, "bad digit '" + std::string(1, c) + "' in row '" + token + "'");
    row.push_back(c - '0');
  }
  return row;
}

}  // namespace detail

/// Parses the code text format. `base` resolves relative `poset=file:` paths.
inline LinearCode read_code(std::istream& in, const std::filesystem::path& base = {}) {
  auto lines = detail::content_lines(in);
  if (lines.size() < 3) {
    throw ParseError(lines.empty() ? 1 : lines.back().number, "code file needs 'q=', 'poset=' and 'G=' lines");
  }
  const auto q = detail::parse_assignment(lines[0].text, "q", lines[0].number);
  std::optional<PrimeField> field;
  try {
    field.emplace(static_cast<std::uint32_t>(q < 0 ? 0 : q));
  } catch (const UsageError& e) {
    throw ParseError(lines[0].number, e.what());
  }

  const auto& pl = lines[1];
  std::optional<Poset> poset;
  if (pl.text.rfind("poset=", 0) != 0) throw ParseError(pl.number, "expected 'poset=...', got '" + pl.text + "'");
  const std::string spec = pl.text.substr(6);
  auto words = detail::split_ws(spec);
  try {
    if (!words.empty() && words[0] == "ordered") {
      if (words.size() != 3) throw ParseError(pl.number, "expected 'poset=ordered n=<int> r=<int>'");
      const auto n = detail::parse_assignment(words[1], "n", pl.number);
      const auto r = detail::parse_assignment(words[2], "r", pl.number);
      poset = chain_product_poset(static_cast<int>(n), static_cast<int>(r));
    } else if (!words.empty() && words[0] == "hamming") {
      if (words.size() != 2) throw ParseError(pl.number, "expected 'poset=hamming n=<int>'");
      const auto n = detail::parse_assignment(words[1], "n", pl.number);
      if (n < 1 || n > Poset::kMaxElements) throw ParseError(pl.number, "n out of range");
      poset = Poset::antichain(static_cast<int>(n));
    } else if (spec.rfind("file:", 0) == 0) {
      std::filesystem::path p = std::string(detail::trim(spec.substr(5)));
      if (p.is_relative() && !base.empty()) p = base / p;
      poset = read_poset_file(p);
    } else {
      throw ParseError(pl.number, "unknown poset kind '" + spec + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(pl.number, e.what());
  }

  if (detail::trim(lines[2].text) != "G=") throw ParseError(lines[2].number, "expected 'G=', got '" + lines[2].text + "'");
  std::vector<std::vector<std::int64_t>> rows;
  int last_line = lines[2].number;
  for (std::size_t i = 3; i < lines.size(); ++i) {
    for (const auto& tok : detail::split_ws(lines[i].text)) {
      auto row = detail::parse_row(tok, lines[i].number);
      if (static_cast<int>(row.size()) != poset->size()) {
        throw ParseError(lines[i].number, "row '" + tok + "' has " + std::to_string(row.size()) + " entries, expected n=" +
                                              std::to_string(poset->size()));
      }
      for (auto v : row) {
        if (v < 0 || v >= q) throw ParseError(lines[i].number, "entry " + std::to_string(v) + " is not in GF(" + std::to_string(q) + ")");
      }
      rows.push_back(std::move(row));
    }
    last_line = lines[i].number;
  }
  if (rows.empty()) throw ParseError(last_line, "generator matrix has no rows");
  try {
    return LinearCode(Matrix(*field, rows, poset->size()), *poset);
  } catch (const UsageError& e) {
    throw ParseError(last_line, e.what());
  }
}

inline LinearCode read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open code file '" + path.string() + "'");
  try {
    return read_code(in, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.message());
  }
}

/// Writes the code text format. Posets that are not chain products need
/// `poset_ref`, the path written after `poset=file:`.
inline void write_code(std::ostream& out, const LinearCode& code, const std::string& poset_ref = {}) {
  out << "q=" << code.q() << "\n";
  if (auto space = detect_chain_product(code.poset(), code.q())) {
    if (space->r == 1) {
      out << "poset=hamming n=" << space->n << "\n";
    } else {
      out << "poset=ordered n=" << space->n << " r=" << space->r << "\n";
    }
  } else {
    if (poset_ref.empty()) throw UsageError("this poset needs a poset file reference");
    out << "poset=file:" << poset_ref << "\n";
  }
  out << "G=\n";
  const auto& g = code.generator();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (code.q() <= 10) {
        out << g.at(i, j);
      } else {
        out << (j ? "," : "") << g.at(i, j);
      }
    }
    out << "\n";
  }
}

// ---- points ---------------------------------------------------------------

/// `num/den=0.dddddddddddd`, the decimal rounded half up from the exact value.
inline std::string format_coordinate(std::uint64_t num, std::uint64_t den) {
  constexpr int kDigits = 12;
  BigInt scaled = BigInt(num) * big_pow(10, kDigits);
  BigInt rounded = (scaled * 2 + den) / (BigInt(den) * 2);
  BigInt unit = big_pow(10, kDigits);
  BigInt whole = rounded / unit;
  std::string frac = (rounded % unit).str();
  frac.insert(0, kDigits - frac.size(), '0');
  std::ostringstream os;
  os << num << "/" << den << "=" << whole.str() << "." << frac;
  return os.str();
}

inline void write_points_csv(std::ostream& out, const PointSet& ps) {
  for (int i = 1; i <= ps.space.n; ++i) out << (i > 1 ? "," : "") << "x" << i;
  out << "\n";
  const auto den = ps.denominator();
  for (const auto& p : ps.points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_coordinate(p[i], den);
    out << "\n";
  }
}

}  // namespace poset_codes
