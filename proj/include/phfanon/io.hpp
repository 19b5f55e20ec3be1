#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phfanon/error.hpp"
#include "phfanon/general_scheme.hpp"
#include "phfanon/phf.hpp"

namespace phfanon {

// A parsed input file: either a PHF array or a general setup.
//
// PHF files:                      General files:
//   # comment                       general t=3
//   phf t=2                         p=7 n=7 v=7
//   3 6 2                           P 1: 1 2 4
//   1 1 1 2 2 2                     ...
//   1 1 2 1 2 2                     K 1: 2 3 4 5 6 7
//   1 2 2 1 1 2                     ...
struct InputDocument {
  enum class Kind { Phf, General };

  Kind kind = Kind::Phf;
  std::optional<PhfArray> phf;
  std::optional<GeneralSetup> general;
  std::string source;

  // Value equality over the payload; the source path is provenance only.
  friend bool operator==(const InputDocument& a, const InputDocument& b) {
    return a.kind == b.kind && a.phf == b.phf && a.general == b.general;
  }
};

namespace detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

// One logical line: comments stripped, ':' split off, whitespace separated.
inline std::vector<Token> tokenize_line(const std::string& raw, std::size_t line) {
  std::vector<Token> tokens;
  std::string current;
  std::size_t start = 0;
  const auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(Token{current, line, start});
      current.clear();
    }
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else if (c == ':') {
      flush();
      tokens.push_back(Token{":", line, i + 1});
    } else {
      if (current.empty()) start = i + 1;
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

inline long long parse_integer(const Token& token, const char* what) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(token.text, &used);
    if (used != token.text.size()) throw std::invalid_argument(token.text);
    return value;
  } catch (const std::exception&) {
    throw ParseError(token.line, token.column,
                     std::string("expected ") + what + ", got '" + token.text + "'");
  }
}

// Parses "name=value" or a bare integer when `name` is empty.
inline long long parse_named_integer(const Token& token, const std::string& name) {
  const std::string prefix = name + "=";
  if (token.text.rfind(prefix, 0) != 0) {
    throw ParseError(token.line, token.column,
                     "expected '" + prefix + "<count>', got '" + token.text + "'");
  }
  Token value{token.text.substr(prefix.size()), token.line,
              token.column + prefix.size()};
  return parse_integer(value, name.c_str());
}

inline int parse_count(const Token& token, const char* what, long long max_value) {
  const long long value = parse_integer(token, what);
  if (value < 1 || value > max_value) {
    throw ParseError(token.line, token.column,
                     std::string(what) + " " + token.text + " out of range 1.." +
                         std::to_string(max_value));
  }
  return static_cast<int>(value);
}

}  // namespace detail

inline InputDocument parse_input(std::istream& in, const std::string& source = "<stream>") {
  using detail::Token;

  std::vector<std::vector<Token>> lines;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    std::vector<Token> tokens = detail::tokenize_line(raw, number);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  if (lines.empty()) throw ParseError(1, 1, "empty input");

  const std::vector<Token>& header = lines.front();
  InputDocument document;
  document.source = source;

  if (header.front().text == "phf") {
    if (header.size() != 2) {
      throw ParseError(header.front().line, header.front().column,
                       "phf header must be 'phf t=<t>'");
    }
    const int t = static_cast<int>(detail::parse_named_integer(header[1], "t"));

    if (lines.size() < 2) {
      throw ParseError(header.front().line, 1, "missing dimension line '<l> <n> <m>'");
    }
    const std::vector<Token>& dims = lines[1];
    if (dims.size() != 3) {
      throw ParseError(dims.front().line, dims.front().column,
                       "dimension line must be '<l> <n> <m>'");
    }
    const int l = detail::parse_count(dims[0], "row count l", 100000);
    const int n = detail::parse_count(dims[1], "participant count n", 100000);
    const int m = detail::parse_count(dims[2], "symbol count m", 100000);
    if (t < 2 || t > m || t > n) {
      throw ParseError(header[1].line, header[1].column,
                       "need 2 <= t <= m and t <= n (t=" + std::to_string(t) +
                           ", m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
    }

    if (lines.size() != static_cast<std::size_t>(l) + 2) {
      throw ParseError(lines.back().front().line, 1,
                       "expected " + std::to_string(l) + " array rows, found " +
                           std::to_string(lines.size() - 2));
    }
    std::vector<Symbol> cells;
    cells.reserve(static_cast<std::size_t>(l) * static_cast<std::size_t>(n));
    for (int r = 0; r < l; ++r) {
      const std::vector<Token>& row = lines[static_cast<std::size_t>(r) + 2];
      if (row.size() != static_cast<std::size_t>(n)) {
        throw ParseError(row.front().line, row.front().column,
                         "row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(n));
      }
      for (const Token& token : row) {
        const long long value = detail::parse_integer(token, "symbol");
        if (value < 1 || value > m) {
          throw ParseError(token.line, token.column,
                           "symbol " + token.text + " outside 1.." + std::to_string(m));
        }
        cells.push_back(static_cast<Symbol>(value));
      }
    }

    document.kind = InputDocument::Kind::Phf;
    document.phf.emplace(l, n, m, t, std::move(cells));
    if (has_empty_component(*document.phf)) {
      throw Error(ErrorCode::Degenerate,
                  source + ": some component (r, j) is held by no participant");
    }
    return document;
  }

  if (header.front().text == "general") {
    if (header.size() != 2) {
      throw ParseError(header.front().line, header.front().column,
                       "general header must be 'general t=<t>'");
    }
    const int t = static_cast<int>(detail::parse_named_integer(header[1], "t"));

    if (lines.size() < 2) {
      throw ParseError(header.front().line, 1, "missing 'p=<p> n=<n> v=<v>' line");
    }
    const std::vector<Token>& dims = lines[1];
    if (dims.size() != 3) {
      throw ParseError(dims.front().line, dims.front().column,
                       "expected 'p=<p> n=<n> v=<v>'");
    }
    const int p = static_cast<int>(detail::parse_named_integer(dims[0], "p"));
    const int n = static_cast<int>(detail::parse_named_integer(dims[1], "n"));
    const int v = static_cast<int>(detail::parse_named_integer(dims[2], "v"));
    if (p < 1 || n < 1 || v < 1) {
      throw ParseError(dims[0].line, dims[0].column, "p, n and v must be positive");
    }

    std::vector<std::optional<std::vector<int>>> holdings(static_cast<std::size_t>(n));
    std::vector<std::optional<std::vector<int>>> keys(static_cast<std::size_t>(v));
    for (std::size_t li = 2; li < lines.size(); ++li) {
      const std::vector<Token>& tokens = lines[li];
      const Token& head = tokens.front();
      const bool is_holding = head.text == "P";
      if (!is_holding && head.text != "K") {
        throw ParseError(head.line, head.column,
                         "expected 'P <c>: ...' or 'K <i>: ...', got '" + head.text + "'");
      }
      if (tokens.size() < 3 || tokens[2].text != ":") {
        throw ParseError(head.line, head.column,
                         std::string(is_holding ? "P" : "K") + " line must be '" +
                             (is_holding ? "P <c>: <components>" : "K <i>: <components>") + "'");
      }
      const int index =
          detail::parse_count(tokens[1], is_holding ? "participant index" : "key index",
                              is_holding ? n : v);
      std::vector<int> components;
      for (std::size_t ti = 3; ti < tokens.size(); ++ti) {
        components.push_back(detail::parse_count(tokens[ti], "component", p));
      }
      auto& slot = is_holding ? holdings[static_cast<std::size_t>(index - 1)]
                              : keys[static_cast<std::size_t>(index - 1)];
      if (slot.has_value()) {
        throw ParseError(head.line, head.column,
                         std::string(is_holding ? "duplicate participant " : "duplicate key ") +
                             std::to_string(index));
      }
      slot = std::move(components);
    }

    std::vector<std::vector<int>> holdings_list;
    for (int c = 1; c <= n; ++c) {
      auto& slot = holdings[static_cast<std::size_t>(c - 1)];
      if (!slot.has_value()) {
        throw ParseError(lines.back().front().line, 1,
                         "missing holdings line for participant " + std::to_string(c));
      }
      holdings_list.push_back(std::move(*slot));
    }
    std::vector<std::vector<int>> key_list;
    for (int i = 1; i <= v; ++i) {
      auto& slot = keys[static_cast<std::size_t>(i - 1)];
      if (!slot.has_value()) {
        throw ParseError(lines.back().front().line, 1,
                         "missing definition for key " + std::to_string(i));
      }
      key_list.push_back(std::move(*slot));
    }

    document.kind = InputDocument::Kind::General;
    document.general.emplace(p, n, t, std::move(holdings_list), std::move(key_list));
    return document;
  }

  throw ParseError(header.front().line, header.front().column,
                   "unknown header '" + header.front().text +
                       "' (expected 'phf' or 'general')");
}

inline InputDocument parse_input_string(const std::string& text,
                                        const std::string& source = "<string>") {
  std::istringstream in(text);
  return parse_input(in, source);
}

inline InputDocument parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return parse_input(in, path);
}

// Canonical serialized form; parsing it back yields an equal document.
inline std::string serialize_input(const InputDocument& document) {
  std::ostringstream out;
  if (document.kind == InputDocument::Kind::Phf) {
    const PhfArray& array = *document.phf;
    out << "phf t=" << array.threshold() << '\n';
    out << array.rows() << ' ' << array.cols() << ' ' << array.symbol_count() << '\n';
    for (RowIndex r = 1; r <= array.rows(); ++r) {
      for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
        if (c > 1) out << ' ';
        out << array.at(r, c);
      }
      out << '\n';
    }
    return out.str();
  }
  const GeneralSetup& setup = *document.general;
  out << "general t=" << setup.threshold() << '\n';
  out << "p=" << setup.component_count() << " n=" << setup.participant_count()
      << " v=" << setup.key_count() << '\n';
  for (int c = 1; c <= setup.participant_count(); ++c) {
    out << "P " << c << ':';
    for (const int component : setup.holdings_of(c)) out << ' ' << component;
    out << '\n';
  }
  for (int i = 1; i <= setup.key_count(); ++i) {
    out << "K " << i << ':';
    for (const int component : setup.key_components(i)) out << ' ' << component;
    out << '\n';
  }
  return out.str();
}

}  // namespace phfanon
