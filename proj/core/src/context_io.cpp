#include "fca/context_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace fca {
namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  return lines;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) throw ParseError(line, "expected a non-negative count, got '" + s + "'");
  return v;
}

AttributeSet parse_row(std::string_view row, std::size_t width, std::size_t line) {
  if (row.size() != width)
    throw ParseError(line, "row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(width));
  AttributeSet s(width);
  for (std::size_t m = 0; m < width; ++m) {
    if (row[m] == 'X' || row[m] == 'x')
      s.insert(m);
    else if (row[m] != '.')
      throw ParseError(line, std::string("invalid cell '") + row[m] + "', expected 'X' or '.'");
  }
  return s;
}

// Re-raises construction errors (duplicate names etc.) as parse errors.
template <typename F>
FormalContext build_checked(F&& build, std::size_t line) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

FormalContext read_cxt(std::string_view text) {
  auto lines = split_lines(text);
  auto at = [&](std::size_t i) -> const std::string& {
    if (i >= lines.size()) throw ParseError(i + 1, "unexpected end of input");
    return lines[i];
  };
  if (at(0) != "B") throw ParseError(1, "expected 'B' header");
  if (!at(1).empty()) throw ParseError(2, "expected empty line");
  const std::size_t g = parse_count(at(2), 3);
  const std::size_t m = parse_count(at(3), 4);
  if (!at(4).empty()) throw ParseError(5, "expected empty line");
  std::size_t pos = 5;
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < g; ++i, ++pos) objects.push_back(at(pos));
  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < m; ++i, ++pos) attributes.push_back(at(pos));
  std::vector<AttributeSet> rows;
  for (std::size_t i = 0; i < g; ++i, ++pos) rows.push_back(parse_row(at(pos), m, pos + 1));
  for (; pos < lines.size(); ++pos)
    if (!lines[pos].empty()) throw ParseError(pos + 1, "unexpected trailing content");
  return build_checked([&] { return FormalContext(std::move(objects), std::move(attributes), std::move(rows)); }, 6);
}

std::string write_cxt(const FormalContext& ctx) {
  std::ostringstream out;
  out << "B\n\n" << ctx.num_objects() << '\n' << ctx.num_attributes() << "\n\n";
  for (const auto& o : ctx.object_names()) out << o << '\n';
  for (const auto& a : ctx.attribute_names()) out << a << '\n';
  for (const auto& r : ctx.rows()) out << r.to_row_string() << '\n';
  return out.str();
}

// Minimal RFC 4180 field splitting; quoted fields may contain commas and "".
std::vector<std::string> split_csv_record(const std::string& line, std::size_t lineno) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw ParseError(lineno, "unterminated quoted field");
  cells.push_back(std::move(cell));
  return cells;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

FormalContext read_csv(std::string_view text) {
  auto lines = split_lines(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header row");
  auto header = split_csv_record(lines[0], 1);
  if (!header.front().empty() && header.front().find_first_not_of(' ') != std::string::npos)
    throw ParseError(1, "header must start with an empty cell");
  std::vector<std::string> attributes(header.begin() + 1, header.end());
  const std::size_t m = attributes.size();
  std::vector<std::string> objects;
  std::vector<AttributeSet> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto cells = split_csv_record(lines[i], lineno);
    if (cells.size() != m + 1)
      throw ParseError(lineno, "row has " + std::to_string(cells.size() - 1) + " cells, expected " + std::to_string(m));
    AttributeSet row(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& c = cells[k + 1];
      if (c == "1" || c == "X" || c == "x")
        row.insert(k);
      else if (c != "0" && !c.empty())
        throw ParseError(lineno, "invalid cell '" + c + "', expected 1/0 or X/empty");
    }
    objects.push_back(std::move(cells[0]));
    rows.push_back(std::move(row));
  }
  return build_checked([&] { return FormalContext(std::move(objects), std::move(attributes), std::move(rows)); }, 1);
}

std::string write_csv(const FormalContext& ctx) {
  std::ostringstream out;
  for (const auto& a : ctx.attribute_names()) out << ',' << csv_escape(a);
  out << '\n';
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    out << csv_escape(ctx.object_names()[g]);
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) out << ',' << (ctx.incident(g, m) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

}  // namespace

ContextFormat format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".cxt") return ContextFormat::Cxt;
  if (ext == ".csv") return ContextFormat::Csv;
  if (ext == ".json") return ContextFormat::Json;
  throw ParseError(0, "unsupported context file extension '" + ext + "' (expected .cxt, .csv or .json)");
}

nlohmann::json context_to_json(const FormalContext& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : ctx.rows()) rows.push_back(r.to_row_string());
  return {{"objects", ctx.object_names()}, {"attributes", ctx.attribute_names()}, {"rows", std::move(rows)}};
}

FormalContext context_from_json(const nlohmann::json& j) {
  try {
    auto objects = j.at("objects").get<std::vector<std::string>>();
    auto attributes = j.at("attributes").get<std::vector<std::string>>();
    const auto& jrows = j.at("rows");
    if (!jrows.is_array()) throw ParseError(0, "'rows' must be an array");
    std::vector<AttributeSet> rows;
    std::size_t k = 0;
    for (const auto& r : jrows) {
      try {
        rows.push_back(parse_row(r.get<std::string>(), attributes.size(), 0));
      } catch (const ParseError& e) {
        throw ParseError(0, "rows[" + std::to_string(k) + "]: " + e.detail());
      }
      ++k;
    }
    return build_checked([&] { return FormalContext(std::move(objects), std::move(attributes), std::move(rows)); }, 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid context JSON: ") + e.what());
  }
}

FormalContext read_context(std::string_view text, ContextFormat format) {
  switch (format) {
    case ContextFormat::Cxt:
      return read_cxt(text);
    case ContextFormat::Csv:
      return read_csv(text);
    case ContextFormat::Json: {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
      }
      return context_from_json(j);
    }
  }
  throw ParseError(0, "unknown format");
}

std::string write_context(const FormalContext& ctx, ContextFormat format) {
  switch (format) {
    case ContextFormat::Cxt:
      return write_cxt(ctx);
    case ContextFormat::Csv:
      return write_csv(ctx);
    case ContextFormat::Json:
      return context_to_json(ctx).dump(2) + '\n';
  }
  return {};
}

FormalContext load_context(const std::filesystem::path& path) {
  const auto format = format_for_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return read_context(buf.str(), format);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void save_context(const FormalContext& ctx, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << write_context(ctx, format_for_path(path));
}

}  // namespace fca
