#include "monodep/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "monodep/errors.hpp"

namespace monodep::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // row has content (distinguishes "" from no row)
  int c;
  while ((c = in.get()) != std::char_traits<char>::eof()) {
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;  // CRLF: the newline is handled by the '\n' branch
      case '\n':
        if (field_started || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
          field_started = false;
        }
        break;
      default:
        field.push_back(ch);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw ValidationError("csv: unterminated quoted field");
  }
  if (field_started || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

CsvTable read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows = read_csv_rows(in);
  if (rows.empty()) {
    throw ValidationError("csv: empty input, expected a header row");
  }
  CsvTable table;
  table.header = std::move(rows.front());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != table.header.size()) {
      throw ValidationError("csv: row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " fields, header has " +
                            std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(rows[i]));
  }
  return table;
}

bool parse_cell(const std::string& cell, double& out) {
  std::size_t begin = 0, end = cell.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(cell[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(cell[end - 1]))) --end;
  if (begin == end) return false;
  std::string t = cell.substr(begin, end - begin);
  if (t.size() <= 3) {
    std::string lower = t;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "na" || lower == "nan") return false;
  }
  const char* first = t.c_str();
  const char* last = first + t.size();
  if (*first == '+') ++first;  // from_chars rejects an explicit plus sign
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("csv: cell '" + cell + "' is not a finite number");
  }
  out = value;
  return true;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") != std::string::npos) {
      out << '"';
      for (char ch : f) {
        if (ch == '"') out << "\"\"";
        else out << ch;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::object;
  return v;
}

JsonValue& JsonValue::operator[](const std::string& key) {
  if (kind_ == Kind::null) kind_ = Kind::object;
  if (kind_ != Kind::object) throw ValidationError("json: [] on a non-object");
  for (auto& [k, v] : members_) {
    if (k == key) return v;
  }
  members_.emplace_back(key, JsonValue());
  return members_.back().second;
}

void JsonValue::push_back(JsonValue v) {
  if (kind_ == Kind::null) kind_ = Kind::array;
  if (kind_ != Kind::array) throw ValidationError("json: push_back on a non-array");
  items_.push_back(std::move(v));
}

namespace {

void write_json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out << buf;
        } else {
          out << ch;
        }
    }
  }
  out << '"';
}

void pad(std::ostream& out, int indent) {
  for (int i = 0; i < indent; ++i) out << ' ';
}

}  // namespace

void JsonValue::write(std::ostream& out, int indent) const {
  switch (kind_) {
    case Kind::null:
      out << "null";
      break;
    case Kind::boolean:
      out << (bool_ ? "true" : "false");
      break;
    case Kind::integer:
      out << int_;
      break;
    case Kind::number:
      if (std::isfinite(num_)) out << format_double(num_);
      else out << "null";
      break;
    case Kind::string:
      write_json_string(out, str_);
      break;
    case Kind::array:
      if (items_.empty()) {
        out << "[]";
        break;
      }
      out << "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        pad(out, indent + 2);
        items_[i].write(out, indent + 2);
        if (i + 1 < items_.size()) out << ',';
        out << '\n';
      }
      pad(out, indent);
      out << ']';
      break;
    case Kind::object:
      if (members_.empty()) {
        out << "{}";
        break;
      }
      out << "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        pad(out, indent + 2);
        write_json_string(out, members_[i].first);
        out << ": ";
        members_[i].second.write(out, indent + 2);
        if (i + 1 < members_.size()) out << ',';
        out << '\n';
      }
      pad(out, indent);
      out << '}';
      break;
  }
}

std::string JsonValue::dump() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace monodep::io
