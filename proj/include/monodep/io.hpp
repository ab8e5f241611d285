#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace monodep::io {

// Doubles are rendered with 17 significant digits everywhere (JSON and CSV):
// re-parsing reproduces the exact bit pattern, and both formats render
// identically by construction.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-separated, first row is the header, double quotes with "" escapes,
// LF or CRLF line endings. Short rows are an error.
CsvTable read_csv(std::istream& in);

// Same dialect without the header requirement; returns raw rows.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

// Numeric cell parser. Returns false (missing) for empty, "NA" or "NaN" in
// any case after trimming; otherwise the cell must parse completely as a
// finite double or a ValidationError is thrown.
bool parse_cell(const std::string& cell, double& out);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Just enough of a JSON document tree for the CLI output: objects keep
// insertion order, numbers use format_double, NaN/Inf render as null.
class JsonValue {
 public:
  enum class Kind { null, boolean, integer, number, string, array, object };

  JsonValue() = default;
  JsonValue(bool v) : kind_(Kind::boolean), bool_(v) {}
  JsonValue(double v) : kind_(Kind::number), num_(v) {}
  JsonValue(int v) : kind_(Kind::integer), int_(v) {}
  JsonValue(long long v) : kind_(Kind::integer), int_(v) {}
  JsonValue(std::size_t v) : kind_(Kind::integer), int_(static_cast<long long>(v)) {}
  JsonValue(const char* v) : kind_(Kind::string), str_(v) {}
  JsonValue(std::string v) : kind_(Kind::string), str_(std::move(v)) {}

  static JsonValue array();
  static JsonValue object();

  Kind kind() const { return kind_; }

  // Object access: inserts a null member on first use, like a map.
  JsonValue& operator[](const std::string& key);
  void push_back(JsonValue v);

  void write(std::ostream& out, int indent = 0) const;
  std::string dump() const;

 private:
  Kind kind_ = Kind::null;
  bool bool_ = false;
  long long int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

}  // namespace monodep::io
