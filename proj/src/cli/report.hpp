#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infometric/cli.hpp"

namespace infometric::cli {

using Cell = std::variant<double, long long, bool, std::string>;

enum class FieldType { real, integer, boolean, text };

struct Field {
  std::string name;
  FieldType type;
  bool json_only = false;  // omitted from csv so the csv header stays fixed
  bool optional = false;   // summary keys present only with some flags
};

struct Schema {
  std::vector<Field> columns;
  std::vector<Field> summary;
};

const Schema& schema_for(Command c);

class Report {
 public:
  explicit Report(Command c);

  void add_row(std::vector<Cell> row);
  void set(const std::string& key, Cell value);
  void fail() { passed_ = false; }
  void check(bool ok) { passed_ = passed_ && ok; }
  bool passed() const { return passed_; }

  std::string invocation;
  std::optional<std::string> timestamp;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

 private:
  Command command_;
  const Schema* schema_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, Cell>> summary_;
  bool passed_ = true;
};

// 17 significant digits, '.' decimal point, independent of locale.
std::string format_real(double v);

// Shortest text that reads back to the same double; used in labels.
std::string format_short(double v);

}  // namespace infometric::cli
