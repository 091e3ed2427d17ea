#include "report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "infometric/version.hpp"

namespace infometric::cli {
namespace {

using R = FieldType;

Field real(const char* n) { return {n, R::real}; }
Field integer(const char* n) { return {n, R::integer}; }
Field boolean(const char* n) { return {n, R::boolean}; }
Field text(const char* n) { return {n, R::text}; }
Field optional(Field f) {
  f.optional = true;
  return f;
}
Field json_only(Field f) {
  f.json_only = true;
  return f;
}

const char* type_name(FieldType t) {
  switch (t) {
    case R::real:
      return "real";
    case R::integer:
      return "integer";
    case R::boolean:
      return "boolean";
    case R::text:
      return "text";
  }
  return "text";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

}  // namespace

const Schema& schema_for(Command c) {
  static const Schema bpst{
      {integer("i"), integer("j"), real("value"), real("err"), real("expected"), real("abs_dev"), boolean("converged")},
      {real("lambda"), text("center"), real("collar_constant"), real("expected_diagonal"),
       real("max_rel_err_diagonal"), real("max_abs_offdiagonal"), real("min_eigenvalue"), real("mass"),
       real("mass_err"), real("mass_rel_err"), boolean("converged"), integer("nodes"), integer("doublings"),
       text("isa")}};
  static const Schema cp2{
      {real("t"), real("lambda"), real("closed_radial"), real("quad_radial"), real("rel_err_radial"),
       real("closed_tangential"), real("quad_tangential"), real("rel_err_tangential"), real("quad_radial_err"),
       real("quad_tangential_err"), boolean("converged"), boolean("diverged"), real("printed_closed_radial"),
       real("printed_closed_tangential"), real("printed_rel_err_radial"), real("printed_rel_err_tangential"),
       real("printed_radial_ratio"), boolean("printed_discrepancy")},
      {real("tolerance"), text("transcription"), real("max_rel_err"), boolean("any_printed_discrepancy"),
       text("isa")}};
  static const Schema curv{
      {real("lambda"), real("r"), real("sigma_TN"), real("sigma_TT1"), real("sigma_TT4"), json_only(boolean("stable")),
       json_only(real("fd_change"))},
      {text("preset"), real("scale"), real("lambda_ref"), boolean("all_stable"),
       optional(real("constant_curvature_dev")), optional(real("vertex_sigma_TN")),
       optional(real("vertex_r2_sigma_TT1")), optional(real("vertex_r2_sigma_TT4")),
       optional(real("vertex_fs_coefficient")), optional(boolean("vertex_stable")),
       optional(real("collar_max_deviation")), optional(real("collar_deviation_at_0.05")),
       optional(boolean("collar_monotone"))}};
  static const Schema geod{
      {integer("step"), real("time"), real("lambda"), real("s"), real("lambda_dot"), real("s_dot"), real("energy"),
       real("momentum")},
      {text("preset"), real("dt"), integer("steps"), real("max_energy_drift"), real("max_momentum_drift"),
       real("drift_tol"), boolean("rejected"), integer("substeps")}};
  static const Schema probe{
      {real("eps"), real("log_ratio"), real("length"), real("err"), boolean("converged"), boolean("divergent")},
      {text("preset"), real("lambda0"), real("fitted_slope"), real("tail_slope"), real("expected_slope"),
       real("slope_rel_dev")}};
  static const Schema fixtures{
      {text("name"), real("value"), real("expected"), real("abs_err"), real("rel_err"), real("tolerance"),
       boolean("converged"), boolean("passed")},
      {integer("checks"), integer("failed")}};
  switch (c) {
    case Command::bpst:
      return bpst;
    case Command::cp2:
      return cp2;
    case Command::curv:
      return curv;
    case Command::geod:
      return geod;
    case Command::probe:
      return probe;
    case Command::fixtures:
      return fixtures;
  }
  return fixtures;
}

std::string report_schema() {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  const auto fields = [](const std::vector<Field>& list, bool for_csv) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const Field& f : list) {
      if (for_csv && f.json_only) continue;
      nlohmann::ordered_json entry{{"name", f.name}, {"type", type_name(f.type)}};
      if (f.optional) entry["optional"] = true;
      out.push_back(entry);
    }
    return out;
  };
  for (Command c : {Command::bpst, Command::cp2, Command::curv, Command::geod, Command::probe, Command::fixtures}) {
    const Schema& s = schema_for(c);
    nlohmann::ordered_json entry;
    entry["csv_columns"] = fields(s.columns, true);
    entry["json_row_fields"] = fields(s.columns, false);
    entry["summary"] = fields(s.summary, false);
    doc["commands"][command_name(c)] = entry;
  }
  doc["common"] = nlohmann::ordered_json::array(
      {{{"name", "version"}, {"type", "text"}}, {{"name", "command"}, {"type", "text"}},
       {{"name", "invocation"}, {"type", "text"}}, {{"name", "passed"}, {"type", "boolean"}},
       {{"name", "timestamp"}, {"type", "text"}, {"optional", true}}});
  return doc.dump(2) + "\n";
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Report::Report(Command c) : command_(c), schema_(&schema_for(c)) {}

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != schema_->columns.size()) throw std::logic_error("report row does not match its schema");
  rows_.push_back(std::move(row));
}

void Report::set(const std::string& key, Cell value) {
  for (const Field& f : schema_->summary) {
    if (f.name == key) {
      summary_.emplace_back(key, std::move(value));
      return;
    }
  }
  throw std::logic_error("summary key not in schema: " + key);
}

void Report::write_csv(std::ostream& os) const {
  os << "# version=" << kVersion << " command=" << command_name(command_) << " passed=" << (passed_ ? "true" : "false")
     << '\n';
  os << "# invocation=" << invocation << '\n';
  if (timestamp) os << "# timestamp=" << *timestamp << '\n';
  for (const auto& [key, value] : summary_) os << "# " << key << '=' << cell_text(value) << '\n';
  bool first = true;
  for (const Field& f : schema_->columns) {
    if (f.json_only) continue;
    os << (first ? "" : ",") << f.name;
    first = false;
  }
  os << '\n';
  for (const auto& row : rows_) {
    first = true;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (schema_->columns[k].json_only) continue;
      os << (first ? "" : ",") << cell_text(row[k]);
      first = false;
    }
    os << '\n';
  }
}

void Report::write_json(std::ostream& os) const {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["command"] = command_name(command_);
  doc["invocation"] = invocation;
  if (timestamp) doc["timestamp"] = *timestamp;
  doc["passed"] = passed_;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summary_) summary[key] = cell_json(value);
  doc["summary"] = summary;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json r;
    for (std::size_t k = 0; k < row.size(); ++k) r[schema_->columns[k].name] = cell_json(row[k]);
    rows.push_back(r);
  }
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

}  // namespace infometric::cli
