#include "curvcone/operator_file.hpp"

#include <fstream>
#include <ios>
#include <sstream>

#include <nlohmann/json.hpp>

namespace curvcone {

using nlohmann::json;

ModCurvOp OperatorFile::op() const {
  try {
    return ModCurvOp(n, SymMatRat(entries));
  } catch (const std::invalid_argument&) {
    throw ParseError("entries are not symmetric");
  }
}

namespace {

Rat entry_value(const json& v) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(std::to_string(v.get<long long>()));
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad rational entry: ") + e.what());
  }
  throw ParseError("entries must be integers or rational strings");
}

}  // namespace

OperatorFile parse_operator(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("missing integer field \"n\"");
  if (!doc.contains("basis") || doc["basis"] != "plucker-lex") throw ParseError("basis must be \"plucker-lex\"");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("missing array field \"entries\"");
  OperatorFile out;
  long long n = doc["n"].get<long long>();
  if (n < 2 || n > 64) throw DimensionError("n must lie in [2, 64]");
  out.n = static_cast<int>(n);
  const int d = choose2(out.n);
  const json& rows = doc["entries"];
  if (static_cast<int>(rows.size()) != d) throw DimensionError("expected " + std::to_string(d) + " rows");
  out.entries = Matrix<Rat>(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError("each row must be an array");
    if (static_cast<int>(row.size()) != d) throw DimensionError("row " + std::to_string(i + 1) + " has wrong length");
    for (int j = 0; j < d; ++j) out.entries(i, j) = entry_value(row[static_cast<std::size_t>(j)]);
  }
  if (doc.contains("signature")) {
    if (!doc["signature"].is_number_integer()) throw ParseError("signature must be an integer");
    long long nu = doc["signature"].get<long long>();
    if (nu < 0 || nu > n) throw ParseError("signature must lie in [0, n]");
    out.signature = static_cast<int>(nu);
  } else {
    out.op();
  }
  return out;
}

OperatorFile parse_operator_string(const std::string& text) {
  std::istringstream in(text);
  return parse_operator(in);
}

OperatorFile read_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return parse_operator(in);
}

void write_operator(std::ostream& out, const OperatorFile& file) {
  const int d = file.entries.rows();
  out << "{\n  \"n\": " << file.n << ",\n  \"basis\": \"plucker-lex\",\n";
  if (file.signature) out << "  \"signature\": " << *file.signature << ",\n";
  out << "  \"entries\": [\n";
  for (int i = 0; i < d; ++i) {
    out << "    [";
    for (int j = 0; j < d; ++j) out << (j ? ", " : "") << '"' << to_string(file.entries(i, j)) << '"';
    out << "]" << (i + 1 < d ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
}

std::string serialize_operator(const OperatorFile& file) {
  std::ostringstream out;
  write_operator(out, file);
  return out.str();
}

OperatorFile to_file(const ModCurvOp& op, std::optional<int> signature) {
  return OperatorFile{op.n(), op.matrix().matrix(), signature};
}

}  // namespace curvcone
