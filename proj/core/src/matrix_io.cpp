#include "heinzlab/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heinzlab/errors.hpp"

namespace heinzlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (const auto& e : m.entries()) data.push_back({e.real(), e.imag()});
  doc["data"] = std::move(data);
  return doc;
}

ComplexMatrix matrix_from_json(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("data"))
    throw IoError("matrix document must carry rows, cols and data fields");
  std::size_t rows = doc.at("rows").get<std::size_t>();
  std::size_t cols = doc.at("cols").get<std::size_t>();
  const auto& data = doc.at("data");
  if (!data.is_array())
    throw IoError("matrix data must be a list of [re, im] pairs");
  std::vector<std::complex<double>> entries;
  entries.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2)
      throw IoError("matrix data must be a list of [re, im] pairs");
    entries.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

ordered_json parse_document(std::string_view text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw IoError("document is not valid JSON");
  return doc;
}

}  // namespace

std::string serialize_matrix(const ComplexMatrix& m) { return matrix_to_json(m).dump(); }

ComplexMatrix parse_matrix(std::string_view text) {
  return matrix_from_json(parse_document(text));
}

std::string serialize_triple(const TripleDocument& t) {
  ordered_json doc;
  doc["A"] = matrix_to_json(t.a);
  doc["B"] = matrix_to_json(t.b);
  doc["X"] = matrix_to_json(t.x);
  return doc.dump();
}

TripleDocument parse_triple(std::string_view text) {
  ordered_json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B") || !doc.contains("X"))
    throw IoError("triple document must carry A, B and X matrices");
  return TripleDocument{matrix_from_json(doc.at("A")), matrix_from_json(doc.at("B")),
                        matrix_from_json(doc.at("X"))};
}

bool is_triple_document(std::string_view text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  return doc.is_object() && doc.contains("A");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading file '" + path + "'");
  return buffer.str();
}

void write_file(const std::string& path, std::string_view v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file '" + path + "' for writing");
  out << v;
  if (!out) throw IoError("failed writing file '" + path + "'");
}

}  // namespace heinzlab
