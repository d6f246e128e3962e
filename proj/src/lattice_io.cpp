#include "vfk/lattice_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vfk {

namespace {

using nlohmann::json;

Eigen::MatrixXd rowsToMatrix(const json& rows, const char* key) {
  if (!rows.is_array() || rows.empty()) {
    throw LatticeError(ErrorKind::ParseError, std::string("\"") + key + "\" must be a non-empty array of rows");
  }
  const std::size_t width = rows.front().is_array() ? rows.front().size() : 0;
  if (width == 0) {
    throw LatticeError(ErrorKind::ParseError, std::string("\"") + key + "\" rows must be non-empty arrays");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != width) {
      throw LatticeError(ErrorKind::DimensionMismatch, std::string("\"") + key + "\" row " +
                                                           std::to_string(r + 1) + " has a different length");
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (!row[c].is_number()) {
        throw LatticeError(ErrorKind::ParseError, std::string("\"") + key + "\" entries must be numbers");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }
  return out;
}

json matrixToRows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Lattice parseLattice(const std::string& text, Tolerance tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LatticeError(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) {
    throw LatticeError(ErrorKind::ParseError, "lattice file must hold a JSON object");
  }
  const bool hasBasis = doc.contains("basis");
  const bool hasSelling = doc.contains("selling");
  if (hasBasis == hasSelling) {
    throw LatticeError(ErrorKind::ParseError, "exactly one of \"basis\" and \"selling\" must be present");
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw LatticeError(ErrorKind::ParseError, "\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  if (hasBasis) {
    // Rows are superbasis vectors; the library stores them as columns.
    const Eigen::MatrixXd rows = rowsToMatrix(doc["basis"], "basis");
    return Lattice(ObtuseSuperbasis::fromColumns(rows.transpose(), tol), std::move(name));
  }
  return Lattice(SellingMatrix::fromGram(rowsToMatrix(doc["selling"], "selling"), tol), std::move(name));
}

Lattice readLatticeFile(const std::filesystem::path& path, Tolerance tol) {
  std::ifstream in(path);
  if (!in) throw LatticeError(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseLattice(buffer.str(), tol);
}

std::string formatLattice(const Lattice& lattice) {
  json doc = json::object();
  if (!lattice.name().empty()) doc["name"] = lattice.name();
  if (const auto* sb = lattice.basis()) {
    doc["basis"] = matrixToRows(sb->vectors().transpose());
  } else {
    doc["selling"] = matrixToRows(lattice.selling().matrix());
  }
  return doc.dump(2) + "\n";
}

void writeLatticeFile(const std::filesystem::path& path, const Lattice& lattice) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LatticeError(ErrorKind::ParseError, "cannot write " + path.string());
  out << formatLattice(lattice);
}

}  // namespace vfk
