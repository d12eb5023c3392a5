#pragma once

// Export of matrix representations as one JSON document: a header describing
// the representation plus base64 blobs of column-major little-endian doubles.
// Reloading a blob reproduces the exported matrix bit for bit.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccr/boundary.hpp"
#include "qccr/fock.hpp"

namespace qccr::io {

inline constexpr const char* kExportSchema = "qccr.export/1";

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
/// Throws std::invalid_argument on malformed input.
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// {"name", "rows", "cols", "dtype": "complex128-le" | "float64-le", "order": "column-major", "data"}.
nlohmann::json matrix_blob(const std::string& name, const Eigen::MatrixXcd& m);
nlohmann::json matrix_blob(const std::string& name, const Eigen::MatrixXd& m);
/// Real blobs come back with zero imaginary parts.
Eigen::MatrixXcd read_blob(const nlohmann::json& blob);

/// Header plus A1..Ad, Adag1..Adag{d} and the orthonormalizing transform W per degree
/// (block diagonal, stored whole).
nlohmann::json export_fock(const fock::TruncatedRep& rep);
/// Full representation followed by its irreducible summands; each carries r and,
/// for odd r, the central-element label.
nlohmann::json export_clifford(const boundary::CliffordReps& reps);

struct Loaded {
  nlohmann::json header;
  std::vector<std::string> order;  // blob names as they appear
  std::map<std::string, Eigen::MatrixXcd> matrices;
};

/// Reads one representation object (the document itself for Fock exports,
/// or an entry of "representations" for Clifford exports).
Loaded load_representation(const nlohmann::json& rep);

}  // namespace qccr::io
