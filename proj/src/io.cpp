#include "qccr/io.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace qccr::io {

namespace {

using nlohmann::json;

void put_double(std::vector<std::uint8_t>& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

double get_double(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  double x;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

json blob_header(const std::string& name, Eigen::Index rows, Eigen::Index cols, const char* dtype) {
  return {{"name", name}, {"rows", rows}, {"cols", cols}, {"dtype", dtype}, {"order", "column-major"}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
  if (n < 0) throw std::invalid_argument("malformed base64");
  // EVP_DecodeBlock keeps the zero bytes behind '=' padding.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

json matrix_blob(const std::string& name, const Eigen::MatrixXcd& m) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(m.size()) * 16);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      put_double(bytes, m(i, j).real());
      put_double(bytes, m(i, j).imag());
    }
  }
  json b = blob_header(name, m.rows(), m.cols(), "complex128-le");
  b["data"] = base64_encode(bytes);
  return b;
}

json matrix_blob(const std::string& name, const Eigen::MatrixXd& m) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(m.size()) * 8);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) put_double(bytes, m(i, j));
  json b = blob_header(name, m.rows(), m.cols(), "float64-le");
  b["data"] = base64_encode(bytes);
  return b;
}

Eigen::MatrixXcd read_blob(const json& blob) {
  const auto rows = blob.at("rows").get<Eigen::Index>();
  const auto cols = blob.at("cols").get<Eigen::Index>();
  const auto dtype = blob.at("dtype").get<std::string>();
  if (blob.at("order").get<std::string>() != "column-major") throw std::invalid_argument("unsupported blob order");
  const auto bytes = base64_decode(blob.at("data").get<std::string>());
  const std::size_t width = dtype == "complex128-le" ? 16 : dtype == "float64-le" ? 8 : 0;
  if (width == 0) throw std::invalid_argument("unsupported blob dtype " + dtype);
  if (rows < 0 || cols < 0 || bytes.size() != static_cast<std::size_t>(rows * cols) * width)
    throw std::invalid_argument("blob size does not match its shape");
  Eigen::MatrixXcd m(rows, cols);
  const std::uint8_t* p = bytes.data();
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i, p += width)
      m(i, j) = width == 16 ? Complex(get_double(p), get_double(p + 8)) : Complex(get_double(p), 0.0);
  }
  return m;
}

json export_fock(const fock::TruncatedRep& rep) {
  rep.require_matrices();
  json header{{"kind", "fock"},
              {"d", rep.d},
              {"q", rep.q},
              {"N", rep.N},
              {"dim", rep.dim()},
              {"basis_order",
               "words in creators over modes 1..d, sorted by length then lexicographically; "
               "each degree orthonormalized by Cholesky of its Gram block"},
              {"grading", rep.grading},
              {"spectral_cutoff", fock::kSpectralCutoff},
              {"used_spectral_fallback", rep.used_spectral_fallback},
              {"discarded", rep.discarded}};
  json blobs = json::array();
  for (std::size_t i = 0; i < rep.d; ++i) blobs.push_back(matrix_blob("A" + std::to_string(i + 1), rep.A[i]));
  for (std::size_t i = 0; i < rep.d; ++i) blobs.push_back(matrix_blob("Adag" + std::to_string(i + 1), rep.Adag[i]));
  blobs.push_back(matrix_blob("W", rep.transform));
  return {{"schema", kExportSchema}, {"header", header}, {"matrices", blobs}};
}

json export_clifford(const boundary::CliffordReps& reps) {
  auto one = [](const boundary::CliffordRep& rep, const std::string& role) {
    json header{{"kind", "clifford"}, {"role", role}, {"modes", rep.modes}, {"r", rep.r}, {"dim", rep.dim}};
    header["label"] = rep.label ? complex_json(*rep.label) : json(nullptr);
    json blobs = json::array();
    for (std::size_t k = 0; k < rep.s.size(); ++k) blobs.push_back(matrix_blob("s" + std::to_string(k + 1), rep.s[k]));
    blobs.push_back(matrix_blob("directions", rep.directions));
    return json{{"header", header}, {"matrices", blobs}};
  };
  json list = json::array();
  list.push_back(one(reps.full, "full"));
  if (reps.full.r % 2 == 1)
    for (const auto& rep : reps.irreducible) list.push_back(one(rep, "irreducible"));
  return {{"schema", kExportSchema}, {"representations", list}};
}

Loaded load_representation(const json& rep) {
  Loaded out;
  out.header = rep.at("header");
  for (const auto& blob : rep.at("matrices")) {
    const auto name = blob.at("name").get<std::string>();
    out.order.push_back(name);
    out.matrices.emplace(name, read_blob(blob));
  }
  return out;
}

}  // namespace qccr::io
