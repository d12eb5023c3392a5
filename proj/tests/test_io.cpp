#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "qccr/io.hpp"

namespace {

using namespace qccr;

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

bool bit_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

TEST(Base64, KnownVectors) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"}, {"foob", "Zm9vYg=="}, {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, coded] : cases) {
    EXPECT_EQ(io::base64_encode(bytes(plain)), coded);
    EXPECT_EQ(io::base64_decode(coded), bytes(plain));
  }
  EXPECT_THROW(io::base64_decode("Zg="), std::invalid_argument);
  EXPECT_THROW(io::base64_decode("Z!=="), std::invalid_argument);
}

TEST(Blob, RoundTripIsBitExact) {
  Eigen::MatrixXcd m(2, 3);
  m << Complex(-0.0, 1e-310), Complex(0.1, -0.2), Complex(std::numeric_limits<double>::max(), 0),
      Complex(1.0 / 3.0, -0.0), Complex(std::numeric_limits<double>::denorm_min(), 2), Complex(-1, 1);
  EXPECT_TRUE(bit_equal(io::read_blob(io::matrix_blob("m", m)), m));

  Eigen::MatrixXd r(2, 2);
  r << 1.5, -0.0, 3.0, 1e-300;
  const auto back = io::read_blob(io::matrix_blob("r", r));
  EXPECT_TRUE(bit_equal(back, r.cast<Complex>()));
  EXPECT_TRUE(std::signbit(back(0, 1).real()));
}

TEST(Blob, LayoutIsColumnMajorLittleEndian) {
  Eigen::MatrixXd r(2, 2);
  r << 1.0, 2.0, 3.0, 4.0;  // column-major: 1, 3, 2, 4
  const auto raw = io::base64_decode(io::matrix_blob("r", r)["data"].get<std::string>());
  ASSERT_EQ(raw.size(), 32u);
  // 3.0 = 0x4008000000000000, least significant byte first.
  EXPECT_EQ(raw[8 + 7], 0x40);
  EXPECT_EQ(raw[8 + 6], 0x08);
  for (int b = 0; b < 6; ++b) EXPECT_EQ(raw[8 + b], 0);
}

TEST(Blob, ShapeMismatchIsRejected) {
  auto blob = io::matrix_blob("m", Eigen::MatrixXd(Eigen::MatrixXd::Ones(2, 2)));
  blob["rows"] = 3;
  EXPECT_THROW(io::read_blob(blob), std::invalid_argument);
  blob["rows"] = 2;
  blob["dtype"] = "int32";
  EXPECT_THROW(io::read_blob(blob), std::invalid_argument);
}

TEST(Export, FockRoundTrip) {
  const auto rep = fock::build_fock_rep(2, QParam::numeric(-0.3), 3);
  const auto doc = nlohmann::json::parse(io::export_fock(rep).dump());
  EXPECT_EQ(doc["schema"], io::kExportSchema);
  EXPECT_EQ(doc["header"]["dim"], rep.dim());
  const auto loaded = io::load_representation(doc);
  EXPECT_EQ(loaded.order, (std::vector<std::string>{"A1", "A2", "Adag1", "Adag2", "W"}));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(bit_equal(loaded.matrices.at("A" + std::to_string(i + 1)), rep.A[i]));
    EXPECT_TRUE(bit_equal(loaded.matrices.at("Adag" + std::to_string(i + 1)), rep.Adag[i]));
  }
  EXPECT_TRUE(bit_equal(loaded.matrices.at("W"), rep.transform));
}

TEST(Export, CliffordRoundTrip) {
  const auto reps = boundary::clifford_rep(boundary::coherent_theta({0.6, Complex(0, 0.8)}));
  const auto doc = nlohmann::json::parse(io::export_clifford(reps).dump());
  const auto& list = doc["representations"];
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0]["header"]["role"], "full");
  EXPECT_TRUE(list[0]["header"]["label"].is_null());
  const auto full = io::load_representation(list[0]);
  for (std::size_t k = 0; k < reps.full.s.size(); ++k)
    EXPECT_TRUE(bit_equal(full.matrices.at("s" + std::to_string(k + 1)), reps.full.s[k]));
  EXPECT_TRUE(bit_equal(full.matrices.at("directions"), reps.full.directions.cast<Complex>()));
  for (std::size_t j = 0; j < 2; ++j) {
    const auto irr = io::load_representation(list[j + 1]);
    const auto label = irr.header["label"];
    EXPECT_EQ(Complex(label[0].get<double>(), label[1].get<double>()), *reps.irreducible[j].label);
    EXPECT_TRUE(bit_equal(irr.matrices.at("s1"), reps.irreducible[j].s[0]));
  }
}

}  // namespace
