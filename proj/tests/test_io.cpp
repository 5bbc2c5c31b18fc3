#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "ginv/io.hpp"

using namespace ginv;
using testutil::along2;
using testutil::cm;
using testutil::rm;
using testutil::rq;
using testutil::shift2;

namespace {

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void put(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("Matrix Market array round trip, real") {
    const auto d = cm({{2, 0}, {1, 0}});
    const auto path = scratch("ginv_io_real.mtx");
    io::write_matrix_market(d, path.string());

    const std::string text = slurp(path);
    CHECK(text == "%%MatrixMarket matrix array real general\n2 2\n2\n1\n0\n0\n");

    const auto raw = io::read_matrix_file(path.string());
    CHECK_FALSE(raw.complex_entries);
    CHECK(io::to_float(raw) == d);
    CHECK(io::to_exact(raw) == rm({{2, 0}, {1, 0}}));
}

TEST_CASE("Matrix Market array round trip, complex") {
    Matrix<Complex> m(1, 2);
    m(0, 0) = Complex(0.5, -1.25);
    m(0, 1) = Complex(3, 0);
    const auto path = scratch("ginv_io_complex.mtx");
    io::write_matrix_market(m, path.string());

    const std::string text = slurp(path);
    CHECK(text.rfind("%%MatrixMarket matrix array complex general\n", 0) == 0);

    const auto raw = io::read_matrix_file(path.string());
    CHECK(raw.complex_entries);
    CHECK(io::to_float(raw) == m);
    CHECK_THROWS_AS(io::to_exact(raw), ParseError);
}

TEST_CASE("Matrix Market decimals convert to exact rationals without rounding") {
    const auto path = scratch("ginv_io_decimal.mtx");
    put(path, "%%MatrixMarket matrix array real general\n2 1\n0.1\n-2.5e-3\n");
    const auto m = io::to_exact(io::read_matrix_file(path.string()));
    CHECK(m(0, 0) == make_rational(1, 10));
    CHECK(m(1, 0) == make_rational(-1, 400));
}

TEST_CASE("Matrix Market floats survive a write/read cycle") {
    // Shortest round-trip printing yields tokens like -0.6483878283230788
    // whose digit strings start with zero; parsing must stay decimal.
    Matrix<Complex> m(2, 2);
    m(0, 0) = Complex(0.9, 0);
    m(0, 1) = Complex(-0.6483878283230788, 0);
    m(1, 0) = Complex(0.09, 0);
    m(1, 1) = Complex(1.0 / 3.0, 0);
    const auto path = scratch("ginv_io_float_cycle.mtx");
    io::write_matrix_market(m, path.string());
    const auto back = io::to_float(io::read_matrix_file(path.string()));
    CHECK(back == m);
}

TEST_CASE("JSON rational round trip is bit-exact") {
    const auto m = rq({{"1/3", "-7/2"}, {"0", "22"}});
    const auto path = scratch("ginv_io_rat.json");
    io::write_json_rational(m, path.string());

    const std::string text = slurp(path);
    CHECK(text.find("\"1/3\"") != std::string::npos);
    CHECK(text.find("\"field\": \"rational\"") != std::string::npos);

    const auto raw = io::read_matrix_file(path.string());
    CHECK(raw.json_rational);
    CHECK(io::to_exact(raw) == m);
    CHECK(io::to_float(raw)(0, 0).real() == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("malformed inputs are rejected") {
    const auto path = scratch("ginv_io_bad.txt");

    put(path, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 5\n");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, "%%MatrixMarket matrix array real general\n2\n1\n2\n");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, "%%MatrixMarket matrix array real general\n2 1\n1\n");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, "%%MatrixMarket matrix array real general\n1 1\n1\n9\n");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, "%%MatrixMarket matrix array real general\n1 1\nbanana\n");
    CHECK_THROWS_AS(io::to_exact(io::read_matrix_file(path.string())), ParseError);

    put(path, R"({"field":"rational","rows":2,"cols":1,"data":[["1/2"],["1/3","5"]]})");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, R"({"field":"decimal","rows":1,"cols":1,"data":[["1"]]})");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    put(path, "not json at all");
    CHECK_THROWS_AS(io::read_matrix_file(path.string()), ParseError);

    CHECK_THROWS_AS(io::read_matrix_file("/nonexistent/ginv_missing.mtx"), ParseError);
}

TEST_CASE("inline rendering") {
    CHECK(io::format_matrix_inline(rm({{2, 0}, {1, 0}})) == "[[2,0],[1,0]]");
    CHECK(io::format_matrix_inline(rq({{"1/2"}})) == "[[1/2]]");
    CHECK(io::format_matrix_inline(cm({{2, 0}, {1, 0}})) == "[[2,0],[1,0]]");
}

TEST_CASE("certificate JSON is canonical") {
    CertifyContext<Rational> ctx;
    ctx.along = along2<Rational>(1);
    const auto cert =
        certify(shift2<Rational>(), rm({{2, 0}, {1, 0}}), InverseKind::MARY, ctx);
    const std::string expected = R"json({
  "identities": {
    "BAB=B": 0.0
  },
  "kind": "mary",
  "subspace_checks": {
    "N(B)=N(T)": true,
    "R(B)=R(T)": true
  },
  "tolerance": 0.0,
  "verdict": "PASS",
  "witnesses": {}
})json";
    CHECK(io::certificate_to_json(cert).dump(2) == expected);
}
