#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ginv/certify.hpp"

namespace ginv::io {

/// Matrix payload as read from disk, before any backend commitment: decimal
/// or "p/q" strings, row-major. Keeping strings lets the exact backend parse
/// decimals without a round trip through binary floating point.
struct RawMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool json_rational = false;
    bool complex_entries = false;
    std::vector<std::string> re;
    std::vector<std::string> im;
};

namespace detail {

inline void validate_decimal(const std::string& tok) {
    try {
        parse_decimal_rational(tok);
    } catch (const std::exception&) {
        throw ParseError("unparseable numeric token '" + tok + "'");
    }
}

inline RawMatrix read_matrix_market(std::istream& in, const std::string& header) {
    RawMatrix raw;
    const std::string real_header = "%%MatrixMarket matrix array real general";
    const std::string complex_header = "%%MatrixMarket matrix array complex general";
    if (header == complex_header)
        raw.complex_entries = true;
    else if (header != real_header)
        throw ParseError("unsupported Matrix Market header: " + header);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        break;
    }
    std::istringstream size_line(line);
    long long rows = -1, cols = -1;
    if (!(size_line >> rows >> cols) || rows < 1 || cols < 1)
        throw ParseError("malformed Matrix Market size line");
    std::string extra;
    if (size_line >> extra) throw ParseError("malformed Matrix Market size line");
    raw.rows = static_cast<std::size_t>(rows);
    raw.cols = static_cast<std::size_t>(cols);

    const std::size_t total = raw.rows * raw.cols;
    std::vector<std::string> col_major_re(total), col_major_im(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::string tok;
        if (!(in >> tok)) throw ParseError("truncated Matrix Market data");
        validate_decimal(tok);
        col_major_re[k] = tok;
        if (raw.complex_entries) {
            if (!(in >> tok)) throw ParseError("truncated Matrix Market data");
            validate_decimal(tok);
            col_major_im[k] = tok;
        }
    }
    std::string trailing;
    if (in >> trailing) throw ParseError("trailing data after Matrix Market entries");

    raw.re.resize(total);
    if (raw.complex_entries) raw.im.resize(total);
    for (std::size_t j = 0; j < raw.cols; ++j)
        for (std::size_t i = 0; i < raw.rows; ++i) {
            raw.re[i * raw.cols + j] = col_major_re[j * raw.rows + i];
            if (raw.complex_entries) raw.im[i * raw.cols + j] = col_major_im[j * raw.rows + i];
        }
    return raw;
}

inline RawMatrix read_json_rational(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("field", "") != "rational")
        throw ParseError("JSON matrix must carry \"field\":\"rational\"");
    if (!doc.contains("rows") || !doc.contains("cols") || !doc.contains("data") ||
        !doc["rows"].is_number_integer() || !doc["cols"].is_number_integer() ||
        !doc["data"].is_array())
        throw ParseError("JSON matrix needs integer rows/cols and a data array");
    const long long rows = doc["rows"].get<long long>();
    const long long cols = doc["cols"].get<long long>();
    if (rows < 1 || cols < 1) throw ParseError("JSON matrix dimensions must be positive");

    RawMatrix raw;
    raw.rows = static_cast<std::size_t>(rows);
    raw.cols = static_cast<std::size_t>(cols);
    raw.json_rational = true;
    if (doc["data"].size() != raw.rows) throw ParseError("JSON matrix data has wrong row count");
    for (const auto& row : doc["data"]) {
        if (!row.is_array() || row.size() != raw.cols)
            throw ParseError("JSON matrix data has ragged rows");
        for (const auto& cell : row) {
            if (!cell.is_string()) throw ParseError("JSON matrix entries must be \"p/q\" strings");
            const std::string tok = cell.get<std::string>();
            try {
                parse_rational(tok);
            } catch (const std::exception&) {
                throw ParseError("unparseable rational '" + tok + "'");
            }
            raw.re.push_back(tok);
        }
    }
    return raw;
}

} // namespace detail

inline RawMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string first_line;
    if (!std::getline(in, first_line)) throw ParseError("empty file " + path);
    if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();
    if (first_line.rfind("%%MatrixMarket", 0) == 0) return detail::read_matrix_market(in, first_line);

    std::ostringstream rest;
    rest << first_line << '\n' << in.rdbuf();
    return detail::read_json_rational(rest.str());
}

inline Matrix<Rational> to_exact(const RawMatrix& raw) {
    if (raw.complex_entries) throw ParseError("exact backend supports real matrices only");
    Matrix<Rational> m(raw.rows, raw.cols);
    for (std::size_t k = 0; k < raw.re.size(); ++k)
        m(k / raw.cols, k % raw.cols) =
            raw.json_rational ? parse_rational(raw.re[k]) : parse_decimal_rational(raw.re[k]);
    return m;
}

inline Matrix<Complex> to_float(const RawMatrix& raw) {
    Matrix<Complex> m(raw.rows, raw.cols);
    for (std::size_t k = 0; k < raw.re.size(); ++k) {
        const double re = scalar_traits<Rational>::to_double(
            raw.json_rational ? parse_rational(raw.re[k]) : parse_decimal_rational(raw.re[k]));
        const double im =
            raw.complex_entries ? scalar_traits<Rational>::to_double(parse_decimal_rational(raw.im[k]))
                                : 0.0;
        m(k / raw.cols, k % raw.cols) = Complex(re, im);
    }
    return m;
}

/// Array-format writer; column-major entries, shortest-round-trip decimals.
/// Chooses the real header when every entry is real.
inline void write_matrix_market(const Matrix<Complex>& m, const std::string& path) {
    bool complex_entries = false;
    for (std::size_t i = 0; i < m.rows() && !complex_entries; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).imag() != 0.0) {
                complex_entries = true;
                break;
            }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "%%MatrixMarket matrix array " << (complex_entries ? "complex" : "real")
        << " general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out << format_double(m(i, j).real());
            if (complex_entries) out << ' ' << format_double(m(i, j).imag());
            out << '\n';
        }
}

inline void write_json_rational(const Matrix<Rational>& m, const std::string& path) {
    nlohmann::json doc;
    doc["field"] = "rational";
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    auto data = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
        data.push_back(row);
    }
    doc["data"] = data;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

/// One-line rendering used by the command-line surface: rows as [a,b], the
/// whole matrix as [[..],[..]].
template <class T>
std::string format_matrix_inline(const Matrix<T>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ",[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ",";
            out += format_scalar(m(i, j));
        }
        out += "]";
    }
    out += "]";
    return out;
}

template <class T>
nlohmann::json matrix_to_json(const Matrix<T>& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <class T>
nlohmann::json certificate_to_json(const Certificate<T>& cert) {
    nlohmann::json doc;
    doc["kind"] = kind_name(cert.kind);
    doc["tolerance"] = cert.tolerance;
    doc["verdict"] = cert.pass ? "PASS" : "FAIL";
    doc["identities"] = nlohmann::json::object();
    for (const auto& [name, residual] : cert.identities) doc["identities"][name] = residual;
    doc["subspace_checks"] = nlohmann::json::object();
    for (const auto& [name, ok] : cert.subspace_checks) doc["subspace_checks"][name] = ok;
    doc["witnesses"] = nlohmann::json::object();
    for (const auto& [name, m] : cert.witnesses) doc["witnesses"][name] = matrix_to_json(m);
    return doc;
}

} // namespace ginv::io
