#pragma once

#include <pteq/errors.hpp>
#include <pteq/matrix.hpp>
#include <pteq/rational.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace pteq {

// Insertion-ordered JSON keeps CLI output byte-stable.
using Json = nlohmann::ordered_json;

/*
 * Wire encodings. These are the file-format contract shared by every tool:
 *   Rational      "p/q", or "p" when the denominator is 1
 *   Matrix        {"rows": r, "cols": c, "data": [[row0...], ...]}
 *   point         [x1, x2, ...] of rationals
 *   permutation   0-indexed image sequence, e.g. [2,0,1]
 */

inline Json to_json(const Rational& r) { return Json(r.str()); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    throw ParseError("rational: expected \"p/q\" string, got " + j.dump());
}

inline Json to_json(const Matrix& m) {
    Json data = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        data.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError("matrix: expected {rows, cols, data}");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const Json& data = j.at("data");
    if (!data.is_array() || static_cast<int>(data.size()) != rows)
        throw ParseError("matrix: data has wrong row count");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = data.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix: row " + std::to_string(i) + " has wrong length");
        for (int k = 0; k < cols; ++k)
            m(i, k) = rational_from_json(row.at(static_cast<size_t>(k)));
    }
    return m;
}

inline Json to_json(const Point& p) {
    Json a = Json::array();
    for (const Rational& x : p) a.push_back(x.str());
    return a;
}

inline Point point_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("point: expected array");
    Point p;
    p.reserve(j.size());
    for (const Json& x : j) p.push_back(rational_from_json(x));
    return p;
}

inline Json points_to_json(const std::vector<Point>& pts) {
    Json a = Json::array();
    for (const Point& p : pts) a.push_back(to_json(p));
    return Json{{"points", std::move(a)}};
}

inline std::vector<Point> points_from_json(const Json& j) {
    const Json* arr = nullptr;
    if (j.is_object() && j.contains("points")) arr = &j.at("points");
    else if (j.is_array()) arr = &j;
    else throw ParseError("points: expected {\"points\": [...]} or a bare array");
    std::vector<Point> pts;
    pts.reserve(arr->size());
    for (const Json& p : *arr) pts.push_back(point_from_json(p));
    return pts;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace pteq
