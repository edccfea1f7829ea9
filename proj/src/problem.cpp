#include "kcf/problem.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace kcf {

namespace {

using nlohmann::json;

Rational scalar_from_json(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ParseError(where + ": non-finite number");
        return rational_from_double(d);
    }
    throw ParseError(where + ": expected a number or a numeric string");
}

Vector<Rational> vector_from_json(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    Vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar_from_json(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix<Rational> matrix_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) throw ParseError(where + ": expected a nonempty array of rows");
    const std::size_t rows = v.size();
    if (!v[0].is_array() || v[0].empty()) throw ParseError(where + ": rows must be nonempty arrays");
    const std::size_t cols = v[0].size();
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols) throw ParseError(where + ": ragged row " + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = scalar_from_json(v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

std::size_t size_from_json(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) throw ParseError(where + ": expected a positive integer");
    return v.get<std::size_t>();
}

}  // namespace

Problem parse_problem(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem file must be a JSON object");

    const bool has_pencil = doc.contains("F") || doc.contains("G");
    const bool has_system = doc.contains("A") || doc.contains("order");
    if (has_pencil == has_system) throw ParseError("give exactly one of {\"F\",\"G\"} or {\"order\",\"A\"}");

    Problem p;
    if (has_pencil) {
        if (!doc.contains("F") || !doc.contains("G")) throw ParseError("both \"F\" and \"G\" are required");
        const Matrix<Rational> f = matrix_from_json(doc["F"], "F"), g = matrix_from_json(doc["G"], "G");
        if (f.rows() != g.rows() || f.cols() != g.cols()) throw ParseError("F and G must have the same shape");
        p.form = ProblemForm::Pencil;
        p.pencil = Pencil<Rational>(f, g);
        p.system = HigherOrderSystem<Rational>::from_pencil(p.pencil);
    } else {
        if (!doc.contains("A") || !doc.contains("order")) throw ParseError("both \"order\" and \"A\" are required");
        const std::size_t n = size_from_json(doc["order"], "order");
        const json& a = doc["A"];
        if (!a.is_array() || a.size() != n + 1)
            throw ParseError("\"A\" must list order + 1 = " + std::to_string(n + 1) + " matrices A_0..A_n");
        p.form = ProblemForm::HigherOrder;
        for (std::size_t k = 0; k <= n; ++k) p.system.coefficients.push_back(matrix_from_json(a[k], "A[" + std::to_string(k) + "]"));
        try {
            p.system.validate();
        } catch (const InvalidStructure& e) {
            throw ParseError(e.what());
        }
        if (doc.contains("m") && size_from_json(doc["m"], "m") != p.system.m()) throw ParseError("\"m\" does not match A");
        if (doc.contains("r") && size_from_json(doc["r"], "r") != p.system.r()) throw ParseError("\"r\" does not match A");
        p.pencil = linearize(p.system);
    }

    if (doc.contains("t0")) p.t0 = scalar_from_json(doc["t0"], "t0");
    if (doc.contains("Y0") && doc.contains("X_derivatives")) throw ParseError("give at most one of \"Y0\" and \"X_derivatives\"");
    if (doc.contains("Y0")) {
        p.y0 = vector_from_json(doc["Y0"], "Y0");
        if (p.y0->size() != p.pencil.cols())
            throw ParseError("Y0 must have length " + std::to_string(p.pencil.cols()));
    } else if (doc.contains("X_derivatives")) {
        const json& xs = doc["X_derivatives"];
        if (!xs.is_array()) throw ParseError("X_derivatives: expected an array of vectors");
        InitialData<Rational> init;
        init.t0 = p.t0;
        for (std::size_t k = 0; k < xs.size(); ++k)
            init.derivatives.push_back(vector_from_json(xs[k], "X_derivatives[" + std::to_string(k) + "]"));
        try {
            p.y0 = lift_initial_conditions(p.system, init);
        } catch (const DimensionMismatch& e) {
            throw ParseError(std::string("X_derivatives: ") + e.what());
        }
    }
    return p;
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_problem(text.str());
}

std::string write_pencil_problem(const Pencil<Rational>& pencil, const std::optional<Vector<Rational>>& y0,
                                 const Rational& t0) {
    auto matrix = [](const Matrix<Rational>& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    nlohmann::ordered_json doc;
    doc["F"] = matrix(pencil.F());
    doc["G"] = matrix(pencil.G());
    doc["t0"] = to_string(t0);
    if (y0) {
        json v = json::array();
        for (const auto& x : *y0) v.push_back(to_string(x));
        doc["Y0"] = std::move(v);
    }
    return doc.dump(2);
}

}  // namespace kcf
