// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// JSON module files. Scalars are strings in the scalar text grammar.

#ifndef HOPFREP_IO_HPP
#define HOPFREP_IO_HPP

#include <hopfrep/module.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace hopfrep {

using json = nlohmann::json;

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Scalar scalar_from_json(const json& j, const FieldDesc& f) {
    if (!j.is_string()) throw MathError("scalar must be a string, got " + j.dump());
    Scalar s = Scalar::parse(j.get<std::string>());
    if (!s.is_rational() && s.d() != f.d)
        throw MathError("scalar " + s.str() + " is outside the field" + (f.d ? " Q(sqrt(" + std::to_string(f.d) + "))" : " Q"));
    return s.in_field(f);
}

inline Matrix matrix_from_json(const json& j, const FieldDesc& f, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw MathError("matrix must be an array of " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw MathError("matrix row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json(j[i][k], f);
    }
    return m;
}

inline json to_json(const Module& V) {
    json j;
    j["algebra"] = V.algebra;
    if (V.q) j["q"] = V.q->str();
    j["dim"] = V.dim;
    j["field"] = json::object();
    j["field"]["ext"] = V.field.d ? json(V.field.d) : json(nullptr);
    json act = json::object();
    for (auto& [g, m] : V.action) act[g] = to_json(m);
    j["action"] = act;
    return j;
}

// Parses and certifies.
inline Module module_from_json(const json& j) {
    if (!j.is_object()) throw MathError("module file must hold a JSON object");
    for (const char* key : {"algebra", "dim", "action"})
        if (!j.contains(key)) throw MathError(std::string("module file lacks \"") + key + "\"");
    Module V;
    V.algebra = j.at("algebra").get<std::string>();
    stored_generators(V.algebra);  // validates the name
    if (!j.at("dim").is_number_unsigned()) throw MathError("dim must be a non-negative integer");
    V.dim = j.at("dim").get<std::size_t>();
    if (j.contains("field") && j.at("field").contains("ext") && !j.at("field").at("ext").is_null())
        V.field = make_field(j.at("field").at("ext").get<long>());
    if (j.contains("q")) V.q = scalar_from_json(j.at("q"), V.field);
    if (V.algebra == "Lq" && !V.q) throw MathError("Lq module needs \"q\"");
    for (auto& [g, m] : j.at("action").items()) V.action[g] = matrix_from_json(m, V.field, V.dim);
    return certified(std::move(V));
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline Module read_module_file(const std::string& path) { return module_from_json(read_json_file(path)); }

}  // namespace hopfrep

#endif  // HOPFREP_IO_HPP
