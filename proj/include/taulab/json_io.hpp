#pragma once

// JSON encodings:
//   partition            [3,2]
//   Frobenius coords     {"alpha":[2,0],"beta":[1,0]}
//   power-sum polynomial [{"mu":[1,1],"coeff":"1/2"}, ...]
//   ribbon graph         {"n":2,"vertices":[[1,2],[-1,-2]]}
//   sources              {"N":3,"C":{"1":[[e,...],...],"-1":...}}
// Scalar entries are a number, a "num/den" string, or a pair [re, im] of those.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"
#include "taulab/ribbon.hpp"
#include "taulab/symfunc.hpp"

namespace taulab {

using json = nlohmann::json;

/// Malformed input; `where` is a JSON pointer into the offending document.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

inline json to_json(const Partition& p) { return json(p.parts()); }

inline Partition partition_from_json(const json& j, const std::string& where = "") {
    if (!j.is_array()) throw InputError(where, "partition must be an array of positive integers");
    std::vector<int> parts;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number_integer()) throw InputError(where + "/" + std::to_string(k), "part is not an integer");
        parts.push_back(j[k].get<int>());
    }
    try {
        return Partition(std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw InputError(where, e.what());
    }
}

inline json to_json(const FrobeniusCoords& f) { return json{{"alpha", f.alpha}, {"beta", f.beta}}; }

inline FrobeniusCoords frobenius_from_json(const json& j, const std::string& where = "") {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
        throw InputError(where, "Frobenius coordinates need \"alpha\" and \"beta\"");
    try {
        return {j.at("alpha").get<std::vector<int>>(), j.at("beta").get<std::vector<int>>()};
    } catch (const json::exception& e) {
        throw InputError(where, e.what());
    }
}

inline json to_json(const PowerSumPolynomial& poly) {
    json out = json::array();
    for (const auto& [mu, c] : poly.terms()) out.push_back({{"mu", to_json(mu)}, {"coeff", to_string(c)}});
    return out;
}

inline PowerSumPolynomial power_sum_polynomial_from_json(const json& j, int degree, const std::string& where = "") {
    if (!j.is_array()) throw InputError(where, "polynomial must be an array of terms");
    PowerSumPolynomial p(degree);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        if (!j[k].is_object() || !j[k].contains("mu") || !j[k].contains("coeff"))
            throw InputError(at, "term needs \"mu\" and \"coeff\"");
        try {
            p.add_term(partition_from_json(j[k]["mu"], at + "/mu"), parse_rational(j[k]["coeff"].get<std::string>()));
        } catch (const std::exception& e) {
            throw InputError(at, e.what());
        }
    }
    return p;
}

inline Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_number_float()) return rational_from_double(j.get<double>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    throw InputError(where, "expected a number or a \"num/den\" string");
}

inline ComplexRational scalar_from_json(const json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw InputError(where, "complex entry must be [re, im]");
        return {rational_from_json(j[0], where + "/0"), rational_from_json(j[1], where + "/1")};
    }
    return ComplexRational(rational_from_json(j, where));
}

inline json scalar_to_json(const Rational& q) { return to_string(q); }
inline json scalar_to_json(const ComplexRational& z) {
    if (z.is_real()) return to_string(z.re);
    return json::array({to_string(z.re), to_string(z.im)});
}

inline json to_json(const RibbonGraph& g) {
    return json{{"n", g.edges()}, {"vertices", g.vertices()}};
}

inline RibbonGraph ribbon_graph_from_json(const json& j, const std::string& where = "") {
    if (!j.is_object()) throw InputError(where, "graph must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError(where + "/n", "missing integer edge count");
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError(where + "/vertices", "missing vertex cycles");
    std::vector<HalfEdgeCycle> cycles;
    for (std::size_t k = 0; k < j["vertices"].size(); ++k) {
        const json& c = j["vertices"][k];
        const std::string at = where + "/vertices/" + std::to_string(k);
        if (!c.is_array()) throw InputError(at, "vertex must be an array of half-edge labels");
        HalfEdgeCycle cycle;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_number_integer()) throw InputError(at + "/" + std::to_string(i), "label is not an integer");
            cycle.push_back(c[i].get<int>());
        }
        cycles.push_back(std::move(cycle));
    }
    try {
        return RibbonGraph(j["n"].get<int>(), std::move(cycles));
    } catch (const std::invalid_argument& e) {
        throw InputError(where, e.what());
    }
}

/// Sources as Gaussian rationals; check `all_real` to narrow to Rational.
inline SourceAssignment<ComplexRational> sources_from_json(const json& j, const std::string& where = "") {
    if (!j.is_object()) throw InputError(where, "sources must be an object");
    if (!j.contains("N") || !j["N"].is_number_integer() || j["N"].get<int>() < 1)
        throw InputError(where + "/N", "missing positive integer matrix size");
    if (!j.contains("C") || !j["C"].is_object()) throw InputError(where + "/C", "missing source matrices");
    SourceAssignment<ComplexRational> src{j["N"].get<int>(), {}};
    const auto n = static_cast<std::size_t>(src.size);
    for (const auto& [key, m] : j["C"].items()) {
        const std::string at = where + "/C/" + key;
        int label = 0;
        try {
            std::size_t used = 0;
            label = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw InputError(at, "source key is not a half-edge label");
        }
        if (!m.is_array() || m.size() != n) throw InputError(at, "expected " + std::to_string(n) + " rows");
        Matrix<ComplexRational> mat(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!m[r].is_array() || m[r].size() != n)
                throw InputError(at + "/" + std::to_string(r), "expected " + std::to_string(n) + " entries");
            for (std::size_t c = 0; c < n; ++c)
                mat(r, c) = scalar_from_json(m[r][c], at + "/" + std::to_string(r) + "/" + std::to_string(c));
        }
        src.sources.emplace(label, std::move(mat));
    }
    return src;
}

inline bool all_real(const SourceAssignment<ComplexRational>& src) {
    for (const auto& [h, m] : src.sources)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_real()) return false;
    return true;
}

inline std::vector<PowerSumValues<ComplexRational>> times_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array of time vectors");
    std::vector<PowerSumValues<ComplexRational>> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        if (!j[k].is_array()) throw InputError(at, "time vector must be an array");
        PowerSumValues<ComplexRational> v;
        for (std::size_t i = 0; i < j[k].size(); ++i) v.values.push_back(scalar_from_json(j[k][i], at + "/" + std::to_string(i)));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace taulab
