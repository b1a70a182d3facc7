#include "orbitlab/json_io.hpp"

namespace orbitlab {

json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("matrix_from_json: expected array of rows");
    std::size_t rows = j.size(), cols = j[0].size();
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw Error("matrix_from_json: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& cell = j[i][k];
            m.at(i, k) = cell.is_string() ? parse_rat(cell.get<std::string>())
                                          : make_rat(cell.get<long>());
        }
    }
    return m;
}

namespace {

json dense_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd dense_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("dense_from_json: expected array of rows");
    Eigen::MatrixXd m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != static_cast<std::size_t>(m.cols()))
            throw Error("dense_from_json: ragged rows");
        for (std::size_t k = 0; k < j[i].size(); ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
    return m;
}

} // namespace

json to_json(const SiegelPoint& z) {
    return json{{"g", z.g()}, {"X", dense_to_json(z.X())}, {"Y", dense_to_json(z.Y())}};
}

SiegelPoint siegel_from_json(const json& j, const Tolerances& tol) {
    return SiegelPoint(dense_from_json(j.at("X")), dense_from_json(j.at("Y")), tol);
}

json to_json(const MixedPoint& p) {
    json out{{"v", p.v}, {"Z", to_json(p.Z)}, {"rational", p.rational()}};
    if (p.rational()) {
        json ve = json::array();
        for (const Rat& r : *p.v_exact) ve.push_back(rat_str(r));
        out["v_exact"] = std::move(ve);
    }
    return out;
}

MixedPoint mixed_from_json(const json& j, const Tolerances& tol) {
    SiegelPoint z = siegel_from_json(j.at("Z"), tol);
    if (j.value("rational", false) && j.contains("v_exact")) {
        std::vector<Rat> v;
        for (const json& cell : j.at("v_exact")) v.push_back(parse_rat(cell.get<std::string>()));
        return MixedPoint::exact(std::move(v), std::move(z));
    }
    return MixedPoint::real(j.at("v").get<std::vector<double>>(), std::move(z));
}

json to_json(const GroupElement& gel) {
    json w = json::array();
    for (const Rat& r : gel.w) w.push_back(rat_str(r));
    return json{{"w", std::move(w)}, {"M", to_json(gel.M)}};
}

json orbit_point_record(const OrbitPoint& t, const Int& witness_height) {
    json w = json::array();
    for (const Rat& r : t.provenance.w) w.push_back(rat_str(r));
    return json{{"point", to_json(t.point)},
                {"alpha", to_json(t.provenance.alpha.alpha)},
                {"n_prime", t.provenance.n_prime.get_str()},
                {"w", std::move(w)},
                {"complexity", t.complexity.get_str()},
                {"witness_height", witness_height.get_str()}};
}

json to_json(const CurveQ& e) {
    return json{{"a2", rat_str(e.a2)}, {"a4", rat_str(e.a4)}, {"a6", rat_str(e.a6)}};
}

json to_json(const PointQ& p) {
    if (p.is_infinity()) return json("O");
    return json{{"x", rat_str(p.x())}, {"y", rat_str(p.y())}};
}

CurveQ curve_from_json(const json& j) {
    CurveQ e{parse_rat(j.at("a2").get<std::string>()), parse_rat(j.at("a4").get<std::string>()),
             parse_rat(j.at("a6").get<std::string>())};
    // Route through a factory so the singularity check runs.
    if (e.a6 == 0) return CurveQ::two_torsion_form(e.a2, e.a4);
    if (e.a2 == 0) return CurveQ::short_form(e.a4, e.a6);
    return e;
}

PointQ point_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "O") return PointQ::infinity();
    return PointQ::affine(parse_rat(j.at("x").get<std::string>()),
                          parse_rat(j.at("y").get<std::string>()));
}

} // namespace orbitlab
