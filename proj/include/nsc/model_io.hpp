/**
 * Model serialization: a single self-describing JSON file with a versioned
 * header. Doubles round-trip exactly (shortest-representation printing), so
 * save -> load is lossless for every field.
 */

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "nsc/classifier.hpp"

namespace nsc {

inline const char* to_string(ComplexKind k) {
    return k == ComplexKind::Rips ? "rips" : "lazywitness";
}
inline const char* to_string(MetricKind m) {
    return m == MetricKind::Mahalanobis ? "mahalanobis" : "euclidean";
}
inline const char* to_string(SamplingStrategy s) {
    return s == SamplingStrategy::Random ? "random" : "maxmin";
}
inline const char* to_string(BallConvention b) {
    return b == BallConvention::Scale ? "scale" : "intersecting-balls";
}

inline ComplexKind complex_kind_from_string(const std::string& s) {
    if (s == "lazywitness") return ComplexKind::Lazywitness;
    if (s == "rips") return ComplexKind::Rips;
    throw DataError("unknown complex kind '" + s + "'");
}
inline MetricKind metric_kind_from_string(const std::string& s) {
    if (s == "euclidean") return MetricKind::Euclidean;
    if (s == "mahalanobis") return MetricKind::Mahalanobis;
    throw DataError("unknown metric '" + s + "'");
}
inline SamplingStrategy sampling_from_string(const std::string& s) {
    if (s == "maxmin") return SamplingStrategy::MaxMin;
    if (s == "random") return SamplingStrategy::Random;
    throw DataError("unknown sampling strategy '" + s + "'");
}
inline BallConvention ball_convention_from_string(const std::string& s) {
    if (s == "intersecting-balls") return BallConvention::IntersectingBalls;
    if (s == "scale") return BallConvention::Scale;
    throw DataError("unknown ball convention '" + s + "'");
}

namespace detail {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows, int forced_cols = -1) {
    const int r = static_cast<int>(rows.size());
    int c = forced_cols;
    if (c < 0) c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
    return m;
}

}  // namespace detail

inline nlohmann::json config_to_json(const NSCConfig& c) {
    return {
        {"complex_kind", to_string(c.complex_kind)},
        {"f", c.f},
        {"R_max", c.R_max},
        {"gamma", c.gamma},
        {"k_max", c.k_max},
        {"landmark_ratio", c.landmark_ratio},
        {"sampling", to_string(c.sampling)},
        {"metric", to_string(c.metric)},
        {"ball_convention", to_string(c.ball_convention)},
        {"rips_R", c.rips_R},
        {"seed", c.seed},
        {"ridge", c.ridge},
        {"coverage_reduction", c.coverage_reduction},
    };
}

inline NSCConfig config_from_json(const nlohmann::json& j) {
    NSCConfig c;
    c.complex_kind = complex_kind_from_string(j.at("complex_kind").get<std::string>());
    c.f = j.at("f").get<int>();
    c.R_max = j.at("R_max").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.k_max = j.at("k_max").get<int>();
    c.landmark_ratio = j.at("landmark_ratio").get<double>();
    c.sampling = sampling_from_string(j.at("sampling").get<std::string>());
    c.metric = metric_kind_from_string(j.at("metric").get<std::string>());
    c.ball_convention = ball_convention_from_string(j.at("ball_convention").get<std::string>());
    c.rips_R = j.at("rips_R").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.ridge = j.at("ridge").get<double>();
    c.coverage_reduction = j.at("coverage_reduction").get<bool>();
    return c;
}

inline nlohmann::json model_to_json(const NSCModel& model) {
    nlohmann::json j;
    j["format"] = "nsc-model";
    j["version"] = 1;
    j["config"] = config_to_json(model.config);
    j["gamma"] = model.gamma;
    j["metric"] = model.metric.size() == 0 ? nlohmann::json(nullptr)
                                           : detail::matrix_to_json(model.metric);
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& pc : model.classes) {
        nlohmann::json jc;
        jc["label"] = pc.class_label;
        jc["prime_radius"] = pc.prime_radius;
        jc["dim"] = pc.vertices.cols();
        jc["vertices"] = detail::matrix_to_json(pc.vertices);
        nlohmann::json maximal = nlohmann::json::array();
        for (const auto& flat : pc.maximal_by_dim) maximal.push_back(flat);
        jc["maximal_by_dim"] = std::move(maximal);
        classes.push_back(std::move(jc));
    }
    j["classes"] = std::move(classes);
    return j;
}

inline NSCModel model_from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j.at("format") != "nsc-model")
        throw DataError("model file: not an nsc-model");
    if (j.at("version").get<int>() != 1)
        throw DataError("model file: unsupported version");

    NSCModel model;
    model.config = config_from_json(j.at("config"));
    model.gamma = j.at("gamma").get<double>();
    if (!j.at("metric").is_null()) model.metric = detail::matrix_from_json(j.at("metric"));
    for (const auto& jc : j.at("classes")) {
        PrimeComplex pc;
        pc.class_label = jc.at("label").get<int>();
        pc.prime_radius = jc.at("prime_radius").get<double>();
        pc.vertices = detail::matrix_from_json(jc.at("vertices"), jc.at("dim").get<int>());
        for (const auto& flat : jc.at("maximal_by_dim"))
            pc.maximal_by_dim.push_back(flat.get<std::vector<std::uint32_t>>());
        model.classes.push_back(std::move(pc));
    }
    return model;
}

inline void save_model(const NSCModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("save_model: cannot open '" + path + "'");
    out << model_to_json(model).dump(1) << "\n";
    if (!out) throw DataError("save_model: write failed for '" + path + "'");
}

inline NSCModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("load_model: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("load_model: invalid JSON in '" + path + "': " + e.what());
    }
    return model_from_json(j);
}

}  // namespace nsc
