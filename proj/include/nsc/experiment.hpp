/**
 * Repeated-experiment harness.
 *
 * Each repetition regenerates (synthetic sources) or re-splits (fixed
 * datasets) with a seed derived as master seed + repetition index, fits
 * every requested method and records its test error rate in percent.
 * A method that throws is aborted with a recorded failure while the
 * others keep running. Aggregation reports mean and sample (n-1)
 * standard deviation.
 */

#pragma once

#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nsc/classifier.hpp"
#include "nsc/dataset.hpp"
#include "nsc/stats.hpp"

namespace nsc {

struct MethodSpec {
    enum class Kind { NSC, NSCM, KNN };
    Kind kind = Kind::NSC;
    int k = 1;  // neighbors, for KNN
    std::string name;

    static MethodSpec nsc() { return {Kind::NSC, 0, "NSC"}; }
    static MethodSpec nscm() { return {Kind::NSCM, 0, "NSC-M"}; }
    static MethodSpec knn(int k) { return {Kind::KNN, k, std::to_string(k) + "-NN"}; }
};

/// Accepts "nsc", "nsc-m", "1-nn", "3-nn", any "<k>-nn".
inline MethodSpec parse_method(const std::string& text) {
    std::string s;
    for (char c : text) s.push_back(std::tolower(static_cast<unsigned char>(c)));
    if (s == "nsc") return MethodSpec::nsc();
    if (s == "nsc-m" || s == "nscm") return MethodSpec::nscm();
    const auto pos = s.find("-nn");
    if (pos != std::string::npos && pos > 0) {
        try {
            const int k = std::stoi(s.substr(0, pos));
            if (k >= 1) return MethodSpec::knn(k);
        } catch (...) {
        }
    }
    throw DataError("unknown method '" + text + "'");
}

struct ExperimentSpec {
    std::optional<GeneratorSpec> generator;  // regenerate each repetition
    std::optional<LabeledDataset> dataset;   // or re-split fixed data
    std::vector<MethodSpec> methods;
    NSCConfig config;
    int repetitions = 20;
    double train_fraction = 0.5;
    bool stratified = true;
    bool scale = true;  // min-max fit on train, applied to test
    int pca_dim = 0;    // 0 disables PCA
    std::uint64_t seed = 0;
};

struct MethodResult {
    std::string name;
    std::vector<double> errors;  // % per repetition
    bool failed = false;
    std::string failure;
    double fit_seconds = 0.0;
    double predict_seconds = 0.0;

    double mean_error() const { return mean(errors); }
    double std_error() const { return sample_std(errors); }
};

struct ExperimentReport {
    std::string dataset_name;
    int repetitions = 0;
    std::vector<MethodResult> methods;
    std::string config_summary;
};

inline double error_rate_percent(const std::vector<int>& predicted,
                                 const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || truth.empty())
        throw DataError("error_rate_percent: size mismatch");
    int wrong = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predicted[i] != truth[i]) ++wrong;
    return 100.0 * wrong / double(truth.size());
}

inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (spec.repetitions < 1) throw DataError("run_experiment: repetitions must be >= 1");
    if (!spec.generator.has_value() && !spec.dataset.has_value())
        throw DataError("run_experiment: no data source");
    if (spec.methods.empty()) throw DataError("run_experiment: no methods");

    ExperimentReport report;
    report.repetitions = spec.repetitions;
    report.dataset_name = spec.generator ? dataset_kind_name(spec.generator->kind)
                                         : spec.dataset->name;
    {
        std::ostringstream cs;
        cs << "config: "
           << (spec.config.complex_kind == ComplexKind::Rips ? "rips" : "lazywitness")
           << " f=" << spec.config.f << " R_max=" << spec.config.R_max
           << " gamma=" << spec.config.gamma << " k_max=" << spec.config.k_max
           << " r=" << spec.config.landmark_ratio
           << " | train_fraction=" << spec.train_fraction
           << (spec.stratified ? " stratified" : "")
           << (spec.scale ? " minmax" : "")
           << (spec.pca_dim > 0 ? " pca=" + std::to_string(spec.pca_dim) : "")
           << " seed=" << spec.seed;
        report.config_summary = cs.str();
    }
    for (const auto& m : spec.methods) report.methods.push_back({m.name, {}, false, "", 0, 0});

    using Clock = std::chrono::steady_clock;

    for (int rep = 0; rep < spec.repetitions; ++rep) {
        const std::uint64_t rep_seed = spec.seed + std::uint64_t(rep);

        LabeledDataset full;
        if (spec.generator) {
            GeneratorSpec gen = *spec.generator;
            gen.seed = rep_seed;
            full = generate(gen);
        } else {
            full = *spec.dataset;
        }
        auto [train, test] =
            train_test_split(full, spec.train_fraction, spec.stratified, mix_seed(rep_seed, 1));

        if (spec.scale) {
            auto [scaled, transform] = minmax_scale(train);
            train = std::move(scaled);
            test.points = transform.apply(test.points);
        }
        if (spec.pca_dim > 0) {
            auto [projected, basis] = pca(train, spec.pca_dim);
            train = std::move(projected);
            test.points = basis.apply(test.points);
        }

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            MethodResult& result = report.methods[mi];
            if (result.failed) continue;
            const MethodSpec& method = spec.methods[mi];
            try {
                std::vector<int> predicted;
                if (method.kind == MethodSpec::Kind::KNN) {
                    const auto t0 = Clock::now();
                    predicted.resize(test.n());
                    for (int i = 0; i < test.n(); ++i)
                        predicted[i] = knn_predict(train.points, train.labels,
                                                   test.points.row(i).transpose(), method.k);
                    result.predict_seconds +=
                        std::chrono::duration<double>(Clock::now() - t0).count();
                } else {
                    NSCConfig cfg = spec.config;
                    cfg.metric = (method.kind == MethodSpec::Kind::NSCM)
                                     ? MetricKind::Mahalanobis
                                     : MetricKind::Euclidean;
                    cfg.seed = mix_seed(rep_seed, 2);
                    const auto t0 = Clock::now();
                    const NSCModel model = fit(train, cfg);
                    const auto t1 = Clock::now();
                    NSCEvaluator evaluator(model);
                    predicted = evaluator.predict_labels(test.points);
                    const auto t2 = Clock::now();
                    result.fit_seconds += std::chrono::duration<double>(t1 - t0).count();
                    result.predict_seconds += std::chrono::duration<double>(t2 - t1).count();
                }
                result.errors.push_back(error_rate_percent(predicted, test.labels));
            } catch (const std::exception& e) {
                result.failed = true;
                result.failure = e.what();
            }
        }
    }
    return report;
}

/// Aligned text table; floating point at 4 decimal places.
inline std::string report_to_text(const ExperimentReport& report) {
    std::ostringstream os;
    os << "dataset: " << report.dataset_name
       << "   repetitions: " << report.repetitions << "\n";
    if (!report.config_summary.empty()) os << report.config_summary << "\n";
    os << std::left << std::setw(10) << "method" << std::right << std::setw(12)
       << "mean err %" << std::setw(12) << "std %" << std::setw(12) << "fit s"
       << std::setw(12) << "predict s" << "\n";
    os << std::fixed << std::setprecision(4);
    for (const auto& m : report.methods) {
        os << std::left << std::setw(10) << m.name << std::right;
        if (m.failed) {
            os << "  FAILED: " << m.failure << "\n";
        } else {
            os << std::setw(12) << m.mean_error() << std::setw(12) << m.std_error()
               << std::setw(12) << m.fit_seconds << std::setw(12) << m.predict_seconds
               << "\n";
        }
    }

    // significance of the first method against each other one
    const auto& base = report.methods.empty() ? MethodResult{} : report.methods.front();
    if (!base.failed && base.errors.size() >= 2) {
        for (std::size_t i = 1; i < report.methods.size(); ++i) {
            const auto& other = report.methods[i];
            if (other.failed || other.errors.size() != base.errors.size()) continue;
            const auto t = paired_t_test(base.errors, other.errors);
            os << "paired t-test " << base.name << " vs " << other.name << ": t = " << t.t
               << ", p = ";
            if (t.p < 1e-12)
                os << "< 1e-12";
            else
                os << t.p;
            os << "\n";
        }
    }
    return os.str();
}

/// Per-repetition error vectors at full precision, one row per repetition.
inline std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "repetition";
    for (const auto& m : report.methods) os << "," << m.name;
    os << "\n";
    std::size_t max_reps = 0;
    for (const auto& m : report.methods) max_reps = std::max(max_reps, m.errors.size());
    for (std::size_t r = 0; r < max_reps; ++r) {
        os << r;
        for (const auto& m : report.methods) {
            os << ",";
            if (r < m.errors.size()) os << m.errors[r];
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace nsc
