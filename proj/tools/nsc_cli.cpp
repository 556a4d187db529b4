/**
 * nsc command line: generate | fit | predict | eval | export.
 *
 * Options may come from a flat `key = value` config file (--config) with
 * command-line flags taking precedence; every run prints the resolved
 * configuration before doing work.
 *
 * Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
 */

#include <CLI11.hpp>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nsc/classifier.hpp"
#include "nsc/dataset.hpp"
#include "nsc/experiment.hpp"
#include "nsc/export.hpp"
#include "nsc/model_io.hpp"

namespace {

struct Options {
    // data
    std::string dataset;  // generator name or CSV path
    int n_per_class = 500;
    double noise_rho = -1.0;  // <0: per-kind default
    double gen_scale = 1.0;

    // experiment
    std::string methods = "nsc,1-nn,3-nn";
    int repetitions = 20;
    double train_fraction = 0.5;
    bool stratified = true;
    bool scale = true;      // eval: min-max per repetition
    bool fit_scale = false; // fit: operate on the data as given
    int pca_dim = 0;

    // classifier
    std::string complex_kind = "lazywitness";
    int f = 2;
    double r_max = 0.5;
    double gamma = 0.0;
    int k_max = 2;
    double landmark_ratio = 1.0;
    std::string sampling = "maxmin";
    std::string metric = "euclidean";
    std::string ball_convention = "intersecting-balls";
    double rips_r = 30.0;
    double ridge = 1e-6;
    bool coverage_reduction = true;
    std::uint64_t seed = 0;

    // io
    std::string out;
    std::string model_path;
    std::string data_path;
    std::string barcode_path;
};

void add_classifier_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--complex_kind", opt.complex_kind, "lazywitness | rips");
    cmd->add_option("--f", opt.f, "witness relaxation order");
    cmd->add_option("--r_max", opt.r_max, "barcode horizon R_max");
    cmd->add_option("--gamma", opt.gamma, "projection extrapolation");
    cmd->add_option("--k_max", opt.k_max, "maximum simplex dimension");
    cmd->add_option("--landmark_ratio", opt.landmark_ratio, "witnesses per landmark (r)");
    cmd->add_option("--sampling", opt.sampling, "maxmin | random");
    cmd->add_option("--metric", opt.metric, "euclidean | mahalanobis");
    cmd->add_option("--ball_convention", opt.ball_convention, "intersecting-balls | scale");
    cmd->add_option("--rips_r", opt.rips_r, "Rips radius (rips mode)");
    cmd->add_option("--ridge", opt.ridge, "covariance ridge for NSC-M");
    cmd->add_option("--coverage_reduction", opt.coverage_reduction,
                    "drop covered planar triangles");
    cmd->add_option("--seed", opt.seed, "master seed");
}

void add_data_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--dataset", opt.dataset,
                    "generator name (d1..d5 or two_circles, ...) or CSV path");
    cmd->add_option("--n_per_class", opt.n_per_class, "points per class (generators)");
    cmd->add_option("--noise_rho", opt.noise_rho, "noise level (generators)");
    cmd->add_option("--gen_scale", opt.gen_scale, "geometry scale multiplier");
}

nsc::NSCConfig make_config(const Options& opt) {
    nsc::NSCConfig cfg;
    cfg.complex_kind = nsc::complex_kind_from_string(opt.complex_kind);
    cfg.f = opt.f;
    cfg.R_max = opt.r_max;
    cfg.gamma = opt.gamma;
    cfg.k_max = opt.k_max;
    cfg.landmark_ratio = opt.landmark_ratio;
    cfg.sampling = nsc::sampling_from_string(opt.sampling);
    cfg.metric = nsc::metric_kind_from_string(opt.metric);
    cfg.ball_convention = nsc::ball_convention_from_string(opt.ball_convention);
    cfg.rips_R = opt.rips_r;
    cfg.ridge = opt.ridge;
    cfg.coverage_reduction = opt.coverage_reduction;
    cfg.seed = opt.seed;
    cfg.validate();
    return cfg;
}

std::optional<nsc::DatasetKind> generator_kind(const std::string& name) {
    if (name == "d1" || name == "two_circles") return nsc::DatasetKind::TwoCircles;
    if (name == "d2" || name == "two_spirals") return nsc::DatasetKind::TwoSpirals;
    if (name == "d3" || name == "circle_cross_circle")
        return nsc::DatasetKind::CircleCrossCircle;
    if (name == "d4" || name == "four_circle_cross")
        return nsc::DatasetKind::FourCircleCross;
    if (name == "d5" || name == "sphere_cross_sphere")
        return nsc::DatasetKind::SphereCrossSphere;
    return std::nullopt;
}

nsc::GeneratorSpec make_generator(const Options& opt, nsc::DatasetKind kind) {
    nsc::GeneratorSpec gen = nsc::default_generator_spec(kind);
    gen.n_per_class = opt.n_per_class;
    if (opt.noise_rho >= 0.0) gen.noise_rho = opt.noise_rho;
    gen.scale = opt.gen_scale;
    gen.seed = opt.seed;
    return gen;
}

void print_resolved(const Options& opt, const std::string& subcommand) {
    std::cout << "[" << subcommand << "] resolved configuration:\n"
              << "  dataset            = " << opt.dataset << "\n"
              << "  methods            = " << opt.methods << "\n"
              << "  repetitions        = " << opt.repetitions << "\n"
              << "  train_fraction     = " << opt.train_fraction << "\n"
              << "  stratified         = " << (opt.stratified ? "true" : "false") << "\n"
              << "  scale              = " << (opt.scale ? "true" : "false") << "\n"
              << "  pca_dim            = " << opt.pca_dim << "\n"
              << "  n_per_class        = " << opt.n_per_class << "\n"
              << "  noise_rho          = " << opt.noise_rho << " (negative = per-kind default)\n"
              << "  complex_kind       = " << opt.complex_kind << "\n"
              << "  f                  = " << opt.f << "\n"
              << "  r_max              = " << opt.r_max << "\n"
              << "  gamma              = " << opt.gamma << "\n"
              << "  k_max              = " << opt.k_max << "\n"
              << "  landmark_ratio     = " << opt.landmark_ratio << "\n"
              << "  sampling           = " << opt.sampling << "\n"
              << "  metric             = " << opt.metric << "\n"
              << "  ball_convention    = " << opt.ball_convention << "\n"
              << "  rips_r             = " << opt.rips_r << "\n"
              << "  ridge              = " << opt.ridge << "\n"
              << "  coverage_reduction = " << (opt.coverage_reduction ? "true" : "false") << "\n"
              << "  seed               = " << opt.seed << "\n";
}

/**
 * Flat `key = value` configuration file. Keys mirror the long option names;
 * values loaded here act as defaults that explicit command-line flags
 * override. '#' starts a comment.
 */
void apply_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in) throw nsc::DataError("cannot open config file '" + path + "'");

    auto trim = [](std::string s) {
        const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        while (!s.empty() && is_space(s.front())) s.erase(s.begin());
        while (!s.empty() && is_space(s.back())) s.pop_back();
        return s;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                       ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto as_bool = [&] {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw CLI::ValidationError("config key '" + key + "': expected true/false");
        };
        try {
            if (key == "dataset") opt.dataset = value;
            else if (key == "methods") opt.methods = value;
            else if (key == "repetitions") opt.repetitions = std::stoi(value);
            else if (key == "train_fraction") opt.train_fraction = std::stod(value);
            else if (key == "stratified") opt.stratified = as_bool();
            else if (key == "scale") opt.scale = as_bool();
            else if (key == "pca_dim") opt.pca_dim = std::stoi(value);
            else if (key == "n_per_class") opt.n_per_class = std::stoi(value);
            else if (key == "noise_rho") opt.noise_rho = std::stod(value);
            else if (key == "gen_scale") opt.gen_scale = std::stod(value);
            else if (key == "complex_kind") opt.complex_kind = value;
            else if (key == "f") opt.f = std::stoi(value);
            else if (key == "r_max") opt.r_max = std::stod(value);
            else if (key == "gamma") opt.gamma = std::stod(value);
            else if (key == "k_max") opt.k_max = std::stoi(value);
            else if (key == "landmark_ratio") opt.landmark_ratio = std::stod(value);
            else if (key == "sampling") opt.sampling = value;
            else if (key == "metric") opt.metric = value;
            else if (key == "ball_convention") opt.ball_convention = value;
            else if (key == "rips_r") opt.rips_r = std::stod(value);
            else if (key == "ridge") opt.ridge = std::stod(value);
            else if (key == "coverage_reduction") opt.coverage_reduction = as_bool();
            else if (key == "seed") opt.seed = std::stoull(value);
            else
                throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                           ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("config key '" + key + "': bad value '" + value + "'");
        }
    }
}

std::vector<nsc::MethodSpec> parse_methods(const std::string& list) {
    std::vector<nsc::MethodSpec> methods;
    std::string current;
    std::stringstream ss(list);
    while (std::getline(ss, current, ',')) {
        while (!current.empty() && current.front() == ' ') current.erase(current.begin());
        while (!current.empty() && current.back() == ' ') current.pop_back();
        if (!current.empty()) methods.push_back(nsc::parse_method(current));
    }
    if (methods.empty()) throw nsc::DataError("no methods given");
    return methods;
}

int run_generate(const Options& opt) {
    const auto kind = generator_kind(opt.dataset);
    if (!kind) throw nsc::DataError("generate: '" + opt.dataset + "' is not a generator name");
    nsc::GeneratorSpec gen = make_generator(opt, *kind);
    const nsc::LabeledDataset full = nsc::generate(gen);
    auto [train, test] = nsc::train_test_split(full, opt.train_fraction, opt.stratified,
                                               nsc::mix_seed(opt.seed, 1));
    const std::string base = opt.out.empty() ? std::string(dataset_kind_name(*kind)) : opt.out;
    nsc::save_csv(train, base + "_train.csv");
    nsc::save_csv(test, base + "_test.csv");
    std::cout << "wrote " << base << "_train.csv (" << train.n() << " rows), " << base
              << "_test.csv (" << test.n() << " rows)\n";
    return 0;
}

int run_fit(const Options& opt) {
    if (opt.data_path.empty()) throw CLI::ValidationError("fit requires --data");
    nsc::LabeledDataset train = nsc::load_csv(opt.data_path);

    nlohmann::json scaler = nullptr;
    if (opt.fit_scale) {
        auto [scaled, transform] = nsc::minmax_scale(train);
        train = std::move(scaled);
        scaler = {{"lo", std::vector<double>(transform.lo.data(),
                                             transform.lo.data() + transform.lo.size())},
                  {"span", std::vector<double>(transform.span.data(),
                                               transform.span.data() + transform.span.size())}};
    }

    const nsc::NSCConfig cfg = make_config(opt);

    std::vector<nsc::BarcodeRow> barcode_rows;
    nsc::BarcodeSink sink = nullptr;
    if (!opt.barcode_path.empty())
        sink = [&](int label, int dim, const std::vector<int>& verts, double birth,
                   double end) {
            barcode_rows.push_back(
                {label, dim, nsc::format_simplex_vertices(verts), birth, end});
        };

    const nsc::NSCModel model = nsc::fit(train, cfg, sink);

    nlohmann::json j = nsc::model_to_json(model);
    j["scaler"] = scaler;
    const std::string out = opt.out.empty() ? "model.json" : opt.out;
    std::ofstream file(out);
    if (!file) throw nsc::DataError("cannot open '" + out + "'");
    file << j.dump(1) << "\n";

    std::cout << "fitted " << model.classes.size() << " classes; model written to " << out
              << "\n";
    for (const auto& pc : model.classes)
        std::cout << "  class " << pc.class_label << ": R* = " << pc.prime_radius << ", "
                  << pc.maximal_count() << " maximal simplices over "
                  << pc.vertices.rows() << " vertices\n";
    if (!opt.barcode_path.empty()) {
        nsc::export_barcode_rows(std::move(barcode_rows), opt.barcode_path);
        std::cout << "barcode written to " << opt.barcode_path << "\n";
    }
    return 0;
}

int run_predict(const Options& opt) {
    if (opt.model_path.empty() || opt.data_path.empty())
        throw CLI::ValidationError("predict requires --model and --data");

    std::ifstream in(opt.model_path);
    if (!in) throw nsc::DataError("cannot open '" + opt.model_path + "'");
    nlohmann::json j;
    in >> j;
    const nsc::NSCModel model = nsc::model_from_json(j);

    nsc::LabeledDataset data = nsc::load_csv(opt.data_path);
    if (j.contains("scaler") && !j["scaler"].is_null()) {
        nsc::MinMaxTransform t;
        const auto lo = j["scaler"]["lo"].get<std::vector<double>>();
        const auto span = j["scaler"]["span"].get<std::vector<double>>();
        t.lo = Eigen::Map<const Eigen::RowVectorXd>(lo.data(), lo.size());
        t.span = Eigen::Map<const Eigen::RowVectorXd>(span.data(), span.size());
        data.points = t.apply(data.points);
    }

    nsc::NSCEvaluator evaluator(model);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw nsc::DataError("cannot open '" + opt.out + "'");
        out = &file;
    }
    (*out) << "row,predicted,actual";
    for (const auto& pc : model.classes) (*out) << ",d_class" << pc.class_label;
    (*out) << "\n" << std::setprecision(17);

    int wrong = 0;
    for (int i = 0; i < data.n(); ++i) {
        const auto pred = evaluator.predict(data.points.row(i).transpose());
        if (pred.label != data.labels[i]) ++wrong;
        (*out) << i << "," << pred.label << "," << data.labels[i];
        for (Eigen::Index c = 0; c < pred.class_distances.size(); ++c)
            (*out) << "," << pred.class_distances[c];
        (*out) << "\n";
    }
    std::cout << "error rate: " << std::fixed << std::setprecision(4)
              << 100.0 * wrong / double(data.n()) << "% (" << wrong << "/" << data.n()
              << ")\n";
    return 0;
}

int run_eval(const Options& opt) {
    nsc::ExperimentSpec spec;
    spec.methods = parse_methods(opt.methods);
    spec.config = make_config(opt);
    spec.repetitions = opt.repetitions;
    spec.train_fraction = opt.train_fraction;
    spec.stratified = opt.stratified;
    spec.scale = opt.scale;
    spec.pca_dim = opt.pca_dim;
    spec.seed = opt.seed;

    if (const auto kind = generator_kind(opt.dataset)) {
        spec.generator = make_generator(opt, *kind);
    } else if (!opt.dataset.empty()) {
        spec.dataset = nsc::load_csv(opt.dataset);
    } else {
        throw CLI::ValidationError("eval requires --dataset");
    }

    const nsc::ExperimentReport report = nsc::run_experiment(spec);
    std::cout << nsc::report_to_text(report);
    if (!opt.out.empty()) {
        std::ofstream file(opt.out);
        if (!file) throw nsc::DataError("cannot open '" + opt.out + "'");
        file << nsc::report_to_csv(report);
        std::cout << "per-repetition errors written to " << opt.out << "\n";
    }
    return 0;
}

int run_export(const Options& opt) {
    if (opt.model_path.empty()) throw CLI::ValidationError("export requires --model");
    const nsc::NSCModel model = nsc::load_model(opt.model_path);
    const std::string prefix = opt.out.empty() ? "complex" : opt.out;
    const auto files = nsc::export_complex(model, prefix);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    if (model.dim() != 2)
        std::cout << "SVG skipped: data dimension is " << model.dim() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nearest prime simplicial complex classifier"};
    app.require_subcommand(1);
    Options opt;

    // config file values act as defaults; explicit flags win
    std::string config_path;
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (!std::strcmp(argv[i], "--config")) config_path = argv[i + 1];
        if (!config_path.empty()) apply_config_file(config_path, opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const nsc::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    }
    std::string config_sink;  // registered so CLI11 accepts the flag

    auto* c_generate = app.add_subcommand("generate", "write <name>_train/_test CSVs");
    c_generate->add_option("--config", config_sink, "flat key = value configuration file");
    add_data_options(c_generate, opt);
    c_generate->add_option("--train_fraction", opt.train_fraction);
    c_generate->add_option("--stratified", opt.stratified);
    c_generate->add_option("--seed", opt.seed);
    c_generate->add_option("--out", opt.out, "output prefix");

    auto* c_fit = app.add_subcommand("fit", "fit a model on a CSV");
    c_fit->add_option("--config", config_sink, "flat key = value configuration file");
    c_fit->add_option("--data", opt.data_path, "training CSV")->required();
    add_classifier_options(c_fit, opt);
    c_fit->add_option("--scale", opt.fit_scale, "min-max scale before fitting");
    c_fit->add_option("--out", opt.out, "model output path");
    c_fit->add_option("--barcode", opt.barcode_path, "also write the barcode CSV");

    auto* c_predict = app.add_subcommand("predict", "classify a CSV with a fitted model");
    c_predict->add_option("--config", config_sink, "flat key = value configuration file");
    c_predict->add_option("--model", opt.model_path)->required();
    c_predict->add_option("--data", opt.data_path)->required();
    c_predict->add_option("--out", opt.out, "predictions CSV (default stdout)");

    auto* c_eval = app.add_subcommand("eval", "repeated experiments with error table");
    c_eval->add_option("--config", config_sink, "flat key = value configuration file");
    add_data_options(c_eval, opt);
    add_classifier_options(c_eval, opt);
    c_eval->add_option("--methods", opt.methods, "comma list: nsc, nsc-m, 1-nn, 3-nn");
    c_eval->add_option("--repetitions", opt.repetitions);
    c_eval->add_option("--train_fraction", opt.train_fraction);
    c_eval->add_option("--stratified", opt.stratified);
    c_eval->add_option("--scale", opt.scale, "min-max scale per repetition");
    c_eval->add_option("--pca_dim", opt.pca_dim, "PCA target dimension (0 = off)");
    c_eval->add_option("--out", opt.out, "per-repetition error CSV");

    auto* c_export = app.add_subcommand("export", "complex CSVs (+ SVG for 2-D models)");
    c_export->add_option("--config", config_sink, "flat key = value configuration file");
    c_export->add_option("--model", opt.model_path)->required();
    c_export->add_option("--out", opt.out, "output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_generate->parsed()) {
            print_resolved(opt, "generate");
            return run_generate(opt);
        }
        if (c_fit->parsed()) {
            print_resolved(opt, "fit");
            return run_fit(opt);
        }
        if (c_predict->parsed()) {
            return run_predict(opt);
        }
        if (c_eval->parsed()) {
            print_resolved(opt, "eval");
            return run_eval(opt);
        }
        if (c_export->parsed()) {
            return run_export(opt);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const nsc::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const nsc::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
