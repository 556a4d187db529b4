/**
 * Exports for plotting: per-class complex CSVs (vertices, edges, triangles),
 * an SVG rendering for 2-dimensional models, and barcode CSVs.
 */

#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "nsc/barcode.hpp"
#include "nsc/classifier.hpp"

namespace nsc {

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("export: cannot open '" + path + "'");
    return out;
}

inline std::string class_file(const std::string& prefix, int label,
                              const std::string& what) {
    return prefix + "_class" + std::to_string(label) + "_" + what + ".csv";
}

}  // namespace detail

/**
 * Write vertices/edges/triangles CSVs per class (full precision coordinates;
 * maximal simplices of dimension above 2 land in simplices_dim<k>.csv).
 * For 2-dimensional models additionally writes <prefix>.svg.
 * Returns the list of files written.
 */
inline std::vector<std::string> export_complex(const NSCModel& model,
                                               const std::string& prefix) {
    std::vector<std::string> written;

    for (const auto& pc : model.classes) {
        const int d = static_cast<int>(pc.vertices.cols());
        {
            auto path = detail::class_file(prefix, pc.class_label, "vertices");
            auto out = detail::open_for_write(path);
            out << std::setprecision(17);
            for (int j = 0; j < d; ++j) out << (j ? "," : "") << "x" << j;
            out << "\n";
            for (Eigen::Index i = 0; i < pc.vertices.rows(); ++i) {
                for (int j = 0; j < d; ++j) out << (j ? "," : "") << pc.vertices(i, j);
                out << "\n";
            }
            written.push_back(path);
        }
        auto dump_tuples = [&](int dim, const std::string& what) {
            auto path = detail::class_file(prefix, pc.class_label, what);
            auto out = detail::open_for_write(path);
            for (int t = 0; t <= dim; ++t) out << (t ? "," : "") << "v" << t;
            out << "\n";
            if (dim < static_cast<int>(pc.maximal_by_dim.size())) {
                const auto& flat = pc.maximal_by_dim[dim];
                const std::size_t width = dim + 1;
                for (std::size_t o = 0; o + width <= flat.size(); o += width) {
                    for (std::size_t t = 0; t < width; ++t)
                        out << (t ? "," : "") << flat[o + t];
                    out << "\n";
                }
            }
            written.push_back(path);
        };
        dump_tuples(1, "edges");
        dump_tuples(2, "triangles");
        for (int k = 3; k < static_cast<int>(pc.maximal_by_dim.size()); ++k)
            if (!pc.maximal_by_dim[k].empty())
                dump_tuples(k, "simplices_dim" + std::to_string(k));
    }

    if (model.dim() == 2) {
        static const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b"};
        double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
        for (const auto& pc : model.classes) {
            if (pc.vertices.rows() == 0) continue;
            lo_x = std::min(lo_x, pc.vertices.col(0).minCoeff());
            hi_x = std::max(hi_x, pc.vertices.col(0).maxCoeff());
            lo_y = std::min(lo_y, pc.vertices.col(1).minCoeff());
            hi_y = std::max(hi_y, pc.vertices.col(1).maxCoeff());
        }
        const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
        const double size = 800.0, pad = 20.0;
        auto sx = [&](double x) { return pad + (x - lo_x) / span * (size - 2 * pad); };
        auto sy = [&](double y) { return size - pad - (y - lo_y) / span * (size - 2 * pad); };

        const std::string path = prefix + ".svg";
        auto out = detail::open_for_write(path);
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
            << "\" height=\"" << size << "\">\n";
        int ci = 0;
        for (const auto& pc : model.classes) {
            const char* color = kColors[ci++ % 6];
            if (pc.maximal_by_dim.size() > 2) {
                const auto& tris = pc.maximal_by_dim[2];
                for (std::size_t o = 0; o + 3 <= tris.size(); o += 3) {
                    out << "<polygon points=\"";
                    for (int t = 0; t < 3; ++t)
                        out << sx(pc.vertices(tris[o + t], 0)) << ","
                            << sy(pc.vertices(tris[o + t], 1)) << " ";
                    out << "\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
                }
            }
            if (pc.maximal_by_dim.size() > 1) {
                const auto& edges = pc.maximal_by_dim[1];
                for (std::size_t o = 0; o + 2 <= edges.size(); o += 2)
                    out << "<line x1=\"" << sx(pc.vertices(edges[o], 0)) << "\" y1=\""
                        << sy(pc.vertices(edges[o], 1)) << "\" x2=\""
                        << sx(pc.vertices(edges[o + 1], 0)) << "\" y2=\""
                        << sy(pc.vertices(edges[o + 1], 1)) << "\" stroke=\"" << color
                        << "\" stroke-width=\"1\"/>\n";
            }
            for (Eigen::Index i = 0; i < pc.vertices.rows(); ++i)
                out << "<circle cx=\"" << sx(pc.vertices(i, 0)) << "\" cy=\""
                    << sy(pc.vertices(i, 1)) << "\" r=\"1.5\" fill=\"" << color << "\"/>\n";
        }
        out << "</svg>\n";
        written.push_back(path);
    }
    return written;
}

/// Read back one exported class (vertices + maximal index tuples).
inline PrimeComplex import_complex_class(const std::string& prefix, int label) {
    PrimeComplex pc;
    pc.class_label = label;

    auto read_rows = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DataError("import: cannot open '" + path + "'");
        std::vector<std::vector<double>> rows;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (first) {  // header
                first = false;
                continue;
            }
            std::vector<double> vals;
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
            rows.push_back(std::move(vals));
        }
        return rows;
    };

    const auto vrows = read_rows(detail::class_file(prefix, label, "vertices"));
    const int d = vrows.empty() ? 0 : static_cast<int>(vrows[0].size());
    pc.vertices.resize(vrows.size(), d);
    for (std::size_t i = 0; i < vrows.size(); ++i)
        for (int j = 0; j < d; ++j) pc.vertices(i, j) = vrows[i][j];

    pc.maximal_by_dim.assign(3, {});
    for (int dim : {1, 2}) {
        const auto trows =
            read_rows(detail::class_file(prefix, label, dim == 1 ? "edges" : "triangles"));
        for (const auto& r : trows)
            for (double v : r)
                pc.maximal_by_dim[dim].push_back(static_cast<std::uint32_t>(v));
    }
    return pc;
}

/// Barcode CSV: columns (class, dim, vertices, birth, end), sorted by (class, dim, birth).
struct BarcodeRow {
    int class_label = 0;
    int dim = 0;
    std::string vertices;  // e.g. "[0 3 7]"
    double birth = 0.0;
    double end = 0.0;
};

inline void export_barcode_rows(std::vector<BarcodeRow> rows, const std::string& path) {
    std::sort(rows.begin(), rows.end(), [](const BarcodeRow& a, const BarcodeRow& b) {
        if (a.class_label != b.class_label) return a.class_label < b.class_label;
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.vertices < b.vertices;
    });
    auto out = detail::open_for_write(path);
    out << "class,dim,vertices,birth,end\n" << std::setprecision(17);
    for (const auto& r : rows)
        out << r.class_label << "," << r.dim << "," << r.vertices << "," << r.birth << ","
            << r.end << "\n";
}

inline std::string format_simplex_vertices(const std::vector<int>& verts) {
    std::string s = "[";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(verts[i]);
    }
    s += "]";
    return s;
}

inline void export_barcode(
    const std::vector<std::pair<int, std::vector<BarcodeInterval>>>& per_class,
    const std::string& path) {
    std::vector<BarcodeRow> rows;
    for (const auto& [label, intervals] : per_class)
        for (const auto& bar : intervals)
            rows.push_back({label, bar.simplex.dimension(),
                            format_simplex_vertices(bar.simplex.vertices()), bar.birth,
                            bar.end});
    export_barcode_rows(std::move(rows), path);
}

}  // namespace nsc
