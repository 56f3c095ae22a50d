#include "graspel/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "graspel/errors.hpp"

namespace graspel {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

}  // namespace

void write_graph(const SparseGraph& g, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "#nodes " << g.num_nodes() << "\n";
    for (const Edge& e : g.sorted_edges())
        out << e.u << "\t" << e.v << "\t" << format_double(e.w) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

SparseGraph read_graph(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError("empty graph file", 1);
    ++lineno;
    std::istringstream header(line);
    std::string tag;
    int n = 0;
    if (!(header >> tag >> n) || tag != "#nodes" || n <= 0)
        throw ParseError("expected '#nodes <n>' header", lineno);

    SparseGraph g(n);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        int u = 0, v = 0;
        double w = 0.0;
        std::string extra;
        if (!(row >> u >> v >> w) || (row >> extra))
            throw ParseError("expected 'u v w'", lineno);
        if (u >= v) throw ParseError("edges must satisfy u < v", lineno);
        try {
            g.add_edge(u, v, w);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return g;
}

void write_embedding(const SpectralEmbedding& emb, const std::string& path) {
    if (!emb.has_subspace()) throw std::invalid_argument("embedding subspace not built");
    std::ofstream out = open_out(path);
    out << "#dims " << emb.subspace.cols() << " #sigma " << format_double(emb.sigma) << "\n";
    for (int i = 0; i < emb.subspace.rows(); ++i) {
        for (int j = 0; j < emb.subspace.cols(); ++j) {
            if (j > 0) out << "\t";
            out << format_double(emb.subspace(i, j));
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

DataMatrix ingest_csv(const std::string& path, bool has_header) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && has_header) continue;
        if (line.empty()) throw ParseError("empty row", lineno);

        std::vector<double> row;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            const std::string cell = line.substr(pos, comma == std::string::npos
                                                          ? std::string::npos
                                                          : comma - pos);
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end == cell.c_str() || *end != '\0')
                throw ParseError("non-numeric cell '" + cell + "'", lineno);
            row.push_back(value);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (width == 0)
            width = row.size();
        else if (row.size() != width)
            throw ParseError("ragged row", lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows", lineno == 0 ? 1 : lineno);

    Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return center_rows(DataMatrix(std::move(values)));
}

void write_trace(const LearnTrace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    for (const IterationRecord& rec : trace.iterations) {
        nlohmann::json j{{"iter", rec.iter},
                         {"eta_max", rec.max_distortion},
                         {"edges_added", rec.edges_added},
                         {"components", rec.components}};
        if (rec.objective) j["objective"] = *rec.objective;
        out << j.dump() << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_labels(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out = open_out(path);
    for (int label : labels) out << label << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<int> read_labels(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<int> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        int label = 0;
        std::string extra;
        if (!(row >> label) || (row >> extra)) throw ParseError("expected one label", lineno);
        labels.push_back(label);
    }
    if (labels.empty()) throw ParseError("no labels", 1);
    return labels;
}

}  // namespace graspel
