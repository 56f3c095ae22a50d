#pragma once

#include <string>
#include <vector>

#include "graspel/data.hpp"
#include "graspel/graph.hpp"
#include "graspel/learn.hpp"
#include "graspel/spectral.hpp"

namespace graspel {

// Edge-list format shared by every command:
//   #nodes <n>
//   u<TAB>v<TAB>w        (zero-based, u < v)
void write_graph(const SparseGraph& g, const std::string& path);
SparseGraph read_graph(const std::string& path);

// Embedding export: "#dims <r-1> #sigma <sigma>" then one row of
// tab-separated subspace coordinates per node.
void write_embedding(const SpectralEmbedding& emb, const std::string& path);

/// Rectangular numeric CSV, rows are data points. The result is row-centered.
DataMatrix ingest_csv(const std::string& path, bool has_header);

/// JSON lines, one object per iteration.
void write_trace(const LearnTrace& trace, const std::string& path);

void write_labels(const std::vector<int>& labels, const std::string& path);
std::vector<int> read_labels(const std::string& path);

}  // namespace graspel
