#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "gesbn/cpdag.hpp"
#include "gesbn/dag.hpp"
#include "gesbn/datagen.hpp"
#include "gesbn/dataset.hpp"
#include "gesbn/joint_table.hpp"
#include "gesbn/variable_spec.hpp"

namespace gesbn {

/// One line per edge, "u -> v" or "u -- v", nodes by name, directed edges
/// first, each group sorted by node index.
std::string encode_class(const Cpdag& c, const VariableSpec& spec);
std::string encode_dag(const Dag& g, const VariableSpec& spec);
/// Same edges joined by ';' on one line (results CSV cells). "" for no edges.
std::string encode_class_compact(const Cpdag& c, const VariableSpec& spec);

/// Parses the line format (or the compact one). All-directed input is read
/// as a DAG and completed; mixed input must already be a completed PDAG.
/// Throws FormatError / StructureError.
Cpdag parse_class(const std::string& text, const VariableSpec& spec);
Dag parse_dag(const std::string& text, const VariableSpec& spec);

/// CSV with a header row of names and integer codes. With `spec` the header
/// must match it; otherwise cardinalities are inferred as max + 1.
CategoricalDataset read_dataset_csv(std::istream& in, const std::optional<VariableSpec>& spec);
void write_dataset_csv(std::ostream& out, const CategoricalDataset& data);

/// Schema sidecar: {"variables": [{"name": ..., "cardinality": ...}, ...]}
VariableSpec read_schema(std::istream& in);
void write_schema(std::ostream& out, const VariableSpec& spec);

/// Model file: version, variables (name, cardinality, role, selection_value),
/// edges, optional cpts (row-major per variable).
GoldStandard read_model(std::istream& in);
void write_model(std::ostream& out, const GoldStandard& model);

/// One row per full state plus a probability column.
void write_joint_csv(std::ostream& out, const JointTable& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gesbn
