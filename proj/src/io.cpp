#include "gesbn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string_view>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"

namespace gesbn {

using nlohmann::json;

namespace {

constexpr int kModelVersion = 1;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> class_lines(const Cpdag& c, const VariableSpec& spec) {
  std::vector<std::string> lines;
  for (const Edge& e : c.directed_edges()) lines.push_back(spec.name(e.from) + " -> " + spec.name(e.to));
  for (const Edge& e : c.undirected_edges()) lines.push_back(spec.name(e.from) + " -- " + spec.name(e.to));
  return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep, bool trailing) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  if (trailing && !parts.empty()) out += sep;
  return out;
}

std::vector<std::string> split_statements(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string role_name(VariableRole r) {
  switch (r) {
    case VariableRole::observed:
      return "observed";
    case VariableRole::hidden:
      return "hidden";
    case VariableRole::selection:
      return "selection";
  }
  return "observed";
}

VariableRole parse_role(const std::string& s) {
  if (s == "observed") return VariableRole::observed;
  if (s == "hidden") return VariableRole::hidden;
  if (s == "selection") return VariableRole::selection;
  throw FormatError("unknown variable role '" + s + "'");
}

}  // namespace

std::string encode_class(const Cpdag& c, const VariableSpec& spec) {
  return join(class_lines(c, spec), "\n", true);
}

std::string encode_dag(const Dag& g, const VariableSpec& spec) {
  std::vector<std::string> lines;
  for (const Edge& e : g.edges()) lines.push_back(spec.name(e.from) + " -> " + spec.name(e.to));
  return join(lines, "\n", true);
}

std::string encode_class_compact(const Cpdag& c, const VariableSpec& spec) {
  std::vector<std::string> lines = class_lines(c, spec);
  for (auto& l : lines) l.erase(std::remove(l.begin(), l.end(), ' '), l.end());
  return join(lines, ";", false);
}

namespace {

void parse_edges(const std::string& text, const VariableSpec& spec, std::vector<Edge>& directed,
                 std::vector<Edge>& undirected) {
  for (const std::string& stmt : split_statements(text)) {
    if (!stmt.empty() && stmt.front() == '#') continue;
    std::size_t pos = stmt.find("->");
    bool is_directed = true;
    if (pos == std::string::npos) {
      pos = stmt.find("--");
      is_directed = false;
    }
    if (pos == std::string::npos) throw FormatError("cannot parse edge '" + stmt + "'");
    const int u = spec.index_of(trim(stmt.substr(0, pos)));
    const int v = spec.index_of(trim(stmt.substr(pos + 2)));
    (is_directed ? directed : undirected).push_back({u, v});
  }
}

}  // namespace

Cpdag parse_class(const std::string& text, const VariableSpec& spec) {
  std::vector<Edge> directed;
  std::vector<Edge> undirected;
  parse_edges(text, spec, directed, undirected);
  if (undirected.empty()) return dag_to_cpdag(Dag::from_edges(spec.size(), directed));
  Cpdag c = Cpdag::from_edges(spec.size(), directed, undirected);
  if (!is_completed(c)) throw StructureError("edge list is not a completed PDAG");
  return c;
}

Dag parse_dag(const std::string& text, const VariableSpec& spec) {
  std::vector<Edge> directed;
  std::vector<Edge> undirected;
  parse_edges(text, spec, directed, undirected);
  if (!undirected.empty()) throw FormatError("a DAG may not contain undirected edges");
  return Dag::from_edges(spec.size(), directed);
}

CategoricalDataset read_dataset_csv(std::istream& in, const std::optional<VariableSpec>& spec) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("dataset is missing its header row");
  const std::vector<std::string> header = split_csv_line(trim(line));
  if (spec) {
    if (header != spec->names()) throw FormatError("dataset header does not match the schema");
  }

  std::vector<std::vector<std::int32_t>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_csv_line(t);
    if (cells.size() != header.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " fields");
    }
    std::vector<std::int32_t> row;
    for (const std::string& cell : cells) {
      try {
        std::size_t used = 0;
        const int value = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(value);
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": '" + cell + "' is not an integer state");
      }
    }
    rows.push_back(std::move(row));
  }

  StateMatrix records(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      records(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  if (spec) return CategoricalDataset(*spec, std::move(records));

  std::vector<int> cards;
  for (Eigen::Index j = 0; j < records.cols(); ++j) {
    cards.push_back(records.rows() == 0 ? 1 : std::max(1, records.col(j).maxCoeff() + 1));
  }
  return CategoricalDataset(VariableSpec(header, std::move(cards)), std::move(records));
}

void write_dataset_csv(std::ostream& out, const CategoricalDataset& data) {
  out << join(data.spec().names(), ",", false) << '\n';
  const StateMatrix& rec = data.records();
  for (Eigen::Index i = 0; i < rec.rows(); ++i) {
    for (Eigen::Index j = 0; j < rec.cols(); ++j) {
      if (j > 0) out << ',';
      out << rec(i, j);
    }
    out << '\n';
  }
}

VariableSpec read_schema(std::istream& in) {
  try {
    const json doc = json::parse(in);
    std::vector<std::string> names;
    std::vector<int> cards;
    for (const auto& v : doc.at("variables")) {
      names.push_back(v.at("name").get<std::string>());
      cards.push_back(v.at("cardinality").get<int>());
    }
    return VariableSpec(std::move(names), std::move(cards));
  } catch (const json::exception& e) {
    throw FormatError(std::string("schema: ") + e.what());
  }
}

void write_schema(std::ostream& out, const VariableSpec& spec) {
  json vars = json::array();
  for (int v = 0; v < spec.size(); ++v) vars.push_back({{"name", spec.name(v)}, {"cardinality", spec.card(v)}});
  out << json{{"variables", vars}}.dump(2) << '\n';
}

GoldStandard read_model(std::istream& in) {
  try {
    const json doc = json::parse(in);
    if (doc.at("version").get<int>() != kModelVersion) throw FormatError("unsupported model version");
    std::vector<std::string> names;
    std::vector<int> cards;
    GoldStandard model;
    for (const auto& v : doc.at("variables")) {
      names.push_back(v.at("name").get<std::string>());
      cards.push_back(v.at("cardinality").get<int>());
      model.roles.push_back(parse_role(v.value("role", std::string("observed"))));
      model.selection_values.push_back(v.contains("selection_value") ? v.at("selection_value").get<int>() : -1);
    }
    VariableSpec spec(std::move(names), std::move(cards));
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({spec.index_of(e.at(0).get<std::string>()), spec.index_of(e.at(1).get<std::string>())});
    }
    model.bn.structure = Dag::from_edges(spec.size(), edges);
    model.bn.spec = spec;
    if (doc.contains("cpts")) {
      const auto& cpts = doc.at("cpts");
      if (cpts.size() != static_cast<std::size_t>(spec.size())) throw FormatError("one cpt per variable required");
      for (int v = 0; v < spec.size(); ++v) {
        const auto flat = cpts.at(static_cast<std::size_t>(v)).get<std::vector<double>>();
        const Eigen::Index r = spec.card(v);
        const Eigen::Index q = state_count(spec, model.bn.structure.parents(v));
        if (static_cast<Eigen::Index>(flat.size()) != q * r) {
          throw FormatError("cpt of '" + spec.name(v) + "' has the wrong length");
        }
        Eigen::MatrixXd table(q, r);
        for (Eigen::Index j = 0; j < q; ++j) {
          for (Eigen::Index k = 0; k < r; ++k) table(j, k) = flat[static_cast<std::size_t>(j * r + k)];
        }
        model.bn.cpts.push_back(std::move(table));
      }
    }
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
}

void write_model(std::ostream& out, const GoldStandard& model) {
  model.validate();
  const VariableSpec& spec = model.bn.spec;
  json vars = json::array();
  for (int v = 0; v < spec.size(); ++v) {
    json entry = {{"name", spec.name(v)}, {"cardinality", spec.card(v)}, {"role", role_name(model.roles[v])}};
    if (model.roles[v] == VariableRole::selection) entry["selection_value"] = model.selection_values[v];
    vars.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const Edge& e : model.bn.structure.edges()) edges.push_back({spec.name(e.from), spec.name(e.to)});
  json doc = {{"version", kModelVersion}, {"variables", vars}, {"edges", edges}};
  if (model.bn.has_parameters()) {
    json cpts = json::array();
    for (const auto& table : model.bn.cpts) {
      std::vector<double> flat;
      for (Eigen::Index j = 0; j < table.rows(); ++j) {
        for (Eigen::Index k = 0; k < table.cols(); ++k) flat.push_back(table(j, k));
      }
      cpts.push_back(flat);
    }
    doc["cpts"] = std::move(cpts);
  }
  out << doc.dump(2) << '\n';
}

void write_joint_csv(std::ostream& out, const JointTable& p) {
  out << join(p.spec().names(), ",", false) << ",probability\n";
  char buf[40];
  for (Eigen::Index i = 0; i < p.cells(); ++i) {
    for (int s : p.decode(i)) out << s << ',';
    std::snprintf(buf, sizeof buf, "%.17g", p.probs()[i]);
    out << buf << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw FormatError("write failed for '" + path + "'");
}

}  // namespace gesbn
