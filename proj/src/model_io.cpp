#include "bntest/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bntest/errors.hpp"

namespace bntest {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

struct ParsedNodes {
  Dag dag;
  std::vector<int> arity;
  std::vector<std::vector<double>> cpt;
  bool has_cpt = false;
};

ParsedNodes parse_nodes(const std::string& path) {
  const json doc = read_json(path);
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
    throw IoError(path + ": expected an object with a \"nodes\" array");
  const auto& nodes = doc["nodes"];
  const int n = static_cast<int>(nodes.size());

  std::vector<std::vector<int>> parents;
  std::vector<std::string> labels;
  std::vector<int> arity;
  std::vector<std::vector<double>> cpt;
  bool any_cpt = false, all_cpt = true;
  for (int v = 0; v < n; ++v) {
    const auto& node = nodes[static_cast<std::size_t>(v)];
    if (!node.is_object() || !node.contains("arity") ||
        !node.contains("parents"))
      throw IoError(path + ": node " + std::to_string(v) +
                    " needs \"arity\" and \"parents\"");
    arity.push_back(node["arity"].get<int>());
    parents.push_back(node["parents"].get<std::vector<int>>());
    labels.push_back(node.contains("name") ? node["name"].get<std::string>()
                                           : "X" + std::to_string(v));
    if (node.contains("cpt")) {
      any_cpt = true;
      std::vector<double> flat;
      for (const auto& row : node["cpt"])
        for (const auto& cell : row) flat.push_back(cell.get<double>());
      cpt.push_back(std::move(flat));
    } else {
      all_cpt = false;
      cpt.emplace_back();
    }
  }
  if (any_cpt && !all_cpt)
    throw IoError(path + ": either every node or no node may carry a table");
  try {
    Dag dag(n, std::move(parents), std::move(labels));
    topological_order(dag);  // force the acyclicity check at load time
    return ParsedNodes{std::move(dag), std::move(arity), std::move(cpt),
                       any_cpt};
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace

BayesNet load_model(const std::string& path) {
  ParsedNodes parsed = parse_nodes(path);
  if (!parsed.has_cpt) throw IoError(path + ": model has no tables");
  try {
    return BayesNet(std::move(parsed.dag), std::move(parsed.arity),
                    std::move(parsed.cpt));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

Dag load_dag(const std::string& path) { return parse_nodes(path).dag; }

void save_model(const BayesNet& net, const std::string& path) {
  json nodes = json::array();
  for (int v = 0; v < net.node_count(); ++v) {
    json node;
    node["name"] = net.dag().label(v);
    node["arity"] = net.arity()[static_cast<std::size_t>(v)];
    node["parents"] = net.dag().parents(v);
    json rows = json::array();
    for (std::size_t r = 0; r < net.parent_rows(v); ++r) {
      const auto row = net.cpt_row(v, r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    node["cpt"] = std::move(rows);
    nodes.push_back(std::move(node));
  }
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << json{{"nodes", std::move(nodes)}}.dump(2) << "\n";
}

SampleSet load_samples(const std::string& path, std::span<const int> arity) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": missing header row");
  int cols = 1;
  for (char ch : line)
    if (ch == ',') ++cols;

  std::vector<std::uint32_t> data;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(cell, &pos);
      } catch (const std::exception&) {
        throw IoError(path + ": bad symbol \"" + cell + "\"");
      }
      if (pos != cell.size())
        throw IoError(path + ": bad symbol \"" + cell + "\"");
      data.push_back(static_cast<std::uint32_t>(value));
      ++c;
    }
    if (c != cols)
      throw IoError(path + ": row " + std::to_string(rows + 2) + " has " +
                    std::to_string(c) + " cells, header has " +
                    std::to_string(cols));
    ++rows;
  }

  std::vector<int> sizes;
  if (!arity.empty()) {
    if (arity.size() != static_cast<std::size_t>(cols))
      throw IoError(path + ": arity list does not match column count");
    sizes.assign(arity.begin(), arity.end());
  } else {
    sizes.assign(static_cast<std::size_t>(cols), 1);
    for (std::size_t r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        sizes[static_cast<std::size_t>(c)] = std::max(
            sizes[static_cast<std::size_t>(c)],
            static_cast<int>(data[r * static_cast<std::size_t>(cols) +
                                  static_cast<std::size_t>(c)]) +
                1);
  }
  try {
    return SampleSet(rows, std::move(sizes), std::move(data));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_samples(const SampleSet& samples,
                  std::span<const std::string> names, const std::string& path) {
  if (names.size() != static_cast<std::size_t>(samples.cols()))
    throw ShapeMismatch("name count does not match sample columns");
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  for (std::size_t c = 0; c < names.size(); ++c)
    out << (c ? "," : "") << names[c];
  out << "\n";
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    for (int c = 0; c < samples.cols(); ++c)
      out << (c ? "," : "") << samples.at(r, c);
    out << "\n";
  }
}

Tree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<std::pair<int, int>> edges;
  int max_node = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    int u = 0, v = 0;
    if (!(ss >> u >> v))
      throw IoError(path + ": line " + std::to_string(line_no) +
                    " is not an edge");
    edges.emplace_back(u, v);
    max_node = std::max({max_node, u, v});
  }
  try {
    return Tree(max_node + 1, edges);
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

ProductModel load_product_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  ProductModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      model.means.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw IoError(path + ": bad mean \"" + line + "\"");
    }
  }
  if (model.means.empty()) throw IoError(path + ": no coordinates");
  return model;
}

Factorization load_factorization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  Factorization fact;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto bar = line.find('|');
    FactorBlock block;
    std::stringstream members(line.substr(0, bar));
    int v = 0;
    while (members >> v) block.members.push_back(v);
    if (bar != std::string::npos) {
      std::stringstream given(line.substr(bar + 1));
      while (given >> v) block.given.push_back(v);
    }
    fact.blocks.push_back(std::move(block));
  }
  return fact;
}

}  // namespace bntest
