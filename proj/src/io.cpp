#include "cosc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cosc/errors.hpp"

namespace cosc {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Graph load_graph(const std::string& path, VertexWeightMode mode) {
  std::ifstream in = open_in(path);
  std::string line;
  int line_no = 0;

  int n = -1;
  long long m = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream head(line);
    if (!(head >> n >> m) || n < 1 || m < 0)
      throw ParseError(path, line_no, "expected header 'n m'");
    break;
  }
  if (n < 0) throw ParseError(path, line_no, "missing header line");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  long long read = 0;
  while (read < m && std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream row(line);
    int i = 0, j = 0;
    double w = 0.0;
    if (!(row >> i >> j >> w))
      throw ParseError(path, line_no, "expected edge line 'i j w'");
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError(path, line_no, "edge endpoint out of range");
    if (i >= j) throw ParseError(path, line_no, "edges require i < j");
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError(path, line_no, "edge weight must be positive and finite");
    edges.push_back({i, j, w});
    ++read;
  }
  if (read != m)
    throw ParseError(path, line_no, "expected " + std::to_string(m) +
                                        " edges, found " + std::to_string(read));
  try {
    return Graph::with_mode(n, std::move(edges), mode);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out = open_out(path);
  out.precision(17);
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

ConstraintSet load_constraints(const std::string& path, int n) {
  std::ifstream in = open_in(path);
  ConstraintSet q;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream row(line);
    std::string kind;
    int i = 0, j = 0;
    row >> kind >> i >> j;
    if (row.fail())
      throw ParseError(path, line_no, "expected 'ML i j [q]' or 'CL i j [q]'");
    double weight = 1.0;
    if (!(row >> weight)) {
      weight = 1.0;
    } else if (!(weight >= 0.0 && weight <= 1.0)) {
      throw ParseError(path, line_no, "constraint weight must lie in [0, 1]");
    }
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError(path, line_no, "constraint vertex out of range");
    if (i == j) throw ParseError(path, line_no, "constraint endpoints must differ");
    if (weight == 0.0) continue;  // weightless constraint carries no information
    try {
      if (kind == "ML")
        q.add_must(i, j, weight);
      else if (kind == "CL")
        q.add_cannot(i, j, weight);
      else
        throw ParseError(path, line_no, "unknown constraint kind '" + kind + "'");
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return q;
}

void save_constraints(const std::string& path, const ConstraintSet& q) {
  std::ofstream out = open_out(path);
  out.precision(17);
  for (const auto& p : q.must()) out << "ML " << p.i << ' ' << p.j << ' ' << p.q << '\n';
  for (const auto& p : q.cannot()) out << "CL " << p.i << ' ' << p.j << ' ' << p.q << '\n';
}

std::vector<int> load_labels(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream row(line);
    int value = 0;
    if (!(row >> value)) throw ParseError(path, line_no, "expected one integer label");
    labels.push_back(value);
  }
  if (labels.empty()) throw ParseError(path, line_no, "no labels found");
  return labels;
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out = open_out(path);
  for (int label : labels) out << label << '\n';
}

std::vector<std::vector<double>> load_points_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<double>> points;
  std::string line;
  int line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const std::string cell = line.substr(start, end - start);
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
      while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
      const auto result = std::from_chars(first, last, value);
      if (result.ec != std::errc() || result.ptr != last)
        throw ParseError(path, line_no, "non-numeric cell '" + cell + "'");
      row.push_back(value);
      start = end + 1;
    }
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      throw ParseError(path, line_no, "inconsistent column count");
    points.push_back(std::move(row));
  }
  if (points.empty()) throw ParseError(path, line_no, "no points found");
  return points;
}

}  // namespace cosc
