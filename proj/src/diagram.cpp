#include "bratteli/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace bratteli {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Diagram::Diagram(std::vector<std::string> vertex_names, std::vector<Edge> edges,
                 std::map<std::string, std::string> successor_assertions)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  for (int v = 0; v < static_cast<int>(names_.size()); ++v) {
    if (!vertex_index_.emplace(names_[v], v).second)
      throw Error(ErrorKind::MalformedLine, "duplicate vertex name '" + names_[v] + "'");
  }
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    if (!edge_index_.emplace(edges_[e].id, e).second)
      throw Error(ErrorKind::DuplicateEdgeId, "duplicate edge id '" + edges_[e].id + "'");
  }
  for (const auto& [from, to] : successor_assertions) {
    auto it = edge_index_.find(from);
    auto jt = edge_index_.find(to);
    if (it == edge_index_.end() || jt == edge_index_.end())
      throw Error(ErrorKind::UnknownEdge,
                  "successor assertion names unknown edge '" + (it == edge_index_.end() ? from : to) + "'");
    if (!asserted_succ_.emplace(it->second, jt->second).second)
      throw Error(ErrorKind::BadSuccessorTable, "edge '" + from + "' asserted twice");
    if (!asserted_pred_.emplace(jt->second, it->second).second)
      throw Error(ErrorKind::BadSuccessorTable, "edge '" + to + "' asserted as successor twice");
  }
  validate();
}

void Diagram::validate() {
  const int nv = vertex_count();
  fibers_.assign(nv, {});
  out_edges_.assign(nv, {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.source < 0 || ed.source >= nv || ed.target < 0 || ed.target >= nv)
      throw Error(ErrorKind::UnknownVertex, "edge '" + ed.id + "' references an unknown vertex");
    fibers_[ed.target].push_back(e);
    out_edges_[ed.source].push_back(e);
  }
  for (int v = 0; v < nv; ++v) {
    if (fibers_[v].empty() || out_edges_[v].empty())
      throw Error(ErrorKind::SinkOrSource, "vertex '" + names_[v] + "' is a sink or a source");
    auto& fib = fibers_[v];
    std::sort(fib.begin(), fib.end(),
              [&](int a, int b) { return edges_[a].rank < edges_[b].rank; });
    for (int r = 0; r < static_cast<int>(fib.size()); ++r) {
      if (edges_[fib[r]].rank != r)
        throw Error(ErrorKind::BadRankSet,
                    "fiber of vertex '" + names_[v] + "' does not carry ranks 0..k-1");
    }
  }

  // An asserted table must be a complete successor chain inside each fiber.
  asserted_min_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) asserted_min_[v] = fibers_[v].front();
  if (!asserted_succ_.empty()) {
    for (const auto& [from, to] : asserted_succ_) {
      if (edges_[from].target != edges_[to].target)
        throw Error(ErrorKind::BadSuccessorTable,
                    "asserted successor pair '" + edges_[from].id + "' -> '" + edges_[to].id +
                        "' crosses fibers");
    }
    for (int v = 0; v < nv; ++v) {
      const auto& fib = fibers_[v];
      std::vector<int> starts;
      for (int e : fib)
        if (!asserted_pred_.contains(e)) starts.push_back(e);
      if (starts.size() != 1)
        throw Error(ErrorKind::BadSuccessorTable,
                    "asserted table is not a single chain on the fiber of '" + names_[v] + "'");
      int cur = starts.front();
      size_t seen = 1;
      for (auto it = asserted_succ_.find(cur); it != asserted_succ_.end();
           it = asserted_succ_.find(cur)) {
        cur = it->second;
        ++seen;
      }
      if (seen != fib.size())
        throw Error(ErrorKind::BadSuccessorTable,
                    "asserted table does not cover the fiber of '" + names_[v] + "'");
      asserted_min_[v] = starts.front();
    }
  }
}

int Diagram::vertex_index(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end())
    throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + name + "'");
  return it->second;
}

int Diagram::edge_index(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw Error(ErrorKind::UnknownEdge, "unknown edge '" + id + "'");
  return it->second;
}

std::optional<int> Diagram::successor_edge(int e) const {
  const Edge& ed = edge(e);
  const auto& fib = fibers_[ed.target];
  if (ed.rank + 1 >= static_cast<int>(fib.size())) return std::nullopt;
  return fib[ed.rank + 1];
}

std::optional<int> Diagram::predecessor_edge(int e) const {
  const Edge& ed = edge(e);
  if (ed.rank == 0) return std::nullopt;
  return fibers_[ed.target][ed.rank - 1];
}

std::vector<int> Diagram::minimal_edges() const {
  std::vector<int> out;
  out.reserve(fibers_.size());
  for (const auto& fib : fibers_) out.push_back(fib.front());
  return out;
}

std::vector<int> Diagram::maximal_edges() const {
  std::vector<int> out;
  out.reserve(fibers_.size());
  for (const auto& fib : fibers_) out.push_back(fib.back());
  return out;
}

std::vector<std::vector<long long>> Diagram::incidence_matrix() const {
  std::vector<std::vector<long long>> m(vertex_count(),
                                        std::vector<long long>(vertex_count(), 0));
  for (const Edge& e : edges_) ++m[e.source][e.target];
  return m;
}

bool Diagram::is_primitive() const {
  const int n = vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const Edge& e : edges_) reach[e.source][e.target] = true;
  auto all_positive = [&] {
    for (const auto& row : reach)
      for (bool b : row)
        if (!b) return false;
    return true;
  };
  // Wielandt: a primitive n x n matrix has a positive power within n^2-2n+2.
  const int limit = n * n - 2 * n + 2;
  std::vector<std::vector<bool>> step = reach;
  for (int k = 1; k <= std::max(limit, 1); ++k) {
    if (all_positive()) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!reach[i][j]) continue;
        for (int l = 0; l < n; ++l)
          if (step[j][l]) next[i][l] = true;
      }
    reach = std::move(next);
  }
  return all_positive();
}

std::optional<int> Diagram::asserted_successor(int e) const {
  if (asserted_succ_.empty()) return successor_edge(e);
  auto it = asserted_succ_.find(e);
  if (it == asserted_succ_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Diagram::asserted_predecessor(int e) const {
  if (asserted_succ_.empty()) return predecessor_edge(e);
  auto it = asserted_pred_.find(e);
  if (it == asserted_pred_.end()) return std::nullopt;
  return it->second;
}

int Diagram::asserted_min_edge_into(int v) const { return asserted_min_.at(v); }

Diagram Diagram::parse(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool seen_vertices = false;
  std::vector<std::string> vertex_names;
  std::vector<Edge> edges;
  std::map<std::string, std::string> assertions;
  std::map<std::string, int> vertex_of;

  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(strip_comment(raw));
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (tok[0] == "vertices:") {
      if (seen_vertices)
        throw Error(ErrorKind::MalformedLine, where + ": repeated vertices line");
      if (tok.size() < 2)
        throw Error(ErrorKind::MalformedLine, where + ": vertices line names no vertex");
      seen_vertices = true;
      for (size_t i = 1; i < tok.size(); ++i) {
        if (!vertex_of.emplace(tok[i], static_cast<int>(vertex_names.size())).second)
          throw Error(ErrorKind::MalformedLine, where + ": duplicate vertex '" + tok[i] + "'");
        vertex_names.push_back(tok[i]);
      }
    } else if (tok[0] == "edge:") {
      if (!seen_vertices)
        throw Error(ErrorKind::MalformedLine, where + ": edge before the vertices line");
      // edge: <id> <source> -> <target> rank <k>
      if (tok.size() != 7 || tok[3] != "->" || tok[5] != "rank")
        throw Error(ErrorKind::MalformedLine, where + ": expected 'edge: <id> <src> -> <tgt> rank <k>'");
      auto vertex = [&](const std::string& name) {
        auto it = vertex_of.find(name);
        if (it == vertex_of.end())
          throw Error(ErrorKind::UnknownVertex, where + ": unknown vertex '" + name + "'");
        return it->second;
      };
      Edge e;
      e.id = tok[1];
      e.source = vertex(tok[2]);
      e.target = vertex(tok[4]);
      try {
        size_t used = 0;
        e.rank = std::stoi(tok[6], &used);
        if (used != tok[6].size() || e.rank < 0) throw std::invalid_argument("rank");
      } catch (const std::exception&) {
        throw Error(ErrorKind::MalformedLine, where + ": bad rank '" + tok[6] + "'");
      }
      edges.push_back(std::move(e));
    } else if (tok[0] == "successor:") {
      if (tok.size() != 3)
        throw Error(ErrorKind::MalformedLine, where + ": expected 'successor: <edge> <edge>'");
      if (!assertions.emplace(tok[1], tok[2]).second)
        throw Error(ErrorKind::BadSuccessorTable, where + ": edge '" + tok[1] + "' asserted twice");
    } else {
      throw Error(ErrorKind::MalformedLine, where + ": unrecognized directive '" + tok[0] + "'");
    }
  }
  if (!seen_vertices) throw Error(ErrorKind::MalformedLine, "missing vertices line");
  return Diagram(std::move(vertex_names), std::move(edges), std::move(assertions));
}

std::string Diagram::serialize() const {
  std::ostringstream out;
  out << "vertices:";
  for (const auto& n : names_) out << ' ' << n;
  out << '\n';
  std::vector<int> order(edges_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(edges_[a].target, edges_[a].rank) < std::pair(edges_[b].target, edges_[b].rank);
  });
  for (int e : order) {
    const Edge& ed = edges_[e];
    out << "edge: " << ed.id << ' ' << names_[ed.source] << " -> " << names_[ed.target]
        << " rank " << ed.rank << '\n';
  }
  std::map<std::string, std::string> assertions;
  for (const auto& [from, to] : asserted_succ_) assertions[edges_[from].id] = edges_[to].id;
  for (const auto& [from, to] : assertions) out << "successor: " << from << ' ' << to << '\n';
  return out.str();
}

bool Diagram::operator==(const Diagram& other) const {
  if (names_ != other.names_ || asserted_succ_.size() != other.asserted_succ_.size())
    return false;
  auto key = [](const Diagram& d) {
    std::set<std::tuple<std::string, int, int, int>> k;
    for (const Edge& e : d.edges_) k.insert({e.id, e.source, e.target, e.rank});
    return k;
  };
  if (key(*this) != key(other)) return false;
  for (const auto& [from, to] : asserted_succ_) {
    auto it = other.asserted_succ_.find(other.edge_index(edges_[from].id));
    if (it == other.asserted_succ_.end()) return false;
    if (other.edges_[it->second].id != edges_[to].id) return false;
  }
  return true;
}

Substitution Substitution::parse(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  Substitution s;
  std::map<std::string, int> letter_of;
  std::vector<std::vector<std::string>> raw_images;

  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(strip_comment(raw));
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (tok.size() < 3 || tok[1] != "->")
      throw Error(ErrorKind::MalformedLine, where + ": expected '<letter> -> <letter>...'");
    if (!letter_of.emplace(tok[0], static_cast<int>(s.letters.size())).second)
      throw Error(ErrorKind::DuplicateLetter, where + ": letter '" + tok[0] + "' defined twice");
    s.letters.push_back(tok[0]);
    raw_images.emplace_back(tok.begin() + 2, tok.end());
  }
  if (s.letters.empty()) throw Error(ErrorKind::MalformedLine, "empty substitution");
  for (size_t i = 0; i < raw_images.size(); ++i) {
    if (raw_images[i].empty())
      throw Error(ErrorKind::EmptyImage, "letter '" + s.letters[i] + "' has an empty image");
    std::vector<int> image;
    for (const auto& l : raw_images[i]) {
      auto it = letter_of.find(l);
      if (it == letter_of.end())
        throw Error(ErrorKind::UnknownLetter,
                    "image of '" + s.letters[i] + "' uses unknown letter '" + l + "'");
      image.push_back(it->second);
    }
    s.images.push_back(std::move(image));
  }
  return s;
}

Diagram Diagram::from_substitution(const Substitution& s) {
  // Edge ids follow the corpus convention: single-letter alphabets with
  // case-insensitively distinct letters get uppercase ids (a -> A1, A2, ...);
  // anything else falls back to '<letter>.<ordinal>'.
  bool simple = true;
  std::set<char> upper_seen;
  for (const auto& l : s.letters) {
    if (l.size() != 1 || !std::isalpha(static_cast<unsigned char>(l[0])) ||
        !upper_seen.insert(static_cast<char>(std::toupper(static_cast<unsigned char>(l[0])))).second) {
      simple = false;
      break;
    }
  }
  std::vector<Edge> edges;
  for (size_t a = 0; a < s.letters.size(); ++a) {
    if (s.images[a].empty())
      throw Error(ErrorKind::EmptyImage, "letter '" + s.letters[a] + "' has an empty image");
    for (size_t p = 0; p < s.images[a].size(); ++p) {
      Edge e;
      e.id = simple ? std::string(1, static_cast<char>(std::toupper(
                          static_cast<unsigned char>(s.letters[a][0])))) + std::to_string(p + 1)
                    : s.letters[a] + "." + std::to_string(p + 1);
      e.source = s.images[a][p];
      e.target = static_cast<int>(a);
      e.rank = static_cast<int>(p);
      edges.push_back(std::move(e));
    }
  }
  return Diagram(s.letters, std::move(edges));
}

}  // namespace bratteli
