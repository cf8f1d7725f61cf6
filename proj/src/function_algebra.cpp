#include "bratteli/function_algebra.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace bratteli {

namespace {

void insert_term(std::map<Path, Rational>& coeffs, const Path& p, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

}  // namespace

LevelFunction indicator(const Diagram& d, const Path& p) {
  if (p.edges.empty() || !is_path(d, p.edges))
    throw Error(ErrorKind::BadPath, "indicator of a non-path");
  LevelFunction f;
  f.level = p.length();
  f.coeffs[p] = 1;
  return f;
}

LevelFunction unity(const Diagram& d, int level) {
  LevelFunction f;
  f.level = level;
  for (const Path& p : enumerate_paths(d, level)) f.coeffs[p] = 1;
  return f;
}

LevelFunction lf_scale(const LevelFunction& a, const Rational& c) {
  LevelFunction out;
  out.level = a.level;
  if (c == 0) return out;
  for (const auto& [p, v] : a.coeffs) out.coeffs[p] = v * c;
  return out;
}

LevelFunction refine(const Diagram& d, const LevelFunction& a) {
  LevelFunction out;
  out.level = a.level + 1;
  for (const auto& [p, c] : a.coeffs) {
    int v = d.edge(p.edges.back()).target;
    for (int e : d.out_edges(v)) {
      Path q = p;
      q.edges.push_back(e);
      out.coeffs[q] = c;
    }
  }
  return out;
}

LevelFunction refine_to(const Diagram& d, const LevelFunction& a, int level) {
  if (level < a.level)
    throw Error(ErrorKind::BadPath, "cannot refine a level function downwards");
  LevelFunction out = a;
  while (out.level < level) out = refine(d, out);
  return out;
}

LevelFunction lf_add(const Diagram& d, const LevelFunction& a, const LevelFunction& b) {
  const int level = std::max(a.level, b.level);
  LevelFunction ra = refine_to(d, a, level);
  LevelFunction rb = refine_to(d, b, level);
  for (const auto& [p, c] : rb.coeffs) insert_term(ra.coeffs, p, c);
  return ra;
}

LevelFunction multiply(const Diagram& d, const LevelFunction& a, const LevelFunction& b) {
  const int level = std::max(a.level, b.level);
  LevelFunction ra = refine_to(d, a, level);
  LevelFunction rb = refine_to(d, b, level);
  LevelFunction out;
  out.level = level;
  // Same-level indicators are orthogonal idempotents, so the product is
  // pointwise on the common support.
  for (const auto& [p, c] : ra.coeffs) {
    auto it = rb.coeffs.find(p);
    if (it != rb.coeffs.end()) out.coeffs[p] = c * it->second;
  }
  return out;
}

bool alpha_defined(const Diagram& d, const LevelFunction& a, long long n) {
  for (const auto& [p, c] : a.coeffs)
    if (!in_domain(d, p, -n)) return false;
  return true;
}

LevelFunction alpha(const Diagram& d, const LevelFunction& a, long long n) {
  LevelFunction out;
  out.level = a.level;
  std::string offenders;
  for (const auto& [p, c] : a.coeffs) {
    auto q = iterate(d, p, n);
    if (!q) {
      if (!offenders.empty()) offenders += ", ";
      offenders += path_string(d, p);
      continue;
    }
    out.coeffs[*q] = c;
  }
  if (!offenders.empty())
    throw Error(ErrorKind::DomainViolation,
                "support leaves the domain of the translate: " + offenders);
  return out;
}

std::string level_function_json(const Diagram& d, const LevelFunction& a) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [p, c] : a.coeffs) coeffs[path_string(d, p)] = rational_string(c);
  nlohmann::json j{{"level", a.level}, {"coeffs", coeffs}};
  return j.dump();
}

LevelFunction level_function_from_json(const Diagram& d, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedLine, std::string("bad level-function JSON: ") + e.what());
  }
  if (!j.contains("level") || !j.contains("coeffs"))
    throw Error(ErrorKind::MalformedLine, "level-function JSON needs 'level' and 'coeffs'");
  LevelFunction out;
  out.level = j.at("level").get<int>();
  for (const auto& [key, val] : j.at("coeffs").items()) {
    Path p = parse_path(d, key);
    if (p.length() != out.level)
      throw Error(ErrorKind::BadPath, "coefficient path '" + key + "' is not at the stated level");
    Rational c = rational_from_string(val.get<std::string>());
    if (c != 0) out.coeffs[p] = c;
  }
  return out;
}

}  // namespace bratteli
