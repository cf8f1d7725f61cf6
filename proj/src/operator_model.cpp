#include "bratteli/operator_model.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <sstream>

namespace bratteli {

namespace {

constexpr int kMaxListedCounterexamples = 5;

std::string format_image(const Diagram& d, const TruncatedSpace& space,
                         const std::map<int, long long>& image) {
  if (image.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : image) {
    if (!first) out << " + ";
    first = false;
    if (c != 1) out << c << "*";
    out << "(" << path_string(d, space.basis[idx]) << ")";
  }
  return out.str();
}

}  // namespace

TruncatedSpace make_space(const Diagram& d, int depth) {
  if (depth < 1) throw Error(ErrorKind::BadPath, "depth must be at least 1");
  TruncatedSpace s;
  s.depth = depth;
  for (int len = 1; len <= depth; ++len)
    for (const Path& p : enumerate_paths(d, len)) {
      s.index_of[p] = static_cast<int>(s.basis.size());
      s.basis.push_back(p);
    }
  const int n = s.size();
  s.succ.assign(n, -1);
  s.pred.assign(n, -1);
  s.head.assign(n, -1);
  s.tail.assign(n, -1);
  s.len.assign(n, 0);
  s.prepend.assign(d.edge_count(), std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    const Path& p = s.basis[i];
    s.len[i] = p.length();
    s.head[i] = p.edges.front();
    if (p.length() > 1) {
      Path t{std::vector<int>(p.edges.begin() + 1, p.edges.end())};
      s.tail[i] = s.index_of.at(t);
    }
    if (auto q = asserted_vershik(d, p)) {
      int j = s.index_of.at(*q);
      s.succ[i] = j;
      s.pred[j] = i;
    }
    if (p.length() < depth) {
      int v = d.edge(p.edges.front()).source;
      for (int e : d.fiber(v)) {
        Path q = p;
        q.edges.insert(q.edges.begin(), e);
        s.prepend[e][i] = s.index_of.at(q);
      }
    }
  }
  return s;
}

Generators build_generators(const Diagram& d, int depth) {
  if (depth < 2) throw Error(ErrorKind::BadPath, "generator depth must be at least 2");
  Generators g{d, make_space(d, depth), SparseMat<long long>(), {}};
  const int n = g.space.size();
  g.U = SparseMat<long long>(n, n);
  for (int i = 0; i < n; ++i)
    if (g.space.succ[i] >= 0) g.U.set(g.space.succ[i], i, 1);
  g.V.reserve(d.edge_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    SparseMat<long long> m(n, n);
    for (int i = 0; i < n; ++i)
      if (g.space.prepend[e][i] >= 0) m.set(g.space.prepend[e][i], i, 1);
    g.V.push_back(std::move(m));
  }
  return g;
}

namespace {

// Partial self-map of the basis realizing the n-th shift power.
std::vector<int> pi_map(const TruncatedSpace& s, long long n) {
  const int size = s.size();
  std::vector<int> map(size);
  for (int i = 0; i < size; ++i) map[i] = i;
  const auto& step = n >= 0 ? s.succ : s.pred;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k)
    for (int i = 0; i < size; ++i)
      if (map[i] >= 0) map[i] = step[map[i]];
  return map;
}

std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size(), -1);
  for (size_t i = 0; i < inner.size(); ++i)
    if (inner[i] >= 0) out[i] = outer[inner[i]];
  return out;
}

}  // namespace

SparseMat<long long> pi_matrix(const Generators& g, long long n) {
  const auto map = pi_map(g.space, n);
  SparseMat<long long> m(g.space.size(), g.space.size());
  for (int i = 0; i < g.space.size(); ++i)
    if (map[i] >= 0) m.set(map[i], i, 1);
  return m;
}

OperatorWord creator_word(const Word& f) {
  OperatorWord w;
  // s_f applies its last letter first.
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    w.factors.push_back({Factor::Kind::V, *it});
  return w;
}

OperatorWord annihilator_word(const Word& f) {
  OperatorWord w;
  for (int e : f) w.factors.push_back({Factor::Kind::Vstar, e});
  return w;
}

OperatorWord range_projection_word(const Word& f) {
  return compose(creator_word(f), annihilator_word(f));
}

OperatorWord shift_word(long long n) {
  OperatorWord w;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k)
    w.factors.push_back({n >= 0 ? Factor::Kind::U : Factor::Kind::Ustar, -1});
  return w;
}

OperatorWord compose(const OperatorWord& after, const OperatorWord& first) {
  OperatorWord w = first;
  w.factors.insert(w.factors.end(), after.factors.begin(), after.factors.end());
  return w;
}

std::pair<int, int> interior_lengths(const OperatorWord& w, int depth) {
  int offset = 0, min_off = 0, max_off = 0;
  for (const Factor& f : w.factors) {
    if (f.kind == Factor::Kind::V) ++offset;
    if (f.kind == Factor::Kind::Vstar) --offset;
    min_off = std::min(min_off, offset);
    max_off = std::max(max_off, offset);
  }
  return {std::max(1, 1 - min_off), std::min(depth, depth - max_off)};
}

std::pair<int, int> interior_lengths(const OperatorExpr& lhs, const OperatorExpr& rhs, int depth) {
  int lo = 1, hi = depth;
  for (const OperatorExpr* e : {&lhs, &rhs})
    for (const auto& [c, w] : e->terms) {
      auto [wlo, whi] = interior_lengths(w, depth);
      lo = std::max(lo, wlo);
      hi = std::min(hi, whi);
    }
  return {lo, hi};
}

std::vector<int> interior_basis(const TruncatedSpace& space, const OperatorWord& w) {
  auto [lo, hi] = interior_lengths(w, space.depth);
  std::vector<int> out;
  for (int i = 0; i < space.size(); ++i)
    if (space.len[i] >= lo && space.len[i] <= hi) out.push_back(i);
  return out;
}

std::optional<int> apply_word(const TruncatedSpace& space, const OperatorWord& w, int index) {
  int cur = index;
  for (const Factor& f : w.factors) {
    switch (f.kind) {
      case Factor::Kind::U:
        cur = space.succ[cur];
        break;
      case Factor::Kind::Ustar:
        cur = space.pred[cur];
        break;
      case Factor::Kind::V:
        cur = space.prepend[f.edge][cur];
        break;
      case Factor::Kind::Vstar:
        cur = space.head[cur] == f.edge ? space.tail[cur] : -1;
        break;
    }
    if (cur < 0) return std::nullopt;
  }
  return cur;
}

std::map<int, long long> apply_expr(const TruncatedSpace& space, const OperatorExpr& e, int index) {
  std::map<int, long long> out;
  for (const auto& [c, w] : e.terms) {
    auto hit = apply_word(space, w, index);
    if (!hit) continue;
    auto [it, inserted] = out.try_emplace(*hit, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

SparseMat<long long> expr_matrix(const TruncatedSpace& space, const OperatorExpr& e) {
  SparseMat<long long> m(space.size(), space.size());
  for (int j = 0; j < space.size(); ++j)
    for (const auto& [i, c] : apply_expr(space, e, j)) m.add_at(i, j, c);
  return m;
}

namespace {

struct RelationRunner {
  const Generators& g;
  RelationReport report;

  explicit RelationRunner(const Generators& gens, std::string name) : g(gens) {
    report.relation = std::move(name);
  }

  void run(const OperatorExpr& lhs, const OperatorExpr& rhs, const std::string& context = {}) {
    auto [lo, hi] = interior_lengths(lhs, rhs, g.space.depth);
    if (lo > hi)
      throw Error(ErrorKind::EmptyInterior,
                  "relation '" + report.relation + "' has no interior vector at depth " +
                      std::to_string(g.space.depth));
    for (int i = 0; i < g.space.size(); ++i) {
      if (g.space.len[i] < lo || g.space.len[i] > hi) continue;
      ++report.interior_size;
      auto left = apply_expr(g.space, lhs, i);
      auto right = apply_expr(g.space, rhs, i);
      if (left == right) continue;
      ++report.mismatches;
      if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples) {
        std::string at = path_string(g.diagram, g.space.basis[i]);
        if (!context.empty()) at = context + ": " + at;
        report.counterexamples.push_back(
            {at, format_image(g.diagram, g.space, left), format_image(g.diagram, g.space, right)});
      }
    }
  }

  // A family whose quantifier range is empty passes vacuously.
  RelationReport finish() {
    report.pass = report.mismatches == 0;
    return std::move(report);
  }
};

}  // namespace

RelationReport check_relation(const Generators& g, const std::string& name,
                              const OperatorExpr& lhs, const OperatorExpr& rhs) {
  RelationRunner runner(g, name);
  runner.run(lhs, rhs);
  return runner.finish();
}

RelationReport check_relation(const Diagram& d, const std::string& name, const OperatorExpr& lhs,
                              const OperatorExpr& rhs, int depth) {
  Generators g = build_generators(d, depth);
  return check_relation(g, name, lhs, rhs);
}

namespace {

// -- relation families ------------------------------------------------------

RelationReport family_ck_partition(const Generators& g) {
  OperatorExpr lhs;
  for (int e = 0; e < g.diagram.edge_count(); ++e)
    lhs.add(1, range_projection_word({e}));
  return check_relation(g, "def2.1-1a", lhs, OperatorExpr::identity());
}

RelationReport family_ck_support(const Generators& g) {
  RelationRunner runner(g, "def2.1-1b");
  const Diagram& d = g.diagram;
  for (int e = 0; e < d.edge_count(); ++e) {
    OperatorExpr lhs = OperatorExpr::of(compose(annihilator_word({e}), creator_word({e})));
    OperatorExpr rhs;
    for (int h : d.out_edges(d.edge(e).target)) rhs.add(1, range_projection_word({h}));
    runner.run(lhs, rhs, "g=" + d.edge(e).id);
  }
  return runner.finish();
}

RelationReport family_successor_intertwining(const Generators& g) {
  RelationRunner runner(g, "def2.1-2");
  const Diagram& d = g.diagram;
  for (int e = 0; e < d.edge_count(); ++e) {
    auto next = d.successor_edge(e);
    if (!next) continue;
    runner.run(OperatorExpr::of(creator_word({*next})),
               OperatorExpr::of(compose(shift_word(1), creator_word({e}))),
               "e=" + d.edge(e).id);
    runner.run(OperatorExpr::of(compose(shift_word(-1), creator_word({*next}))),
               OperatorExpr::of(creator_word({e})), "e=" + d.edge(e).id);
  }
  return runner.finish();
}

RelationReport family_extremal_exchange(const Generators& g) {
  RelationRunner runner(g, "def2.1-3");
  const Diagram& d = g.diagram;
  OperatorExpr lhs1, rhs1, lhs2, rhs2;
  for (int e : d.maximal_edges()) {
    lhs1.add(1, compose(shift_word(1), creator_word({e})));
    lhs2.add(1, compose(creator_word({e}), shift_word(-1)));
  }
  for (int e : d.minimal_edges()) {
    rhs1.add(1, compose(creator_word({e}), shift_word(1)));
    rhs2.add(1, compose(shift_word(-1), creator_word({e})));
  }
  runner.run(lhs1, rhs1, "u*max vs min*u");
  runner.run(lhs2, rhs2, "max*u^- vs u^-*min");
  return runner.finish();
}

RelationReport family_shift_partial_isometries(const Generators& g, long long n_max) {
  RelationReport report;
  report.relation = "def2.1-4";
  const int size = g.space.size();
  for (long long n = -n_max; n <= n_max; ++n) {
    const SparseMat<long long> a = pi_matrix(g, n);
    const SparseMat<long long> folded = a * a.transpose() * a;
    report.interior_size += size;
    if (folded == a) continue;
    for (int j = 0; j < size; ++j) {
      if (folded.col(j) == a.col(j)) continue;
      ++report.mismatches;
      if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples) {
        std::map<int, long long> lhs(folded.col(j).begin(), folded.col(j).end());
        std::map<int, long long> rhs(a.col(j).begin(), a.col(j).end());
        report.counterexamples.push_back(
            {"n=" + std::to_string(n) + ": " + path_string(g.diagram, g.space.basis[j]),
             format_image(g.diagram, g.space, lhs), format_image(g.diagram, g.space, rhs)});
      }
    }
  }
  report.pass = report.mismatches == 0;
  return report;
}

RelationReport family_word_lemma(const Generators& g, long long /*n_max*/) {
  RelationReport report;
  report.relation = "word-lemma";
  const Diagram& d = g.diagram;
  const int max_len = std::min(3, g.space.depth - 1);
  std::vector<Word> words;
  for (int e = 0; e < d.edge_count(); ++e) words.push_back({e});
  for (int len = 2; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int e = 0; e < d.edge_count(); ++e) {
          Word x = w;
          x.push_back(e);
          next.push_back(std::move(x));
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const Word& w : words) {
    OperatorWord sw = creator_word(w);
    bool nonzero = false;
    for (int i = 0; i < g.space.size() && !nonzero; ++i)
      nonzero = apply_word(g.space, sw, i).has_value();
    ++report.interior_size;
    bool expected = is_path(d, w);
    if (nonzero != expected) {
      ++report.mismatches;
      if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples) {
        std::string ws;
        for (size_t i = 0; i < w.size(); ++i) ws += (i ? "," : "") + d.edge(w[i]).id;
        report.counterexamples.push_back(
            {ws, nonzero ? "s_w != 0" : "s_w == 0", expected ? "word is a path" : "word is not a path"});
      }
    }
  }
  report.pass = report.mismatches == 0;
  return report;
}

// Support sets of the range projections e_f, one flag per basis vector,
// computed through the word engine.
std::vector<std::vector<char>> projection_supports(const Generators& g,
                                                   const std::vector<Path>& paths) {
  std::vector<std::vector<char>> supports(paths.size(), std::vector<char>(g.space.size(), 0));
  for (size_t k = 0; k < paths.size(); ++k) {
    OperatorWord w = range_projection_word(paths[k].edges);
    for (int i = 0; i < g.space.size(); ++i) {
      auto hit = apply_word(g.space, w, i);
      if (hit) supports[k][static_cast<size_t>(*hit)] = 1;  // hit == i always
    }
  }
  return supports;
}

std::vector<Path> paths_up_to(const Diagram& d, int max_len) {
  std::vector<Path> out;
  for (int len = 1; len <= max_len; ++len) {
    auto part = enumerate_paths(d, len);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

RelationReport family_cylinder_products(const Generators& g) {
  RelationReport report;
  report.relation = "cylinder-products";
  const Diagram& d = g.diagram;
  const auto paths = paths_up_to(d, g.space.depth - 1);
  const auto supports = projection_supports(g, paths);

  auto is_prefix = [](const Path& f, const Path& gpath) {
    if (f.length() > gpath.length()) return false;
    return std::equal(f.edges.begin(), f.edges.end(), gpath.edges.begin());
  };

  for (size_t a = 0; a < paths.size(); ++a)
    for (size_t b = 0; b < paths.size(); ++b) {
      const Path& f = paths[a];
      const Path& h = paths[b];
      if (f.length() > h.length()) continue;
      const bool prefix = is_prefix(f, h);
      const int lo = h.length() + 1;
      for (int i = 0; i < g.space.size(); ++i) {
        if (g.space.len[i] < lo) continue;
        ++report.interior_size;
        // e_f e_h and e_h e_f both evaluate to the intersection of supports.
        const bool product = supports[a][i] && supports[b][i];
        const bool expected = prefix ? static_cast<bool>(supports[b][i]) : false;
        if (product != expected) {
          ++report.mismatches;
          if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples)
            report.counterexamples.push_back(
                {"f=" + path_string(d, f) + " g=" + path_string(d, h) + " at " +
                     path_string(d, g.space.basis[i]),
                 product ? "1" : "0", expected ? "1" : "0"});
        }
      }
    }
  report.pass = report.mismatches == 0;
  return report;
}

RelationReport family_cylinder_refinement(const Generators& g) {
  RelationRunner runner(g, "cylinder-refinement");
  const Diagram& d = g.diagram;
  for (const Path& f : paths_up_to(d, g.space.depth - 2)) {
    OperatorExpr rhs;
    int v = d.edge(f.edges.back()).target;
    for (int e : d.out_edges(v)) {
      Path fe = f;
      fe.edges.push_back(e);
      rhs.add(1, range_projection_word(fe.edges));
    }
    runner.run(OperatorExpr::of(range_projection_word(f.edges)), rhs, "f=" + path_string(d, f));
  }
  return runner.finish();
}

RelationReport family_conjugation(const Generators& g, bool forward) {
  RelationRunner runner(g, forward ? "conjugation-forward" : "conjugation-backward");
  const Diagram& d = g.diagram;
  for (const Path& f : paths_up_to(d, g.space.depth - 1)) {
    auto image = forward ? vershik(d, f) : vershik_inv(d, f);
    if (!image) continue;
    const long long sign = forward ? 1 : -1;
    OperatorExpr lhs = OperatorExpr::of(range_projection_word(image->edges));
    OperatorExpr rhs = OperatorExpr::of(compose(
        shift_word(sign), compose(range_projection_word(f.edges), shift_word(-sign))));
    runner.run(lhs, rhs, "f=" + path_string(d, f));
  }
  return runner.finish();
}

RelationReport family_partial_representation(const Generators& g, long long n_max) {
  RelationReport report;
  report.relation = "partial-rep";
  const int size = g.space.size();
  std::map<long long, std::vector<int>> maps;
  for (long long n = -2 * n_max; n <= 2 * n_max; ++n) maps[n] = pi_map(g.space, n);
  for (long long n = -n_max; n <= n_max; ++n)
    for (long long m = -n_max; m <= n_max; ++m) {
      const auto lhs =
          compose_maps(maps[-n], compose_maps(maps[n], maps[m]));
      const auto rhs = compose_maps(maps[-n], maps[n + m]);
      report.interior_size += size;
      for (int i = 0; i < size; ++i) {
        if (lhs[i] == rhs[i]) continue;
        ++report.mismatches;
        if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples) {
          auto show = [&](int idx) {
            return idx < 0 ? std::string("0") : path_string(g.diagram, g.space.basis[idx]);
          };
          report.counterexamples.push_back(
              {"n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " +
                   path_string(g.diagram, g.space.basis[i]),
               show(lhs[i]), show(rhs[i])});
        }
      }
    }
  report.pass = report.mismatches == 0;
  return report;
}

RelationReport family_range_projections(const Generators& g, long long n_max) {
  RelationReport report;
  report.relation = "range-projections";
  const int size = g.space.size();
  for (long long n = -n_max; n <= n_max; ++n) {
    const auto fwd = pi_map(g.space, n);
    const auto bwd = pi_map(g.space, -n);
    for (const auto& pair : {compose_maps(bwd, fwd), compose_maps(fwd, bwd)}) {
      report.interior_size += size;
      for (int i = 0; i < size; ++i) {
        if (pair[i] == -1 || pair[i] == i) continue;
        ++report.mismatches;
        if (static_cast<int>(report.counterexamples.size()) < kMaxListedCounterexamples)
          report.counterexamples.push_back(
              {"n=" + std::to_string(n) + ": " + path_string(g.diagram, g.space.basis[i]),
               path_string(g.diagram, g.space.basis[pair[i]]), "diagonal projection"});
      }
    }
  }
  report.pass = report.mismatches == 0;
  return report;
}

RelationReport family_covariance(const Generators& g, long long n_max) {
  RelationRunner runner(g, "covariance");
  const Diagram& d = g.diagram;
  const auto paths = paths_up_to(d, g.space.depth - 1);
  for (long long n = -n_max; n <= n_max; ++n) {
    for (const Path& f : paths) {
      auto moved = iterate(d, f, n);
      if (!moved) continue;  // f outside the domain of this translate
      OperatorExpr proj = OperatorExpr::of(range_projection_word(f.edges));
      const std::string ctx = "n=" + std::to_string(n) + " f=" + path_string(d, f);
      // (shift-back shift-forward) acts as the identity on the projection...
      runner.run(OperatorExpr::of(compose(shift_word(-n), compose(shift_word(n),
                                                                  range_projection_word(f.edges)))),
                 proj, ctx);
      runner.run(OperatorExpr::of(compose(range_projection_word(f.edges),
                                          compose(shift_word(-n), shift_word(n)))),
                 proj, ctx);
      // ...and conjugation by the shift translates the projection.
      runner.run(OperatorExpr::of(range_projection_word(moved->edges)),
                 OperatorExpr::of(compose(shift_word(n), compose(range_projection_word(f.edges),
                                                                 shift_word(-n)))),
                 ctx);
    }
  }
  return runner.finish();
}

}  // namespace

std::vector<RelationReport> check_all(const Diagram& d, int depth,
                                      std::optional<long long> n_max_opt, bool parallel) {
  if (depth < 3)
    throw Error(ErrorKind::EmptyInterior, "check_all needs depth at least 3");
  const Generators g = build_generators(d, depth);
  const long long n_max =
      n_max_opt.value_or(static_cast<long long>(domain_bound(d, depth).n_sup) + 1);

  std::vector<std::function<RelationReport()>> families = {
      [&] { return family_ck_partition(g); },
      [&] { return family_ck_support(g); },
      [&] { return family_successor_intertwining(g); },
      [&] { return family_extremal_exchange(g); },
      [&] { return family_shift_partial_isometries(g, n_max); },
      [&] { return family_word_lemma(g, n_max); },
      [&] { return family_cylinder_products(g); },
      [&] { return family_cylinder_refinement(g); },
      [&] { return family_conjugation(g, true); },
      [&] { return family_conjugation(g, false); },
      [&] { return family_partial_representation(g, n_max); },
      [&] { return family_range_projections(g, n_max); },
      [&] { return family_covariance(g, n_max); },
  };

  std::vector<RelationReport> reports;
  if (parallel) {
    std::vector<std::future<RelationReport>> futures;
    for (auto& fam : families)
      futures.push_back(std::async(std::launch::async, fam));
    for (auto& fut : futures) reports.push_back(fut.get());
  } else {
    for (auto& fam : families) reports.push_back(fam());
  }
  return reports;
}

bool all_pass(const std::vector<RelationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

SparseMat<Rational> phi_times_pi(const Generators& g, const CrossedElement& x) {
  const int size = g.space.size();
  SparseMat<Rational> out(size, size);
  for (const auto& [key, c] : x.terms) {
    const auto& [f, n] = key;
    if (f.length() > g.space.depth - 1)
      throw Error(ErrorKind::DepthExceeded,
                  "support path '" + path_string(g.diagram, f) + "' needs depth > " +
                      std::to_string(g.space.depth));
    // Diagonal projection onto basis paths extending f.
    std::vector<char> extends(size, 0);
    for (int i = 0; i < size; ++i) {
      const Path& p = g.space.basis[i];
      if (p.length() < f.length()) continue;
      if (std::equal(f.edges.begin(), f.edges.end(), p.edges.begin())) extends[i] = 1;
    }
    const auto shift = pi_map(g.space, n);
    for (int i = 0; i < size; ++i) {
      int q = shift[i];
      if (q >= 0 && extends[q]) out.add_at(q, i, c);
    }
  }
  return out;
}

SparseMat<Rational> phi_times_pi(const Diagram& d, const CrossedElement& x, int depth) {
  Generators g = build_generators(d, depth);
  return phi_times_pi(g, x);
}

}  // namespace bratteli
