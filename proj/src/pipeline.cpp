#include "cosc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cosc/errors.hpp"
#include "cosc/functional.hpp"
#include "cosc/rng.hpp"

namespace cosc {

double gamma_for_violations(double lambda, double gvol_total, int max_violations) {
  if (!(lambda > 0.0) || !(gvol_total > 0.0))
    throw std::invalid_argument("gamma_for_violations: inputs must be positive");
  if (max_violations < 0)
    throw std::invalid_argument("gamma_for_violations: negative budget");
  return gvol_total * lambda / (4.0 * (max_violations + 1));
}

namespace {

std::vector<double> indicator_f(const Partition& c) {
  std::vector<double> f(static_cast<std::size_t>(c.n()), 0.0);
  for (int i = 0; i < c.n(); ++i)
    if (c.contains(i)) f[static_cast<std::size_t>(i)] = 1.0;
  return f;
}

struct Candidate {
  Partition part;
  double value = 0.0;
  std::vector<double> history;
};

Candidate run_and_threshold(const Graph& g, const ConstraintSet& q, double gamma,
                            const std::vector<double>& f0,
                            const RatioDcaOptions& solver) {
  const RatioDcaResult rd = ratio_dca(g, q, gamma, f0, solver);
  ThresholdResult th = optimal_threshold(g, q, rd.f, gamma);
  return Candidate{std::move(th.part), th.value, rd.history};
}

Partition lift_partition(const Partition& reduced, const std::vector<int>& vmap) {
  std::vector<char> side(vmap.size());
  for (std::size_t v = 0; v < vmap.size(); ++v)
    side[v] = reduced.contains(vmap[v]) ? 1 : 0;
  return Partition{std::move(side)};
}

}  // namespace

std::pair<Partition, BipartitionReport> cosc_bipartition(const Graph& g,
                                                         const ConstraintSet& q,
                                                         const CoscConfig& cfg) {
  if (g.n() < 2) throw std::invalid_argument("cosc_bipartition: need n >= 2");
  if (cfg.restarts < 1)
    throw std::invalid_argument("cosc_bipartition: restarts must be >= 1");
  const int budget = cfg.mode == Mode::Hard ? 0 : std::max(cfg.max_violations, 0);

  const std::optional<Partition> seed_original = find_consistent_partition(q, g.n());
  if (cfg.mode == Mode::Hard && !seed_original)
    throw InfeasibleError("cosc_bipartition: constraints admit no consistent partition");

  const bool merge = cfg.merge_must_links
                         ? *cfg.merge_must_links
                         : (cfg.mode == Mode::Hard || !q.has_fractional_must());

  // working graph / constraints, possibly reduced by must-link contraction
  std::optional<MergeResult> merged;
  ConstraintSet reduced_q;
  std::vector<int> vmap(static_cast<std::size_t>(g.n()));
  std::iota(vmap.begin(), vmap.end(), 0);
  if (merge && !q.must().empty()) {
    merged = merge_must_links(g, q.must_pairs());
    reduced_q = remap_constraints(q, merged->vertex_map, merged->graph.n()).set;
    vmap = merged->vertex_map;
  } else {
    reduced_q = q;
  }
  const Graph& work = merged ? merged->graph : g;
  if (work.n() < 2)
    throw std::invalid_argument(
        "cosc_bipartition: must-links contract the graph to a single vertex");

  std::optional<Partition> seed_reduced;
  if (seed_original) {
    std::vector<char> side(static_cast<std::size_t>(work.n()), 0);
    for (int v = 0; v < g.n(); ++v)
      if (seed_original->contains(v))
        side[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])] = 1;
    seed_reduced = Partition{std::move(side)};
  }
  const double lambda_seed = seed_reduced ? ncut(work, *seed_reduced) : 0.0;

  BipartitionReport report;
  auto violated = [&](const Partition& reduced) {
    return violated_constraint_count(q, lift_partition(reduced, vmap));
  };

  // unconstrained stage, all restarts in parallel
  {
    std::vector<std::future<Candidate>> jobs;
    jobs.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
      jobs.push_back(std::async(std::launch::async, [&, r]() {
        std::vector<double> f0;
        if (r == cfg.restarts - 1 && seed_reduced)
          f0 = indicator_f(*seed_reduced);
        else
          f0 = Rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)))
                   .unit_vector(work.n());
        return run_and_threshold(work, reduced_q, 0.0, f0, cfg.solver);
      }));
    }
    std::optional<Candidate> best;
    for (auto& job : jobs) {
      Candidate c = job.get();
      report.restart_histories.push_back(c.history);
      if (!best || c.value < best->value) best = std::move(c);
    }
    Partition current = best->part;
    double gamma_used = 0.0;

    // track the best candidate by violation count for soft fall-back
    int best_viol = violated(current);
    Partition best_viol_part = current;
    double best_viol_value = best->value;

    if (best_viol > budget) {
      const double cap = gamma_for_violations(
          seed_reduced ? lambda_seed : ncut(work, current), work.gvol_total(),
          budget);
      double gamma = 0.0;
      int step = 0;
      for (;;) {
        gamma = std::min(cap, std::max(gamma * cfg.schedule.growth,
                                       cap * cfg.schedule.initial_fraction));
        const bool at_cap = gamma >= cap;

        // each step restarts from the warm partition, the consistent seed,
        // the most feasible partition so far and fresh random vectors; the
        // winner is the best thresholded value
        std::vector<std::future<Candidate>> stage;
        stage.push_back(std::async(std::launch::async, [&]() {
          return run_and_threshold(work, reduced_q, gamma, indicator_f(current),
                                   cfg.solver);
        }));
        if (seed_reduced)
          stage.push_back(std::async(std::launch::async, [&]() {
            return run_and_threshold(work, reduced_q, gamma,
                                     indicator_f(*seed_reduced), cfg.solver);
          }));
        if (!(best_viol_part == current))
          stage.push_back(std::async(std::launch::async, [&]() {
            return run_and_threshold(work, reduced_q, gamma,
                                     indicator_f(best_viol_part), cfg.solver);
          }));
        for (int r = 0; r + 2 < cfg.restarts; ++r)
          stage.push_back(std::async(std::launch::async, [&, r]() {
            Rng rng(derive_seed(cfg.seed, 1000 * (step + 1) +
                                              static_cast<std::uint64_t>(r)));
            return run_and_threshold(work, reduced_q, gamma,
                                     rng.unit_vector(work.n()), cfg.solver);
          }));
        std::optional<Candidate> stage_best;
        for (auto& job : stage) {
          Candidate c = job.get();
          report.schedule_histories.push_back(c.history);
          if (!stage_best || c.value < stage_best->value) stage_best = std::move(c);
        }
        current = stage_best->part;
        gamma_used = gamma;
        ++step;

        const int v = violated(current);
        if (v < best_viol || (v == best_viol && stage_best->value < best_viol_value)) {
          best_viol = v;
          best_viol_part = current;
          best_viol_value = stage_best->value;
        }
        if (v <= budget) break;
        if (at_cap) break;
      }
    }

    int final_violations = violated(current);
    if (final_violations > budget) {
      if (cfg.mode == Mode::Hard && seed_reduced) {
        // the capped, consistently seeded stage guarantees a consistent
        // output; fall back to the seed itself if numerics disagree
        current = is_consistent(q, lift_partition(current, vmap))
                      ? current
                      : *seed_reduced;
      } else {
        current = best_viol_part;  // soft best effort
      }
      final_violations = violated(current);
    }

    const Partition lifted = lift_partition(current, vmap);
    report.gamma_final = gamma_used;
    report.ncut = ncut(g, lifted);
    report.violations_must = violations_must(q, lifted);
    report.violations_cannot = violations_cannot(q, lifted);
    report.violated_count = final_violations;
    report.fraction_violated =
        q.total_count() == 0
            ? 0.0
            : static_cast<double>(final_violations) /
                  static_cast<double>(q.total_count());
    return {lifted, report};
  }
}

double multicut_value(const Graph& g, const MultiPartition& p) {
  if (p.k < 2) throw std::invalid_argument("multicut_value: need k >= 2");
  if (static_cast<int>(p.labels.size()) != g.n())
    throw std::invalid_argument("multicut_value: label count != n");
  std::vector<int> sizes(static_cast<std::size_t>(p.k), 0);
  for (int label : p.labels) {
    if (label < 0 || label >= p.k)
      throw std::invalid_argument("multicut_value: label out of range");
    ++sizes[static_cast<std::size_t>(label)];
  }
  for (int s : sizes)
    if (s == 0) throw std::domain_error("multicut_value: empty class");

  double total = 0.0;
  for (int cl = 0; cl < p.k; ++cl) {
    std::vector<char> side(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
      side[static_cast<std::size_t>(v)] =
          p.labels[static_cast<std::size_t>(v)] == cl ? 1 : 0;
    total += ncut(g, Partition{std::move(side)});
  }
  return total;
}

int violation_budget(double cannot_count, double k_est) {
  if (cannot_count < 0.0)
    throw std::invalid_argument("violation_budget: negative constraint count");
  if (k_est < 2.0)
    throw std::invalid_argument("violation_budget: k estimate must be >= 2");
  const double expected = (k_est - 2.0) / k_est * cannot_count;
  return std::max(0, static_cast<int>(std::floor(expected)));
}

namespace {

struct SplitCandidate {
  std::vector<int> labels;
  double multicut = 0.0;
  int violations = 0;
  double gamma_final = 0.0;
  bool valid = false;
};

// Induced subgraph data for one component of the working graph.
struct ComponentView {
  std::vector<int> vertices;          // global ids, ascending
  std::vector<int> local_of_global;   // -1 outside the component
  std::vector<Edge> edges;            // local indices
  bool connected = true;
  std::vector<int> cc_id;             // per local vertex, when disconnected
  int cc_count = 1;
};

ComponentView make_view(const Graph& g, const std::vector<int>& labels, int label) {
  ComponentView view;
  view.local_of_global.assign(static_cast<std::size_t>(g.n()), -1);
  for (int v = 0; v < g.n(); ++v)
    if (labels[static_cast<std::size_t>(v)] == label) {
      view.local_of_global[static_cast<std::size_t>(v)] =
          static_cast<int>(view.vertices.size());
      view.vertices.push_back(v);
    }
  for (const auto& e : g.edges()) {
    const int lu = view.local_of_global[static_cast<std::size_t>(e.u)];
    const int lv = view.local_of_global[static_cast<std::size_t>(e.v)];
    if (lu >= 0 && lv >= 0) view.edges.push_back({lu, lv, e.w});
  }
  const int m = static_cast<int>(view.vertices.size());
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : view.edges) {
    const int a = find(e.u), b = find(e.v);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  view.cc_id.assign(static_cast<std::size_t>(m), -1);
  view.cc_count = 0;
  for (int v = 0; v < m; ++v) {
    const int root = find(v);
    if (view.cc_id[static_cast<std::size_t>(root)] == -1)
      view.cc_id[static_cast<std::size_t>(root)] = view.cc_count++;
    view.cc_id[static_cast<std::size_t>(v)] =
        view.cc_id[static_cast<std::size_t>(root)];
  }
  view.connected = view.cc_count == 1;
  return view;
}

}  // namespace

std::pair<MultiPartition, MultiReport> multi_partition(const Graph& g,
                                                       const ConstraintSet& q,
                                                       int k,
                                                       const CoscConfig& cfg) {
  if (k < 2) throw std::invalid_argument("multi_partition: need k >= 2");

  // integrate all must-links once up front
  MergeResult merged = merge_must_links(g, q.must_pairs());
  const Graph& work = merged.graph;
  const std::vector<int>& vmap = merged.vertex_map;
  const ConstraintSet cl_only = remap_constraints(q, vmap, work.n()).set;
  if (k > work.n())
    throw std::runtime_error(
        "multi_partition: fewer vertices than clusters after must-link merging");

  // original-vertex population of each reduced vertex, for class estimates
  std::vector<int> population(static_cast<std::size_t>(work.n()), 0);
  for (int v = 0; v < g.n(); ++v)
    ++population[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])];

  std::vector<int> labels(static_cast<std::size_t>(work.n()), 0);
  int classes = 1;
  MultiReport report;

  auto lifted_labels = [&]() {
    std::vector<int> out(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
      out[static_cast<std::size_t>(v)] =
          labels[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])];
    return out;
  };
  auto count_violations = [&](const std::vector<int>& lab) {
    int count = 0;
    for (const auto& p : q.must())
      if (lab[static_cast<std::size_t>(p.i)] != lab[static_cast<std::size_t>(p.j)])
        ++count;
    for (const auto& p : q.cannot())
      if (lab[static_cast<std::size_t>(p.i)] == lab[static_cast<std::size_t>(p.j)])
        ++count;
    return count;
  };

  // cannot-link pairs kept inside one class of a reduced labeling; the
  // commit rule minimizes this before multicut so the final partitioning
  // satisfies everything it structurally can
  auto reduced_violations = [&](const std::vector<int>& lab) {
    int count = 0;
    for (const auto& p : cl_only.cannot())
      if (lab[static_cast<std::size_t>(p.i)] == lab[static_cast<std::size_t>(p.j)])
        ++count;
    return count;
  };

  int level = 0;
  while (classes < k) {
    auto split_component = [&](int comp) -> SplitCandidate {
      SplitCandidate cand;
      const ComponentView view = make_view(work, labels, comp);
      const int m = static_cast<int>(view.vertices.size());
      if (m < 2) return cand;

      auto apply = [&](const std::vector<char>& side) {
        std::vector<int> next = labels;
        for (int lv = 0; lv < m; ++lv)
          if (side[static_cast<std::size_t>(lv)])
            next[static_cast<std::size_t>(view.vertices[static_cast<std::size_t>(lv)])] =
                classes;
        return next;
      };
      auto score = [&](const std::vector<int>& next) {
        return multicut_value(work, MultiPartition{next, classes + 1});
      };

      if (!view.connected) {
        // zero-cut splits: peel off one connected component, pick the best
        for (int cc = 0; cc < view.cc_count; ++cc) {
          std::vector<char> side(static_cast<std::size_t>(m), 0);
          for (int lv = 0; lv < m; ++lv)
            if (view.cc_id[static_cast<std::size_t>(lv)] == cc)
              side[static_cast<std::size_t>(lv)] = 1;
          std::vector<int> next = apply(side);
          const double value = score(next);
          const int violations = reduced_violations(next);
          if (!cand.valid || std::pair(violations, value) <
                                 std::pair(cand.violations, cand.multicut)) {
            cand.valid = true;
            cand.multicut = value;
            cand.violations = violations;
            cand.labels = std::move(next);
          }
        }
        return cand;
      }

      std::vector<double> b_local(static_cast<std::size_t>(m));
      for (int lv = 0; lv < m; ++lv)
        b_local[static_cast<std::size_t>(lv)] =
            work.vertex_weight(view.vertices[static_cast<std::size_t>(lv)]);
      Graph sub(m, view.edges, std::move(b_local));

      ConstraintSet internal;
      double cannot_count = 0.0;
      for (const auto& p : cl_only.cannot()) {
        const int li = view.local_of_global[static_cast<std::size_t>(p.i)];
        const int lj = view.local_of_global[static_cast<std::size_t>(p.j)];
        if (li >= 0 && lj >= 0) {
          internal.add_cannot(li, lj, p.q);
          cannot_count += p.q;
        }
      }

      int original_size = 0;
      for (int gv : view.vertices)
        original_size += population[static_cast<std::size_t>(gv)];
      const double k_est = std::max(
          2.0, std::floor(static_cast<double>(k) * original_size / g.n()));

      CoscConfig sub_cfg = cfg;
      sub_cfg.mode = Mode::Soft;
      sub_cfg.max_violations = violation_budget(cannot_count, k_est);
      sub_cfg.merge_must_links = false;
      sub_cfg.seed = derive_seed(cfg.seed,
                                 static_cast<std::uint64_t>(level) * 4096 +
                                     static_cast<std::uint64_t>(comp));

      // The budget model assumes tolerated violations end up inside the part
      // that keeps being subdivided. If a split scatters violated pairs over
      // both sides, the pairs in the side that never splits again would be
      // stuck, so tighten the budget until the violations concentrate.
      auto [split, sub_report] = cosc_bipartition(sub, internal, sub_cfg);
      for (;;) {
        int inside0 = 0, inside1 = 0;
        for (const auto& p : internal.cannot())
          if (split.contains(p.i) == split.contains(p.j)) {
            if (split.contains(p.i))
              ++inside1;
            else
              ++inside0;
          }
        if (inside0 == 0 || inside1 == 0 || sub_cfg.max_violations == 0) break;
        sub_cfg.max_violations =
            std::min(sub_cfg.max_violations - 1, inside0 + inside1 - 1);
        auto retry = cosc_bipartition(sub, internal, sub_cfg);
        split = std::move(retry.first);
        sub_report = std::move(retry.second);
      }
      if (std::getenv("COSC_DEBUG_MULTI"))
        std::fprintf(stderr,
                     "  comp %d: m=%d internal_cl=%zu budget=%d sub_viol=%d\n",
                     comp, m, internal.cannot().size(), sub_cfg.max_violations,
                     sub_report.violated_count);

      std::vector<char> side(static_cast<std::size_t>(m));
      for (int lv = 0; lv < m; ++lv)
        side[static_cast<std::size_t>(lv)] = split.contains(lv) ? 1 : 0;
      cand.labels = apply(side);
      cand.multicut = score(cand.labels);
      cand.violations = reduced_violations(cand.labels);
      cand.gamma_final = sub_report.gamma_final;
      cand.valid = true;
      return cand;
    };

    std::vector<std::future<SplitCandidate>> jobs;
    jobs.reserve(static_cast<std::size_t>(classes));
    for (int comp = 0; comp < classes; ++comp)
      jobs.push_back(std::async(std::launch::async, split_component, comp));

    std::optional<SplitCandidate> best;
    for (auto& job : jobs) {
      SplitCandidate cand = job.get();
      if (cand.valid &&
          (!best || std::pair(cand.violations, cand.multicut) <
                        std::pair(best->violations, best->multicut)))
        best = std::move(cand);
    }
    if (!best)
      throw std::runtime_error("multi_partition: no component can be split");

    labels = best->labels;
    ++classes;
    ++level;
    report.gamma_final = std::max(report.gamma_final, best->gamma_final);
    report.levels.push_back(
        {best->multicut, count_violations(lifted_labels())});
  }

  // relabel classes by first occurrence over original vertices
  std::vector<int> out_labels = lifted_labels();
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next_label = 0;
  for (auto& label : out_labels) {
    if (remap[static_cast<std::size_t>(label)] == -1)
      remap[static_cast<std::size_t>(label)] = next_label++;
    label = remap[static_cast<std::size_t>(label)];
  }

  MultiPartition result{out_labels, k};
  report.multicut = multicut_value(g, result);
  report.violated_count = count_violations(out_labels);
  report.fraction_violated =
      q.total_count() == 0 ? 0.0
                           : static_cast<double>(report.violated_count) /
                                 static_cast<double>(q.total_count());
  double must_cross = 0.0, cannot_inside = 0.0;
  for (const auto& p : q.must())
    if (out_labels[static_cast<std::size_t>(p.i)] !=
        out_labels[static_cast<std::size_t>(p.j)])
      must_cross += p.q;
  for (const auto& p : q.cannot())
    if (out_labels[static_cast<std::size_t>(p.i)] ==
        out_labels[static_cast<std::size_t>(p.j)])
      cannot_inside += p.q;
  report.violations_must = 2.0 * must_cross;
  report.violations_cannot = 2.0 * cannot_inside;
  return {result, report};
}

}  // namespace cosc
