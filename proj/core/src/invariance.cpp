// Copyright 2026 The coxkl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coxkl/invariance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "coxkl/error.hpp"

namespace coxkl {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> subset_labels(const CoxeterSystem& sys, GeneratorSubset H) {
  std::vector<std::string> out;
  for (Generator s : H.members()) out.push_back(sys.labels()[s]);
  return out;
}

GeneratorSubset subset_from_labels(const CoxeterSystem& sys,
                                   const std::vector<std::string>& labels) {
  GeneratorSubset H;
  for (const auto& label : labels) {
    const auto& all = sys.labels();
    auto it = std::find(all.begin(), all.end(), label);
    if (it == all.end()) throw InvalidArgument("unknown generator label '" + label + "'");
    H = H.with(static_cast<Generator>(it - all.begin()));
  }
  return H;
}

std::vector<std::pair<std::string, std::string>> matching_pairs(const Interval& iv,
                                                                const Matching& M) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& sys = iv.system();
  for (Index i = 0; i < M.size(); ++i) {
    if (i < M(i)) out.emplace_back(sys.format(iv.element(i)), sys.format(iv.element(M(i))));
  }
  return out;
}

std::vector<Element> sweep_elements(const CoxeterSystem& sys, int max_length) {
  if (max_length < 0) return sys.elements();
  return sys.elements_up_to(max_length);
}

struct UnitResult {
  std::size_t matchings = 0;
  std::size_t h_special = 0;
  std::size_t calculating = 0;
  std::vector<Counterexample> counterexamples;
};

UnitResult run_unit(const CoxeterSystem& sys, Element w, GeneratorSubset H,
                    const std::vector<XParam>& xs) {
  UnitResult out;
  MarkedInterval marked(Interval::lower(sys, w), H);
  const Interval& iv = marked.interval();
  const auto matchings = enumerate_special_matchings(iv);
  out.matchings = matchings.size();

  std::vector<RTable> tables;
  tables.reserve(xs.size());
  for (XParam x : xs) tables.emplace_back(sys, H, x);

  for (const Matching& M : matchings) {
    if (!is_H_special(marked, M)) continue;
    ++out.h_special;
    bool all_ok = true;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const CalculatingResult r = verify_calculating(marked, M, tables[k]);
      if (r.calculating) continue;
      all_ok = false;
      const auto& ce = *r.first_counterexample;
      out.counterexamples.push_back(Counterexample{
          sys.format(w), subset_labels(sys, H), xs[k], matching_pairs(iv, M),
          sys.format(iv.element(ce.u)), ce.expected, ce.got});
    }
    if (all_ok) ++out.calculating;
  }
  return out;
}

}  // namespace

VerificationReport sweep_calculating(const CoxeterSystem& sys, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.max_length < 0 && !sys.is_finite()) {
    throw PreconditionFailed("sweep over an infinite group needs a length bound");
  }
  std::vector<GeneratorSubset> Hs =
      options.H_set.empty() ? all_subsets(sys.rank()) : options.H_set;
  std::sort(Hs.begin(), Hs.end());
  Hs.erase(std::unique(Hs.begin(), Hs.end()), Hs.end());
  for (GeneratorSubset H : Hs) {
    if (!H.is_subset_of(GeneratorSubset::all(sys.rank()))) {
      throw InvalidArgument("H contains a generator outside S");
    }
  }
  std::vector<XParam> xs = options.x_values;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Units in (w, H) order; ids already follow (length, ShortLex).
  std::vector<std::pair<Element, GeneratorSubset>> units;
  for (Element w : sweep_elements(sys, options.max_length)) {
    for (GeneratorSubset H : Hs) {
      if (sys.is_min_coset_rep(w, H)) units.emplace_back(w, H);
    }
  }

  std::vector<UnitResult> results(units.size());
  parallel_for(units.size(), options.threads, [&](std::size_t i) {
    results[i] = run_unit(sys, units[i].first, units[i].second, xs);
  });

  VerificationReport report;
  report.campaign = "calculating";
  report.group = sys.name();
  report.max_length = options.max_length < 0 ? sys.max_length() : options.max_length;
  for (GeneratorSubset H : Hs) report.H_set.push_back(subset_labels(sys, H));
  report.x_values = xs;
  report.intervals = units.size();
  for (auto& r : results) {
    report.matchings += r.matchings;
    report.h_special += r.h_special;
    report.calculating += r.calculating;
    for (auto& c : r.counterexamples) report.counterexamples.push_back(std::move(c));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool reproduces(const CoxeterSystem& sys, const Counterexample& c) {
  const Element w = sys.parse(c.w);
  const GeneratorSubset H = subset_from_labels(sys, c.H);
  MarkedInterval marked(Interval::lower(sys, w), H);
  const Interval& iv = marked.interval();

  Matching M;
  M.partner.assign(iv.size(), kNoIndex);
  for (const auto& [a, b] : c.matching) {
    const auto ia = iv.index_of(sys.parse(a));
    const auto ib = iv.index_of(sys.parse(b));
    if (!ia || !ib) throw InvalidArgument("matching pair outside the interval");
    M.partner[*ia] = *ib;
    M.partner[*ib] = *ia;
  }
  check_matching(iv, M);
  if (!is_special(iv, M)) return false;

  const auto u = iv.index_of(sys.parse(c.u));
  if (!u || !marked.marked(*u)) return false;
  RTable table(sys, H, c.x);
  const QPolynomial expected = table.R(iv.element(*u), w);
  const QPolynomial got = R_step_via_matching(marked, M, *u, table);
  return expected != got && expected == c.expected && got == c.got;
}

namespace {

struct Target {
  CoxeterSystem sys;
  GeneratorSubset H;
  Element w;
  MarkedInterval marked;
};

Target make_target(const CoxeterSystem& sys, GeneratorSubset H, Element w) {
  if (!sys.is_min_coset_rep(w, H)) {
    throw PreconditionFailed(sys.format(w) + " is not in W^H for H = {" +
                             sys.format_subset(H) + "}");
  }
  return Target{sys, H, w, MarkedInterval(Interval::lower(sys, w), H)};
}

// Polynomial tables for one side of a comparison, one per x.
struct SideTables {
  std::vector<PTable> p;

  SideTables(const CoxeterSystem& sys, GeneratorSubset H) {
    p.emplace_back(sys, H, XParam::kMinusOne);
    p.emplace_back(sys, H, XParam::kQ);
  }
};

InvarianceResult compare_targets(const Target& a, const Target& b, SideTables& ta,
                                 SideTables& tb) {
  InvarianceResult out;
  const auto psi = find_marked_isomorphism(a.marked, b.marked);
  if (!psi) return out;
  out.isomorphic = true;
  out.polynomials_equal = true;
  const Interval& ia = a.marked.interval();
  const Interval& ib = b.marked.interval();
  for (Index z = 0; z < ia.size(); ++z) {
    if (!a.marked.marked(z)) continue;
    const Element za = ia.element(z);
    const Element zb = ib.element((*psi)[z]);
    for (Index u = 0; u <= z; ++u) {
      if (!a.marked.marked(u) || !ia.leq(u, z)) continue;
      const Element ua = ia.element(u);
      const Element ub = ib.element((*psi)[u]);
      for (std::size_t k = 0; k < ta.p.size(); ++k) {
        out.pairs_compared += 2;
        if (ta.p[k].r_table().R(ua, za) != tb.p[k].r_table().R(ub, zb) ||
            ta.p[k].P(ua, za) != tb.p[k].P(ub, zb)) {
          out.polynomials_equal = false;
        }
      }
    }
  }
  return out;
}

std::string describe(const Target& t) {
  return t.sys.name() + ":w=" + t.sys.format(t.w) + ",H={" + t.sys.format_subset(t.H) + "}";
}

}  // namespace

InvarianceResult compare_marked_intervals(const IntervalTarget& a, const IntervalTarget& b) {
  const Target ta = make_target(a.sys, a.H, a.w);
  const Target tb = make_target(b.sys, b.H, b.w);
  SideTables sa(a.sys, a.H);
  SideTables sb(b.sys, b.H);
  return compare_targets(ta, tb, sa, sb);
}

std::vector<InvarianceResult> invariance_scan(
    const std::vector<std::pair<IntervalTarget, IntervalTarget>>& pairs) {
  std::vector<InvarianceResult> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(compare_marked_intervals(a, b));
  return out;
}

InvarianceSummary invariance_scan_groups(const CoxeterSystem& a, const CoxeterSystem& b,
                                         int max_length, int threads) {
  auto collect = [&](const CoxeterSystem& sys) {
    std::vector<Target> out;
    for (Element w : sweep_elements(sys, max_length)) {
      for (GeneratorSubset H : all_subsets(sys.rank())) {
        if (sys.is_min_coset_rep(w, H)) out.push_back(make_target(sys, H, w));
      }
    }
    return out;
  };
  const std::vector<Target> ta = collect(a);
  const bool same = a.same_group(b);
  const std::vector<Target> tb = same ? std::vector<Target>{} : collect(b);
  const std::vector<Target>& right = same ? ta : tb;

  // Cheap invariants first.
  auto signature = [](const Target& t) {
    const Interval& iv = t.marked.interval();
    return std::make_tuple(iv.size(), iv.height(), iv.edge_count(), t.marked.marked_count());
  };
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    for (std::size_t j = same ? i : 0; j < right.size(); ++j) {
      if (signature(ta[i]) == signature(right[j])) candidates.emplace_back(i, j);
    }
  }

  // Each worker item owns its tables; items are grouped by left target so
  // the left tables are reused across its candidates.
  std::vector<std::size_t> group_start;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (k == 0 || candidates[k].first != candidates[k - 1].first) group_start.push_back(k);
  }
  group_start.push_back(candidates.size());

  std::vector<InvarianceResult> results(candidates.size());
  parallel_for(group_start.size() - 1, threads, [&](std::size_t g) {
    const std::size_t lo = group_start[g], hi = group_start[g + 1];
    const Target& left = ta[candidates[lo].first];
    SideTables lt(left.sys, left.H);
    std::map<std::uint32_t, SideTables> right_tables;
    for (std::size_t k = lo; k < hi; ++k) {
      const Target& r = right[candidates[k].second];
      auto it = right_tables.find(r.H.mask());
      if (it == right_tables.end()) {
        it = right_tables.emplace(r.H.mask(), SideTables(r.sys, r.H)).first;
      }
      results[k] = compare_targets(left, r, lt, it->second);
    }
  });

  InvarianceSummary summary;
  summary.targets = ta.size() + tb.size();
  summary.candidate_pairs = candidates.size();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto& r = results[k];
    if (!r.isomorphic) continue;
    ++summary.isomorphic_pairs;
    const Target& l = ta[candidates[k].first];
    const Target& rt = right[candidates[k].second];
    if (!same || l.w != rt.w || l.H != rt.H) ++summary.nontrivial_pairs;
    if (r.polynomials_equal) {
      ++summary.equal_pairs;
    } else {
      summary.failures.emplace_back(describe(l), describe(rt));
    }
  }
  return summary;
}

bool MongelliReport::matches_expected() const {
  return all_in_WH && parabolic_isomorphic && !full_isomorphic && p_q_uv == QPolynomial::q() &&
         p_q_xy.is_zero() && p_minus_one_uv == QPolynomial::q() + QPolynomial::one() &&
         p_minus_one_xy == QPolynomial::one();
}

MongelliReport mongelli_reproduction() {
  const CoxeterSystem sys = CoxeterSystem::type_f4();
  const GeneratorSubset H = GeneratorSubset::of({0, 1, 2});
  MongelliReport rep;
  const Element u = sys.parse("s3s1s2s3s4");
  const Element v = sys.parse("s3s4s2s3s1s2s3s4");
  const Element x = sys.parse("s2s3s4");
  const Element y = sys.parse("s4s3s1s2s3s4");
  rep.u = sys.format(u);
  rep.v = sys.format(v);
  rep.x = sys.format(x);
  rep.y = sys.format(y);
  rep.all_in_WH = sys.is_min_coset_rep(u, H) && sys.is_min_coset_rep(v, H) &&
                  sys.is_min_coset_rep(x, H) && sys.is_min_coset_rep(y, H);

  const Interval full_uv = Interval::between(sys, u, v);
  const Interval full_xy = Interval::between(sys, x, y);
  rep.full_uv_size = full_uv.size();
  rep.full_xy_size = full_xy.size();
  rep.full_isomorphic = find_isomorphism(full_uv, full_xy).has_value();

  auto parabolic = [&](const Interval& iv) {
    std::vector<Element> elems;
    for (Element z : iv.elements()) {
      if (sys.is_min_coset_rep(z, H)) elems.push_back(z);
    }
    return Interval::from_elements(sys, std::move(elems));
  };
  const Interval par_uv = parabolic(full_uv);
  const Interval par_xy = parabolic(full_xy);
  rep.parabolic_size = par_uv.size();
  rep.parabolic_isomorphic = find_isomorphism(par_uv, par_xy).has_value();

  PTable pq(sys, H, XParam::kQ);
  PTable pm(sys, H, XParam::kMinusOne);
  rep.p_q_uv = pq.P(u, v);
  rep.p_q_xy = pq.P(x, y);
  rep.p_minus_one_uv = pm.P(u, v);
  rep.p_minus_one_xy = pm.P(x, y);
  return rep;
}

}  // namespace coxkl
