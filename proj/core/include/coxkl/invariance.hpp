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

#ifndef COXKL_INVARIANCE_HPP_
#define COXKL_INVARIANCE_HPP_

// Verification campaigns: sweeps checking that every H-special matching
// calculates the parabolic R-polynomials, combinatorial-invariance scans over
// marked lower intervals, and Mongelli's F4 counterexample for parabolic
// intervals.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/klpoly.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/polynomial.hpp"
#include "coxkl/poset.hpp"

namespace coxkl {

struct Counterexample {
  std::string w;
  std::vector<std::string> H;  // generator labels
  XParam x = XParam::kQ;
  std::vector<std::pair<std::string, std::string>> matching;  // canonical words
  std::string u;
  QPolynomial expected;
  QPolynomial got;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct VerificationReport {
  std::string campaign;
  std::string group;
  int max_length = 0;
  std::vector<std::vector<std::string>> H_set;
  std::vector<XParam> x_values;

  std::size_t intervals = 0;   // (w, H) units with w in W^H
  std::size_t matchings = 0;   // special matchings, summed over units
  std::size_t h_special = 0;
  std::size_t calculating = 0; // H-special and calculating for every x
  std::vector<Counterexample> counterexamples;
  double wall_seconds = 0.0;

  bool ok() const { return counterexamples.empty(); }

  // Equality ignores wall time.
  friend bool operator==(const VerificationReport& a, const VerificationReport& b) {
    return a.campaign == b.campaign && a.group == b.group && a.max_length == b.max_length &&
           a.H_set == b.H_set && a.x_values == b.x_values && a.intervals == b.intervals &&
           a.matchings == b.matchings && a.h_special == b.h_special &&
           a.calculating == b.calculating && a.counterexamples == b.counterexamples;
  }
};

struct SweepOptions {
  int max_length = -1;                    // -1: every enumerated element
  std::vector<GeneratorSubset> H_set;     // empty: all subsets of S
  std::vector<XParam> x_values{XParam::kMinusOne, XParam::kQ};
  int threads = 1;
};

// For every H in the set and every w in W^H with l(w) <= max_length,
// enumerates the special matchings of [e,w], keeps the H-special ones and
// checks each against the reference recursion for every x.
VerificationReport sweep_calculating(const CoxeterSystem& sys, const SweepOptions& options);

// Re-evaluates a stored record: true iff the matching is special, both sides
// of the recurrence come out as stored, and they differ. H-specialness is not
// re-checked, so records built from other special matchings can be replayed.
bool reproduces(const CoxeterSystem& sys, const Counterexample& c);

struct IntervalTarget {
  CoxeterSystem sys;
  GeneratorSubset H;
  Element w;
};

struct InvarianceResult {
  bool isomorphic = false;
  bool polynomials_equal = false;  // meaningful only when isomorphic
  std::size_t pairs_compared = 0;  // (u, z) pairs x polynomial kinds x x-values
};

// When a marked isomorphism psi exists, compares R^{H1,x}_{u,z} with
// R^{H2,x}_{psi(u),psi(z)} and the P analogue for all marked u <= z, both x.
InvarianceResult compare_marked_intervals(const IntervalTarget& a, const IntervalTarget& b);

std::vector<InvarianceResult> invariance_scan(
    const std::vector<std::pair<IntervalTarget, IntervalTarget>>& pairs);

struct InvarianceSummary {
  std::size_t targets = 0;
  std::size_t candidate_pairs = 0;  // pairs passing the size filter
  std::size_t isomorphic_pairs = 0;
  std::size_t equal_pairs = 0;
  std::size_t nontrivial_pairs = 0;  // isomorphic with different (w, H)
  std::vector<std::pair<std::string, std::string>> failures;

  bool ok() const { return isomorphic_pairs == equal_pairs; }
};

// All marked lower intervals [e,w] with w in W^H, l(w) <= max_length, from
// both systems, compared pairwise.
InvarianceSummary invariance_scan_groups(const CoxeterSystem& a, const CoxeterSystem& b,
                                         int max_length, int threads = 1);

struct MongelliReport {
  std::string u, v, x, y;
  bool all_in_WH = false;
  bool parabolic_isomorphic = false;
  bool full_isomorphic = false;
  std::size_t parabolic_size = 0;
  std::size_t full_uv_size = 0;
  std::size_t full_xy_size = 0;
  QPolynomial p_q_uv, p_q_xy, p_minus_one_uv, p_minus_one_xy;

  // All four values and both isomorphism verdicts as published.
  bool matches_expected() const;
};

// F4 with m(s2,s3) = 4, H = {s1,s2,s3}, u = s3s1s2s3s4,
// v = s3s4s2s3s1s2s3s4, x = s2s3s4, y = s4s3s1s2s3s4.
MongelliReport mongelli_reproduction();

}  // namespace coxkl

#endif  // COXKL_INVARIANCE_HPP_
