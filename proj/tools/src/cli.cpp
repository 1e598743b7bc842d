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

#include "coxkl_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxkl/coxeter.hpp"
#include "coxkl/error.hpp"
#include "coxkl/invariance.hpp"
#include "coxkl/json_io.hpp"
#include "coxkl/klpoly.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/poset.hpp"

namespace coxkl::cli {
namespace {

struct Config {
  std::string group = "A2";
  std::string group2;
  std::vector<std::string> H;  // one entry per subset; "" is the empty set
  bool H_given = false;
  std::string x;
  std::string format = "human";
  int max_length = -1;
  int threads = 1;
  bool wall_time = false;
  std::string u = "e";
  std::string w;
};

int default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

CoxeterSystem load_group(const std::string& spec, int max_length) {
  GroupOptions options;
  options.max_length = max_length;
  return group_from_spec(spec, options);
}

GeneratorSubset single_H(const CoxeterSystem& sys, const Config& cfg) {
  if (cfg.H.size() > 1) throw InvalidArgument("this command takes a single --H");
  return cfg.H.empty() ? GeneratorSubset() : sys.parse_subset(cfg.H.front());
}

std::vector<XParam> x_values(const std::string& text) {
  if (text.empty() || text == "both") return {XParam::kMinusOne, XParam::kQ};
  return {parse_xparam(text)};
}

constexpr int kF4SweepLength = 9;

std::string labels_of(const CoxeterSystem& sys, GeneratorSubset H) {
  return "{" + sys.format_subset(H) + "}";
}

Json label_array(const CoxeterSystem& sys, GeneratorSubset H) {
  Json a = Json::array();
  for (Generator s : H.members()) a.push_back(sys.labels()[s]);
  return a;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_poly(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group, cfg.max_length);
  const GeneratorSubset H = single_H(sys, cfg);
  const XParam x = cfg.x.empty() ? XParam::kQ : parse_xparam(cfg.x);
  const Element u = sys.parse(cfg.u);
  const Element w = sys.parse(cfg.w);
  PTable table(sys, H, x);
  const QPolynomial R = table.r_table().R(u, w);
  const QPolynomial P = table.P(u, w);
  if (cfg.format == "json") {
    print_json(out, Json{{"group", sys.name()},
                         {"H", label_array(sys, H)},
                         {"x", to_string(x)},
                         {"u", sys.format(u)},
                         {"w", sys.format(w)},
                         {"R", to_json(R)},
                         {"P", to_json(P)}});
  } else {
    out << "group " << sys.name() << ", H = " << labels_of(sys, H) << ", x = " << to_string(x)
        << ", u = " << sys.format(u) << ", w = " << sys.format(w) << '\n';
    out << "R = " << R.to_string() << '\n';
    out << "P = " << P.to_string() << '\n';
  }
  return kOk;
}

int cmd_matchings(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group, cfg.max_length);
  const GeneratorSubset H = single_H(sys, cfg);
  const Element w = sys.parse(cfg.w);
  const MarkedInterval marked(Interval::lower(sys, w), H);
  const Interval& iv = marked.interval();
  const auto all = enumerate_special_matchings(iv);
  if (cfg.format == "json") {
    Json list = Json::array();
    for (const auto& M : all) {
      Json j = to_json(iv, M);
      j["h_special"] = is_H_special(marked, M);
      list.push_back(std::move(j));
    }
    print_json(out, Json{{"group", sys.name()},
                         {"w", sys.format(w)},
                         {"H", label_array(sys, H)},
                         {"interval_size", iv.size()},
                         {"matchings", list}});
    return kOk;
  }
  out << all.size() << " special matching(s) of [e," << sys.format(w) << "] ("
      << iv.size() << " elements), H = " << labels_of(sys, H) << '\n';
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& M = all[k];
    out << '#' << k + 1 << (is_H_special(marked, M) ? " H-special  " : " not H-special  ");
    for (Index i = 0; i < M.size(); ++i) {
      if (i < M(i)) {
        out << " (" << sys.format(iv.element(i)) << ',' << sys.format(iv.element(M(i))) << ')';
      }
    }
    out << '\n';
  }
  return kOk;
}

// Sweep bound when --max-length is not given: F4 stops at length 9, other
// groups are swept whole.
int default_sweep_length(const CoxeterSystem& sys, int requested) {
  if (requested >= 0) return requested;
  return sys.name() == "F4" ? kF4SweepLength : -1;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group, cfg.max_length);
  SweepOptions options;
  options.max_length = default_sweep_length(sys, cfg.max_length);
  options.threads = cfg.threads;
  options.x_values = x_values(cfg.x);
  for (const auto& h : cfg.H) {
    if (h == "all") {
      options.H_set.clear();
      break;
    }
    options.H_set.push_back(sys.parse_subset(h));
  }
  const VerificationReport report = sweep_calculating(sys, options);
  if (cfg.format == "json") {
    print_json(out, to_json(report, cfg.wall_time));
  } else {
    out << "group " << report.group << ", l(w) <= " << report.max_length << ", "
        << report.H_set.size() << " subset(s) H\n";
    out << "intervals " << report.intervals << ", special matchings " << report.matchings
        << ", H-special " << report.h_special << ", calculating " << report.calculating << '\n';
    for (const auto& c : report.counterexamples) {
      out << "COUNTEREXAMPLE w=" << c.w << " x=" << to_string(c.x) << " u=" << c.u
          << " expected " << c.expected.to_string() << " got " << c.got.to_string() << '\n';
    }
    out << (report.ok() ? "OK" : "FAILED") << '\n';
    if (cfg.wall_time) out << "wall time " << report.wall_seconds << " s\n";
  }
  return report.ok() ? kOk : kFailed;
}

int cmd_invariance(const Config& cfg, std::ostream& out) {
  const CoxeterSystem a = load_group(cfg.group, cfg.max_length);
  const CoxeterSystem b =
      cfg.group2.empty() || cfg.group2 == cfg.group ? a : load_group(cfg.group2, cfg.max_length);
  // One bound covers both groups.
  const int bound = std::max(default_sweep_length(a, cfg.max_length),
                             default_sweep_length(b, cfg.max_length));
  const InvarianceSummary s = invariance_scan_groups(a, b, bound, cfg.threads);
  if (cfg.format == "json") {
    Json failures = Json::array();
    for (const auto& [l, r] : s.failures) failures.push_back(Json::array({l, r}));
    print_json(out, Json{{"groups", Json::array({a.name(), b.name()})},
                         {"targets", s.targets},
                         {"candidate_pairs", s.candidate_pairs},
                         {"isomorphic_pairs", s.isomorphic_pairs},
                         {"nontrivial_pairs", s.nontrivial_pairs},
                         {"equal_pairs", s.equal_pairs},
                         {"failures", failures},
                         {"ok", s.ok()}});
  } else {
    out << a.name() << " vs " << b.name() << ": " << s.targets << " marked intervals, "
        << s.isomorphic_pairs << " isomorphic pair(s) (" << s.nontrivial_pairs
        << " non-trivial), " << s.equal_pairs << " with equal polynomials\n";
    for (const auto& [l, r] : s.failures) out << "MISMATCH " << l << " / " << r << '\n';
    out << (s.ok() ? "OK" : "FAILED") << '\n';
  }
  return s.ok() ? kOk : kFailed;
}

int cmd_mongelli(const Config& cfg, std::ostream& out) {
  const MongelliReport r = mongelli_reproduction();
  if (cfg.format == "json") {
    print_json(out, to_json(r));
  } else {
    out << "F4, H = {s1,s2,s3}; u = " << r.u << ", v = " << r.v << ", x = " << r.x
        << ", y = " << r.y << '\n';
    out << "u, v, x, y in W^H: " << (r.all_in_WH ? "yes" : "no") << '\n';
    out << "P^{H,q}_{u,v}  = " << r.p_q_uv.to_string() << '\n';
    out << "P^{H,q}_{x,y}  = " << r.p_q_xy.to_string() << '\n';
    out << "P^{H,-1}_{u,v} = " << r.p_minus_one_uv.to_string() << '\n';
    out << "P^{H,-1}_{x,y} = " << r.p_minus_one_xy.to_string() << '\n';
    out << "[u,v]^H ~ [x,y]^H: " << (r.parabolic_isomorphic ? "isomorphic" : "not isomorphic")
        << " (" << r.parabolic_size << " elements)\n";
    out << "[u,v] ~ [x,y]: " << (r.full_isomorphic ? "isomorphic" : "not isomorphic") << " ("
        << r.full_uv_size << " vs " << r.full_xy_size << " elements)\n";
  }
  return r.matches_expected() ? kOk : kFailed;
}

int cmd_export_interval(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group, cfg.max_length);
  const GeneratorSubset H = single_H(sys, cfg);
  const Element w = sys.parse(cfg.w);
  print_json(out, to_json(MarkedInterval(Interval::lower(sys, w), H)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazhdan-Lusztig polynomials and special matchings of Coxeter groups"};
  app.name(args.empty() ? "coxkl" : args.front());
  app.require_subcommand(1);
  Config cfg;
  cfg.threads = default_threads();

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group,-g", cfg.group,
                    "Group name (A3, B3, F4, I2(5), ...), inline JSON, or JSON file")
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();
  };
  auto add_H = [&](CLI::App* sub, const char* help) {
    sub->add_option("--H", cfg.H, help)->allow_extra_args(false);
  };
  auto add_max_length = [&](CLI::App* sub) {
    sub->add_option("--max-length", cfg.max_length, "Length bound (default: whole group, 9 for F4)");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads,-j", cfg.threads,
                    std::string("Worker threads (default from ") + kThreadsEnv + " or 1)")
        ->check(CLI::PositiveNumber);
  };

  auto* poly = app.add_subcommand("poly", "Parabolic R- and KL polynomials of a pair");
  add_group(poly);
  add_H(poly, "Parabolic subset, e.g. s1,s2 (default: empty)");
  poly->add_option("--x", cfg.x, "q or -1 (default q)");
  poly->add_option("--u", cfg.u, "Lower element (default e)");
  poly->add_option("--w", cfg.w, "Upper element")->required();
  add_max_length(poly);
  add_format(poly);

  auto* matchings = app.add_subcommand("matchings", "Special matchings of [e,w]");
  add_group(matchings);
  add_H(matchings, "Parabolic subset for the H-special tag (default: empty)");
  matchings->add_option("--w", cfg.w, "Top element")->required();
  add_max_length(matchings);
  add_format(matchings);

  auto* verify = app.add_subcommand("verify", "Check that every H-special matching calculates");
  add_group(verify);
  add_H(verify, "Subsets to sweep, repeatable; 'all' (default) for every subset");
  verify->add_option("--x", cfg.x, "q, -1 or both (default both)");
  add_max_length(verify);
  add_threads(verify);
  verify->add_flag("--wall-time", cfg.wall_time, "Report elapsed time");
  add_format(verify);

  auto* invariance =
      app.add_subcommand("invariance", "Compare polynomials across marked-isomorphic intervals");
  add_group(invariance);
  invariance->add_option("--group2", cfg.group2, "Second group (default: the first)");
  add_max_length(invariance);
  add_threads(invariance);
  add_format(invariance);

  auto* mongelli = app.add_subcommand("mongelli", "Reproduce the F4 parabolic counterexample");
  add_format(mongelli);

  auto* export_iv = app.add_subcommand("export-interval", "Dump a marked interval [e,w] as JSON");
  add_group(export_iv);
  add_H(export_iv, "Parabolic subset used for the marks (default: empty)");
  export_iv->add_option("--w", cfg.w, "Top element")->required();
  add_max_length(export_iv);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*poly) return cmd_poly(cfg, out);
    if (*matchings) return cmd_matchings(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*invariance) return cmd_invariance(cfg, out);
    if (*mongelli) return cmd_mongelli(cfg, out);
    if (*export_iv) return cmd_export_interval(cfg, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace coxkl::cli
