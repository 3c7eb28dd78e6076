// Copyright 2026 The dilatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dilatlab/analysis.hpp"
#include "dilatlab/carnot.hpp"
#include "dilatlab/ccdist.hpp"
#include "dilatlab/error.hpp"
#include "dilatlab/registry.hpp"

namespace dilatlab::cli {

namespace {

using nlohmann::json;

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::unknown_name:
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_algebra:
      return kBadArgs;
    case ErrorCode::io:
      return kIo;
    case ErrorCode::unsupported_step:
    case ErrorCode::unsupported_variant:
      return kUnsupported;
    default:
      return kFail;
  }
}

// Runs a command body and maps library errors to exit codes.
template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json word_json(const CarnotGroup& g, const GeneratorWord& w) {
  json out = json::array();
  for (const WordLetter& l : w) {
    out.push_back({{"generator", g.horizontal()[l.generator] + 1}, {"t", l.t}});
  }
  return out;
}

Point group_point(const CarnotGroup& g, const std::string& text) {
  if (text.empty()) return Point(g.dim(), 0.0);
  Point p = parse_point(text);
  if (p.size() != g.dim()) {
    throw Error(ErrorCode::invalid_argument,
                "expected " + std::to_string(g.dim()) + " coordinates, got '" + text + "'");
  }
  return p;
}

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("DILATLAB_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw Error(ErrorCode::invalid_argument, "DILATLAB_SEED must be an integer");
  return v;
}

GridSpec parse_grid(const std::string& text) {
  const Point p = parse_point(text);
  if (p.size() != 3 || p[2] < 2 || p[2] != std::floor(p[2])) {
    throw Error(ErrorCode::invalid_argument, "grid must be start,ratio,count with count >= 2");
  }
  if (!(p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "grid start and ratio must lie in (0,1)");
  }
  return GridSpec{p[0], p[1], static_cast<int>(p[2])};
}

int cmd_list(const Common& c, std::ostream& out) {
  const std::vector<std::string> groups{"heisenberg:N", "abelian:N", "engel", "file:PATH"};
  if (c.quiet) return kPass;
  if (c.json) {
    out << json{{"structures", registered_examples()}, {"groups", groups}}.dump(2) << '\n';
    return kPass;
  }
  out << "structures:\n";
  for (const auto& id : registered_examples()) out << "  " << id << '\n';
  out << "carnot groups:\n";
  for (const auto& id : groups) out << "  " << id << '\n';
  return kPass;
}

int cmd_verify(const std::string& id, const Common& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StructurePtr s = make_structure(id);
    const Tolerances tol;
    const IdentityReport ids = identity_suite(*s, c.seed, c.samples, c.radius);
    SweepConfig cfg;
    cfg.seed = c.seed;
    cfg.samples = c.samples;
    cfg.radius = c.radius;
    std::vector<SweepReport> sweeps;
    for (Defect d : {Defect::a3, Defect::a4, Defect::cone}) {
      cfg.grid = default_grid(d);
      sweeps.push_back(run_sweep(*s, d, cfg));
    }
    bool pass = ids.pass(tol.exact) && ids.samples > 0;
    for (const auto& r : sweeps) pass = pass && r.pass();

    if (c.quiet) return pass ? kPass : kFail;
    if (c.json) {
      json j{{"structure", s->id()}, {"seed", c.seed}, {"identities", to_json(ids)}};
      j["sweeps"] = json::array();
      for (const auto& r : sweeps) j["sweeps"].push_back(to_json(r));
      j["pass"] = pass;
      out << j.dump(2) << '\n';
    } else {
      out << s->id() << "  seed " << c.seed << "  samples " << ids.samples << " (skipped "
          << ids.skipped << ")\n";
      for (const auto& [name, v] : ids.residuals) {
        out << "  " << name << ": " << fmt(v) << (v <= tol.exact ? "" : "  FAIL") << '\n';
      }
      for (const auto& r : sweeps) {
        out << "  sweep " << r.suite << ": " << r.verdict << ", final " << fmt(r.defects.back())
            << ", order " << (r.noise ? std::string("noise") : fmt(r.order)) << '\n';
      }
      out << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? kPass : kFail;
  });
}

int cmd_sweep(const std::string& id, const SweepArgs& a, const Common& c, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const StructurePtr s = make_structure(id);
    const Defect d = parse_defect(a.defect);
    SweepConfig cfg;
    cfg.seed = c.seed;
    cfg.samples = c.samples;
    cfg.radius = c.radius;
    cfg.grid = a.grid ? *a.grid : default_grid(d);
    const SweepReport r = run_sweep(*s, d, cfg);
    const json j = to_json(r);
    if (!a.out.empty()) {
      std::ofstream csv(a.out + ".csv");
      std::ofstream js(a.out + ".json");
      if (!csv || !js) throw Error(ErrorCode::io, "cannot write " + a.out + ".csv/.json");
      write_csv(csv, r);
      js << j.dump(2) << '\n';
      if (!csv || !js) throw Error(ErrorCode::io, "write failed for " + a.out);
    }
    if (!c.quiet) {
      if (c.json) {
        out << j.dump(2) << '\n';
      } else {
        out << r.structure << "  " << r.suite << "  verdict " << r.verdict << "  order "
            << (r.noise ? std::string("noise") : fmt(r.order)) << "  residual "
            << fmt(r.residual) << "  skipped " << r.skipped << '\n';
      }
    }
    return r.pass() ? kPass : kFail;
  });
}

int cmd_tangent(const std::string& id, const TangentArgs& a, const Common& c,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StructurePtr s = make_structure(id);
    const Point x = a.at.empty() ? s->default_center() : parse_point(a.at);
    const Point u = parse_point(a.u);
    const Point v = parse_point(a.v);
    for (const Point* p : {&x, &u, &v}) {
      if (p->size() != s->dim()) throw Error(ErrorCode::invalid_argument, "point of wrong dimension");
    }
    const auto grid = make_grid(a.grid ? *a.grid : GridSpec{}, s->scale_kind());
    const ScalarEstimate d = tangent_distance_estimate(*s, x, u, v, grid);
    const PointEstimate sum = tangent_sum_estimate(*s, x, u, v, grid);
    const PointEstimate diff = tangent_difference_estimate(*s, x, u, v, grid);
    const PointEstimate inv = tangent_inverse_estimate(*s, x, u, grid);
    auto order = [](double o) { return std::isnan(o) ? json(nullptr) : json(o); };
    json j{{"structure", s->id()},
           {"x", x},
           {"u", u},
           {"v", v},
           {"distance", {{"value", d.value}, {"order", order(d.order)}, {"degenerate", d.degenerate}}},
           {"sum", {{"value", sum.value}, {"order", order(sum.order)}}},
           {"difference", {{"value", diff.value}, {"order", order(diff.order)}}},
           {"inverse", {{"value", inv.value}, {"order", order(inv.order)}}}};
    if (auto cd = s->tangent_distance(x, u, v)) j["distance"]["closed_form"] = *cd;
    if (auto cs = s->tangent_sum(x, u, v)) j["sum"]["closed_form"] = *cs;
    if (auto cf = s->tangent_difference(x, u, v)) j["difference"]["closed_form"] = *cf;
    if (auto ci = s->tangent_inverse(x, u)) j["inverse"]["closed_form"] = *ci;
    if (!c.quiet) {
      if (c.json) {
        out << j.dump(2) << '\n';
      } else {
        out << "d^x(u,v) ~ " << fmt(d.value) << (d.degenerate ? "  (degenerate)" : "") << '\n'
            << "sum      ~ " << format_point(sum.value) << '\n'
            << "diff     ~ " << format_point(diff.value) << '\n'
            << "inverse  ~ " << format_point(inv.value) << '\n';
      }
    }
    return kPass;
  });
}

int cmd_ccdist(const std::string& group, const CcArgs& a, const Common& c, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const CarnotGroup g = builtin_group(group);
    const Point from = group_point(g, a.from);
    if (a.to.empty()) throw Error(ErrorCode::invalid_argument, "--to is required");
    const Point to = group_point(g, a.to);
    // Without a generator word there is no certified starting bound.
    word_decomposition(g, g.product(g.inverse(from), to));
    CcOptions opt;
    opt.segments = a.segments;
    opt.iterations = a.iterations;
    opt.seed = c.seed;
    const CcResult r = cc_upper(g, from, to, opt);
    const double lower = cc_lower(g, from, to);
    json j{{"group", g.name()}, {"from", from},    {"to", to},
           {"lower", lower},    {"upper", r.upper}, {"K", a.segments},
           {"residual", r.residual}};
    j["word"] = r.word ? word_json(g, *r.word) : json(nullptr);
    if (!c.quiet) {
      if (c.json) {
        out << j.dump(2) << '\n';
      } else {
        out << "lower " << fmt(lower) << "  upper " << fmt(r.upper) << "  residual "
            << fmt(r.residual) << "  K " << a.segments << '\n';
        if (r.word_bound) out << "word bound " << fmt(*r.word_bound) << '\n';
      }
    }
    return kPass;
  });
}

int cmd_bch(const std::string& group, const std::string& x, const std::string& y,
            bool rational, const Common& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CarnotGroup g = builtin_group(group);
    const Point a = group_point(g, x);
    const Point b = group_point(g, y);
    json j{{"group", g.name()}, {"x", a}, {"y", b}};
    if (rational) {
      // Doubles convert to rationals exactly.
      std::vector<Rational> ra(a.begin(), a.end()), rb(b.begin(), b.end());
      std::vector<std::string> text;
      for (const Rational& r : g.product(ra, rb)) text.push_back(rational_text(r));
      j["product"] = text;
    } else {
      j["product"] = g.product(a, b);
    }
    if (!c.quiet) {
      if (c.json) {
        out << j.dump(2) << '\n';
      } else if (rational) {
        for (const auto& t : j["product"]) out << t.get<std::string>() << '\n';
      } else {
        out << format_point(j["product"].get<std::vector<double>>()) << '\n';
      }
    }
    return kPass;
  });
}

int cmd_decompose(const std::string& group, const std::string& x, const Common& c,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CarnotGroup g = builtin_group(group);
    const Point p = group_point(g, x);
    const GeneratorWord w = word_decomposition(g, p);
    const double residual = dist2(evaluate_word(g, w), p);
    if (!c.quiet) {
      if (c.json) {
        out << json{{"group", g.name()}, {"x", p}, {"word", word_json(g, w)},
                    {"length", word_length(w)}, {"residual", residual}}
                   .dump(2)
            << '\n';
      } else {
        for (const WordLetter& l : w) {
          out << "X" << g.horizontal()[l.generator] + 1 << ":" << fmt(l.t) << '\n';
        }
        out << "residual " << fmt(residual) << '\n';
      }
    }
    return residual <= 1e-10 ? kPass : kFail;
  });
}

}  // namespace dilatlab::cli
