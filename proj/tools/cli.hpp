#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "poset_codes.hpp"

namespace poset_codes::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

// `# key: value` preamble followed by titled tables.
class Report {
 public:
  void set(std::string key, std::string value) { preamble_.emplace_back(std::move(key), std::move(value)); }

  void table(std::string title, std::vector<std::string> header) {
    tables_.push_back({std::move(title), std::move(header), {}});
  }
  void row(std::vector<std::string> cells) { tables_.back().rows.push_back(std::move(cells)); }

  void render(std::ostream& out, bool tsv) const {
    for (const auto& [k, v] : preamble_) {
      if (tsv) {
        out << "#" << k << "\t" << v << "\n";
      } else {
        out << "# " << k << ": " << v << "\n";
      }
    }
    for (const auto& t : tables_) {
      out << (tsv ? "" : "\n");
      if (!t.title.empty()) out << (tsv ? "##" : "## ") << t.title << "\n";
      std::vector<std::size_t> width(t.header.size(), 0);
      auto widen = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
      };
      widen(t.header);
      for (const auto& r : t.rows) widen(r);
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (tsv) {
            out << (i ? "\t" : "") << cells[i];
          } else if (i + 1 == cells.size()) {
            out << cells[i];
          } else {
            out << std::left << std::setw(static_cast<int>(width[i]) + 2) << cells[i];
          }
        }
        out << "\n";
      };
      line(t.header);
      for (const auto& r : t.rows) line(r);
    }
  }

 private:
  struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
  };
  std::vector<std::pair<std::string, std::string>> preamble_;
  std::vector<Table> tables_;
};

inline std::string params(const LinearCode& code, int d) {
  return "[" + std::to_string(code.n()) + "," + std::to_string(code.k()) + "," + std::to_string(d) + "]";
}

inline std::string poset_line(const LinearCode& code) {
  if (auto space = detect_chain_product(code.poset(), code.q())) {
    if (space->r == 1) return "hamming n=" + std::to_string(space->n);
    return "ordered n=" + std::to_string(space->n) + " r=" + std::to_string(space->r);
  }
  return "general n=" + std::to_string(code.n()) + " covers=" + std::to_string(code.poset().covers().size());
}

inline std::string vec_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

inline std::vector<std::int64_t> parse_vector(const std::string& text, const std::string& name) {
  try {
    return detail::parse_row(text, 0);
  } catch (const ParseError& e) {
    throw UsageError("--" + name + ": " + e.message());
  }
}

inline std::uint64_t default_max_enum() {
  if (const char* env = std::getenv("POSET_CODES_MAX_ENUM")) {
    try {
      std::size_t used = 0;
      const std::string s = env;
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("POSET_CODES_MAX_ENUM is not a nonnegative integer: '") + env + "'");
  }
  return Budget::kDefaultMaxEnum;
}

struct Options {
  std::string format = "text";
  std::uint64_t max_enum = Budget::kDefaultMaxEnum;
  std::string code_path;
  // weightdist
  std::string method = "both";
  std::string formula = "auto";
  bool shapes = false;
  // construct
  std::string family;
  std::uint32_t q = 2;
  int r = 0, k = 0, k1 = 0, k2 = 0;
  std::string x, u, v, w, m;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  // verify-net
  int t = 0, net_m = 0;
  // tiling
  std::optional<int> ideal_size;
  std::string ideal;
};

inline int cmd_analyze(const Options& o, const Budget& budget, Report& rep) {
  auto code = read_code_file(o.code_path);
  auto cls = classify(code, budget);
  rep.set("q", std::to_string(code.q()));
  rep.set("poset", poset_line(code));
  rep.set("n", std::to_string(cls.n));
  rep.set("k", std::to_string(cls.k));
  rep.set("d", std::to_string(cls.d));
  rep.set("d2", cls.d2 ? std::to_string(*cls.d2) : "undefined (k=1)");
  rep.set("d_dual", std::to_string(cls.dual_d));
  rep.set("params", params(code, cls.d));
  rep.set("class", cls.label());
  rep.set("nmds_definition", std::string(cls.nmds_by_definition ? "yes" : "no") +
                                 (cls.degenerate ? " (k=1 uses the duality criterion)" : " (d=n-k and d2=n-k+2)"));
  rep.set("check", "d + d_dual = " + std::to_string(cls.d) + " + " + std::to_string(cls.dual_d) + " = " +
                       std::to_string(cls.d + cls.dual_d) + (cls.nmds_by_duality ? " == " : " != ") + "n = " +
                       std::to_string(cls.n));
  rep.table("weight hierarchy", {"t", "d_t", "d_t_dual"});
  const int rows = std::max(cls.profile.size(), cls.dual_profile.size());
  for (int t = 1; t <= rows; ++t) {
    rep.row({std::to_string(t), t <= cls.profile.size() ? std::to_string(cls.profile[t]) : "-",
             t <= cls.dual_profile.size() ? std::to_string(cls.dual_profile[t]) : "-"});
  }
  return kPass;
}

inline int cmd_weightdist(const Options& o, const Budget& budget, Report& rep) {
  auto code = read_code_file(o.code_path);
  const bool brute = o.method == "brute" || o.method == "both";
  const bool analytic = o.method == "analytic" || o.method == "both";
  auto space = detect_chain_product(code.poset(), code.q());
  rep.set("q", std::to_string(code.q()));
  rep.set("poset", poset_line(code));
  rep.set("method", o.method);

  std::optional<WeightDistribution> b, a;
  if (brute) b = weight_dist_bruteforce(code, budget);
  ShapeSeed shape_seed_used;
  if (analytic) {
    auto cls = classify(code, budget);
    if (!cls.is_nmds()) throw PreconditionError("the analytic method needs an NMDS code, this one is " + cls.label());
    std::string formula = o.formula;
    if (formula == "auto") formula = !space ? "poset" : space->r == 1 ? "hamming" : "ordered";
    if ((formula == "ordered" || formula == "hamming") && !space) {
      throw UsageError("--formula " + formula + " needs an ordered poset");
    }
    if (formula == "hamming" && space->r != 1) throw UsageError("--formula hamming needs the antichain poset");
    rep.set("formula", formula);
    rep.set("params", params(code, cls.d));
    if (formula == "poset") {
      a = weight_dist_nmds_poset(code, ideal_seed(code, cls.d, budget), budget);
    } else if (formula == "ordered") {
      shape_seed_used = shape_seed(code, *space, cls.d, budget);
      a = weight_dist_nmds_ordered(*space, code.k(), cls.d, shape_seed_used);
    } else {
      BigInt a_d = 0;
      for (const auto& [j, cnt] : ideal_seed(code, cls.d, budget)) a_d += cnt;
      a = weight_dist_nmds_hamming(code.n(), code.k(), cls.d, code.q(), a_d);
    }
    rep.set("seed", "A_" + std::to_string(cls.d) + " = " + a->by_size[cls.d].str());
  }

  int status = kPass;
  if (brute && analytic) {
    const bool agree = b->by_size == a->by_size;
    rep.set("verdict", agree ? "AGREE" : "DISAGREE");
    if (!agree) status = kFail;
    rep.table("weight distribution", {"s", "A_s_brute", "A_s_analytic"});
    for (int s = 0; s <= code.n(); ++s) rep.row({std::to_string(s), b->by_size[s].str(), a->by_size[s].str()});
  } else {
    const auto& dist = brute ? *b : *a;
    rep.table("weight distribution", {"s", "A_s"});
    for (int s = 0; s <= code.n(); ++s) rep.row({std::to_string(s), dist.by_size[s].str()});
  }
  if (o.shapes) {
    if (!space) throw UsageError("--shapes needs an ordered poset");
    if (brute) {
      rep.table("shape distribution", {"shape", "weight", "A_e"});
      for (int s = 0; s <= code.n(); ++s) {
        for (const auto& e : enumerate_shapes(*space, s)) {
          auto it = b->by_shape.find(e);
          if (it != b->by_shape.end()) rep.row({e.str(), std::to_string(s), it->second.str()});
        }
      }
    } else {
      if (shape_seed_used.empty()) shape_seed_used = shape_seed(code, *space, classify(code, budget).d, budget);
      rep.table("shape seed", {"shape", "weight", "A_e"});
      for (const auto& [e, cnt] : shape_seed_used) rep.row({e.str(), std::to_string(e.weight()), cnt.str()});
    }
  }
  return status;
}

inline int cmd_construct(const Options& o, const Budget& budget, Report& rep, std::string& file_text) {
  ConstructionSpec spec;
  if (o.family == "n1") {
    spec.family = Family::n1;
  } else if (o.family == "n2") {
    spec.family = Family::n2;
  } else if (o.family == "n3") {
    spec.family = Family::n3;
  } else {
    throw UsageError("--family must be n1, n2 or n3");
  }
  spec.q = o.q;
  spec.r = o.r;
  spec.k = o.k;
  spec.k1 = o.k1;
  spec.k2 = o.k2;
  spec.seed = o.seed;
  if (!o.x.empty()) spec.x = parse_vector(o.x, "x");
  if (!o.u.empty()) spec.u = parse_vector(o.u, "u");
  if (!o.v.empty()) spec.v = parse_vector(o.v, "v");
  if (!o.w.empty()) spec.w = parse_vector(o.w, "w");
  if (!o.m.empty()) {
    std::string rest = o.m;
    for (std::size_t pos; (pos = rest.find(';')) != std::string::npos; rest = rest.substr(pos + 1)) {
      spec.m.push_back(parse_vector(rest.substr(0, pos), "m"));
    }
    spec.m.push_back(parse_vector(rest, "m"));
  }
  if (spec.r < 1) throw UsageError("--r must be at least 1");
  auto code = build(spec, budget);
  std::ostringstream text;
  write_code(text, code);
  file_text = text.str();
  auto cls = classify(code, budget);
  rep.set("family", o.family);
  rep.set("params", params(code, cls.d));
  rep.set("class", cls.label());
  rep.set("d_dual", std::to_string(cls.dual_d));
  return kPass;
}

inline int cmd_points(const Options& o, const Budget& budget, Report& rep, std::string& csv) {
  auto code = read_code_file(o.code_path);
  auto ps = code_to_points(code, budget);
  std::ostringstream text;
  write_points_csv(text, ps);
  csv = text.str();
  rep.set("points", std::to_string(ps.size()));
  rep.set("dimension", std::to_string(ps.space.n));
  rep.set("denominator", std::to_string(ps.denominator()));
  return kPass;
}

inline void describe_uniformity(Report& rep, const std::string& key, const UniformityReport& u, std::uint32_t q) {
  rep.set(key, pass_fail(u.holds));
  rep.set(key + "_intervals", std::to_string(u.intervals_checked));
  if (u.limited) rep.set(key + "_note", "intervals needing resolution above r were not checked");
  if (u.counterexample) {
    rep.set(key + "_counterexample",
            u.counterexample->str(q) + " holds " + std::to_string(u.counterexample_count) + " points");
  }
}

inline int cmd_verify_net(const Options& o, const Budget& budget, Report& rep) {
  auto code = read_code_file(o.code_path);
  auto ps = code_to_points(code, budget);
  auto u = verify_net(ps, o.t, o.net_m);
  rep.set("points", std::to_string(ps.size()));
  rep.set("net", "(" + std::to_string(o.t) + "," + std::to_string(o.net_m) + "," + std::to_string(ps.space.n) + ")");
  rep.set("volume", "q^-" + std::to_string(o.net_m - o.t));
  rep.set("points_per_interval", std::to_string(saturating_pow(ps.space.q, o.t)));
  describe_uniformity(rep, "result", u, ps.space.q);
  return u.holds ? kPass : kFail;
}

inline int cmd_verify_distribution(const Options& o, const Budget& budget, Report& rep) {
  auto code = read_code_file(o.code_path);
  auto ps = code_to_points(code, budget);
  auto r = verify_nmds_distribution(code, budget);
  const auto q = ps.space.q;
  rep.set("points", std::to_string(ps.size()));
  rep.set("space", "n=" + std::to_string(ps.space.n) + " r=" + std::to_string(ps.space.r) + " q=" + std::to_string(q));
  rep.set("k", std::to_string(r.k) + (r.degenerate ? " (degenerate)" : ""));
  rep.set("part1_volume", "q^-" + std::to_string(r.k - 1));
  describe_uniformity(rep, "part1", r.part1, q);
  rep.set("part2", pass_fail(r.part2));
  std::string hits;
  for (const auto& l : r.anchored_hits) hits += (hits.empty() ? "" : " ") + vec_str(l);
  rep.set("part2_anchored_hits", hits.empty() ? "none" : hits);
  rep.set("part2_smaller_hit", r.smaller_hit ? vec_str(*r.smaller_hit) : "none");
  rep.set("result", pass_fail(r.passed()));
  rep.table("anchored intervals of volume q^-k", {"l", "points"});
  for (const auto& l : detail::resolutions(ps.space.n, ps.space.r, r.k)) {
    rep.row({vec_str(l), std::to_string(anchored_count(ps, l))});
  }
  return r.passed() ? kPass : kFail;
}

inline void tiling_row(Report& rep, const Tiling& t) {
  rep.row({t.ideal.str(), std::to_string(t.parts), t.disjoint ? "yes" : "no", t.tiling ? "yes" : "no",
           t.perfect ? "yes" : "no", t.counterexample.empty() ? "-" : t.counterexample});
}

inline int cmd_tiling(const Options& o, const Budget& budget, Report& rep) {
  auto code = read_code_file(o.code_path);
  rep.set("params", "[" + std::to_string(code.n()) + "," + std::to_string(code.k()) + "]");
  rep.set("parts_expected", std::to_string(saturating_pow(code.q(), code.k() - 1)));
  const std::vector<std::string> header = {"ideal", "parts", "disjoint", "tiling", "perfect", "counterexample"};
  if (!o.ideal.empty() || o.ideal_size) {
    std::vector<Tiling> results;
    if (!o.ideal.empty()) {
      Mask bits = 0;
      for (auto l : parse_vector(o.ideal, "ideal")) {
        if (l < 1 || l > code.n()) throw UsageError("--ideal label " + std::to_string(l) + " out of range");
        bits |= label_bit(static_cast<int>(l));
      }
      results.push_back(verify_tiling(code, code.poset().ideal(bits), budget));
    } else {
      if (*o.ideal_size < 0 || *o.ideal_size > code.n()) throw UsageError("--ideal-size out of range");
      code.poset().for_each_ideal(*o.ideal_size, [&](const Ideal& i) { results.push_back(verify_tiling(code, i, budget)); });
    }
    bool all = !results.empty();
    rep.table("tilings", header);
    for (const auto& t : results) {
      tiling_row(rep, t);
      all = all && t.tiling;
    }
    rep.set("result", pass_fail(all));
    return all ? kPass : kFail;
  }
  auto ch = tiling_characterization(code, budget);
  rep.set("part1", std::string(pass_fail(ch.part1)) + " (every ideal of size n-k+1 gives a perfect tiling)");
  rep.set("part2", std::string(pass_fail(ch.part2)) + " (some ideal of size n-k tiles, none smaller)");
  rep.set("witness", ch.witness ? ch.witness->str() : "none");
  rep.set("smaller", ch.smaller ? ch.smaller->str() : "none");
  rep.set("result", pass_fail(ch.holds()));
  if (ch.part1_counterexample) {
    rep.table("part1 counterexample", header);
    tiling_row(rep, *ch.part1_counterexample);
  }
  return ch.holds() ? kPass : kFail;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw UsageError("cannot write '" + path + "'");
}

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`; nothing reaches `out` on exit 2.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear codes under poset metrics: classification, weight distributions, constructions, point sets",
               "poset-codes"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  try {
    o.max_enum = default_max_enum();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  app.add_option("--max-enum", o.max_enum, "Bound on every exhaustive scan (env POSET_CODES_MAX_ENUM)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "tsv"}));

  auto* analyze = app.add_subcommand("analyze", "Parameters, weight hierarchy and classification");
  analyze->add_option("code", o.code_path, "Code file")->required();

  auto* wd = app.add_subcommand("weightdist", "Weight distribution by enumeration and/or closed form");
  wd->add_option("code", o.code_path, "Code file")->required();
  wd->add_option("--method", o.method, "brute, analytic or both")->check(CLI::IsMember({"brute", "analytic", "both"}));
  wd->add_option("--formula", o.formula, "Closed form for the analytic path")
      ->check(CLI::IsMember({"auto", "poset", "ordered", "hamming"}));
  wd->add_flag("--shapes", o.shapes, "Also print the distribution by shape");

  auto* cons = app.add_subcommand("construct", "Explicit NMDS code of the n1, n2 or n3 family");
  cons->add_option("--family", o.family, "n1, n2 or n3")->required()->check(CLI::IsMember({"n1", "n2", "n3"}));
  cons->add_option("--q", o.q, "Field size (prime)")->required();
  cons->add_option("--r", o.r, "Chain length")->required();
  cons->add_option("--k", o.k, "Dimension (n1)");
  cons->add_option("--k1", o.k1, "First block dimension (n2)");
  cons->add_option("--k2", o.k2, "Second block dimension (n2)");
  cons->add_option("--x", o.x, "Top row of n1, length r-k (digits or comma list)");
  cons->add_option("--m", o.m, "Free n1 block, rows separated by ';'");
  cons->add_option("--u", o.u, "First block vector");
  cons->add_option("--v", o.v, "Second block vector");
  cons->add_option("--w", o.w, "Third block vector (n3)");
  cons->add_option("--seed", o.seed, "Fill free entries from this seed");
  cons->add_option("--out", o.out_path, "Write the code file here instead of standard output");

  auto* pts = app.add_subcommand("points", "Export the code as a point set in the unit cube (CSV)");
  pts->add_option("code", o.code_path, "Code file")->required();
  pts->add_option("--out", o.out_path, "CSV path (default: standard output)");

  auto* net = app.add_subcommand("verify-net", "Check the (t,m,n)-net property of the code's point set");
  net->add_option("code", o.code_path, "Code file")->required();
  net->add_option("--t", o.t, "Quality parameter")->required();
  net->add_option("--m", o.net_m, "log_q of the point count")->required();

  auto* dist = app.add_subcommand("verify-distribution", "Interval characterization of ordered NMDS codes");
  dist->add_option("code", o.code_path, "Code file")->required();

  auto* til = app.add_subcommand("tiling", "Ideal tilings of the code");
  til->add_option("code", o.code_path, "Code file")->required();
  auto* size_opt = til->add_option("--ideal-size", o.ideal_size, "Check every ideal of this size");
  til->add_option("--ideal", o.ideal, "Check one ideal, comma separated labels")->excludes(size_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Budget budget{o.max_enum};
  Report rep;
  std::string side_output;
  int status = kPass;
  try {
    auto* sub = app.get_subcommands().front();
    rep.set("verb", sub->get_name());
    const std::string verb = sub->get_name();
    if (verb == "analyze") {
      status = cmd_analyze(o, budget, rep);
    } else if (verb == "weightdist") {
      status = cmd_weightdist(o, budget, rep);
    } else if (verb == "construct") {
      status = cmd_construct(o, budget, rep, side_output);
      if (o.out_path.empty()) {
        out << side_output;
        return status;
      }
      write_file(o.out_path, side_output);
      rep.set("written", o.out_path);
    } else if (verb == "points") {
      status = cmd_points(o, budget, rep, side_output);
      if (o.out_path.empty()) {
        out << side_output;
        return status;
      }
      write_file(o.out_path, side_output);
      rep.set("written", o.out_path);
    } else if (verb == "verify-net") {
      status = cmd_verify_net(o, budget, rep);
    } else if (verb == "verify-distribution") {
      status = cmd_verify_distribution(o, budget, rep);
    } else if (verb == "tiling") {
      status = cmd_tiling(o, budget, rep);
    }
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kFail;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::ostringstream buffer;
  rep.render(buffer, o.format == "tsv");
  out << buffer.str();
  return status;
}

}  // namespace poset_codes::cli
