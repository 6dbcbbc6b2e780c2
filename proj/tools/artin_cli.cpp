// Command-line front end: validate graphs, decide equality and membership,
// intersect parabolic subgroups, print vertex kernels and run a self test.
//
// Exit codes: 0 success, 1 domain error (bad graph, bad word, failed check),
// 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artin/artin.hpp"
#include "artin/testkit.hpp"

namespace {

using nlohmann::json;
using namespace artin;

struct Globals {
  bool json = false;
  bool trace = false;
  std::uint64_t seed = 1;
  std::size_t max_len = 10000;
};

/// Collects either text lines or a JSON object and prints one of them.
class Report {
 public:
  explicit Report(bool as_json) : as_json_(as_json) {}

  json& data() { return data_; }
  void line(const std::string& s) { text_ += s + "\n"; }

  void print() const {
    if (as_json_)
      std::cout << data_.dump(2) << "\n";
    else
      std::cout << text_;
  }

 private:
  bool as_json_;
  json data_ = json::object();
  std::string text_;
};

std::shared_ptr<const ArtinGraph> load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto result = ArtinGraph::validate(parse_graph_text(buf.str()));
  if (!result.ok()) {
    const auto& v = result.violations.front();
    fail(v.kind, v.message + (result.violations.size() > 1
                                  ? " (and " + std::to_string(result.violations.size() - 1) + " more)"
                                  : ""));
  }
  return result.graph;
}

json support_json(const ArtinGraph& graph, const VertexSet& s) {
  json out = json::array();
  for (VertexId v : s) out.push_back(graph.name(v));
  return out;
}

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& step : trace) out.push_back({{"rule", step.rule}, {"detail", step.detail}, {"depth", step.depth}});
  return out;
}

void emit_trace(Report& report, const std::vector<TraceStep>& trace, bool text) {
  report.data()["trace"] = trace_json(trace);
  if (!text) return;
  for (const auto& step : trace)
    report.line("  " + std::string(static_cast<std::size_t>(step.depth) * 2, ' ') + step.rule + ": " + step.detail);
}

void emit_parabolic(Report& report, const ArtinGraph& graph, const ParabolicSubgroup& p) {
  report.data()["support"] = support_json(graph, p.support());
  report.data()["conjugator"] = format_word(graph, p.conjugator());
  report.line("support: {" + format_vertex_list(graph, p.support()) + "}");
  report.line("conjugator: " + format_word(graph, p.conjugator()));
}

/// "a,b|x a^-1": support list, then an optional conjugator word.
ParabolicSubgroup parse_parabolic_spec(const ArtinGraph& graph, const std::string& text) {
  auto bar = text.find('|');
  std::string support = text.substr(0, bar);
  std::string conj = bar == std::string::npos ? "1" : text.substr(bar + 1);
  return ParabolicSubgroup(parse_word(graph, conj), parse_vertex_set(graph, support));
}

int run_selftest(std::uint64_t seed, std::size_t vertices, std::size_t len, std::size_t cases,
                 Report& report) {
  std::mt19937_64 rng(seed);
  std::size_t agree = 0, disagree = 0, unknown = 0, checked = 0, failures = 0;
  json examples = json::array();
  for (std::size_t c = 0; c < cases; ++c) {
    auto graph = testkit::random_graph(rng, vertices, {2, 4, 6});
    ArtinGroup group(graph);
    Word u = testkit::random_word(rng, *graph, len);
    Word v = testkit::random_word(rng, *graph, len);
    if (c % 2 == 1) {
      // Equal pairs through an inserted relator conjugate.
      v = u;
      for (std::uint32_t i = 0; i < graph->size(); ++i)
        for (std::uint32_t j = i + 1; j < graph->size(); ++j)
          if (int m = graph->label(vertex(i), vertex(j))) {
            Word r = artin_relator(graph->tag(), vertex(i), vertex(j), m);
            v = v * conjugate(r, testkit::random_word(rng, *graph, 2));
            i = j = static_cast<std::uint32_t>(graph->size());
          }
    }
    bool solver = group.is_equal(u, v);
    auto oracle = testkit::oracle_equal(*graph, u, v, len);
    if (oracle == testkit::Verdict::Unknown) {
      ++unknown;
    } else if ((oracle == testkit::Verdict::True) == solver) {
      ++agree;
    } else {
      ++disagree;
      if (examples.size() < 5)
        examples.push_back({{"graph", format_graph_text(*graph)}, {"u", format_word(*graph, u)}, {"v", format_word(*graph, v)}});
    }

    ParabolicSubgroup p = testkit::random_parabolic(rng, *graph, len);
    ParabolicSubgroup q = testkit::random_parabolic(rng, *graph, len);
    ParabolicSubgroup r = intersect(group, p, q);
    for (int k = 0; k < 10; ++k) {
      Word w = k % 2 ? testkit::random_element(rng, *graph, r, len) : testkit::random_element(rng, *graph, p, len);
      ++checked;
      if (member(group, r, w) != (member(group, p, w) && member(group, q, w))) ++failures;
    }
  }
  bool ok = disagree == 0 && failures == 0;
  auto& d = report.data();
  d["result"] = ok ? "pass" : "fail";
  d["seed"] = seed;
  d["cases"] = cases;
  d["word_problem"] = {{"agree", agree}, {"disagree", disagree}, {"unknown", unknown}, {"disagreements", examples}};
  d["intersection"] = {{"checked", checked}, {"failures", failures}};
  report.line(std::string(ok ? "pass" : "fail") + ": word problem agree=" + std::to_string(agree) +
              " disagree=" + std::to_string(disagree) + " unknown=" + std::to_string(unknown) +
              "; intersection membership checked=" + std::to_string(checked) + " failures=" + std::to_string(failures));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even FC-type Artin groups: word problem and parabolic subgroups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_flag("--trace", g.trace, "Print the reduction trace in text mode");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--max-len", g.max_len, "Word length cap")->check(CLI::PositiveNumber);

  std::string file, w1, w2, support, conj, vertex_name, rewrite;
  std::string p_conj = "1", p_support, q_conj = "1", q_support;
  std::vector<std::string> parabolics;
  std::size_t st_vertices = 3, st_len = 6, st_cases = 100;

  auto* validate = app.add_subcommand("validate", "Check that a graph file describes an even FC-type graph");
  validate->add_option("file", file, "Graph file")->required();

  auto* eq = app.add_subcommand("eq", "Decide whether two words are equal");
  eq->add_option("file", file, "Graph file")->required();
  eq->add_option("u", w1, "First word")->required();
  eq->add_option("v", w2, "Second word")->required();

  auto* triv = app.add_subcommand("triv", "Decide whether a word is trivial");
  triv->add_option("file", file, "Graph file")->required();
  triv->add_option("w", w1, "Word")->required();

  auto* mem = app.add_subcommand("member", "Decide membership in a parabolic subgroup");
  mem->add_option("file", file, "Graph file")->required();
  mem->add_option("w", w1, "Word")->required();
  mem->add_option("--support", support, "Support, comma separated")->required();
  mem->add_option("--conj", conj, "Conjugator word")->default_val("1");

  auto* inter = app.add_subcommand("intersect", "Intersect two parabolic subgroups");
  inter->add_option("file", file, "Graph file")->required();
  inter->add_option("--p-conj", p_conj, "Conjugator of P")->default_val("1");
  inter->add_option("--p-support", p_support, "Support of P")->required();
  inter->add_option("--q-conj", q_conj, "Conjugator of Q")->default_val("1");
  inter->add_option("--q-support", q_support, "Support of Q")->required();

  auto* many = app.add_subcommand("intersect-many", "Intersect a family of parabolic subgroups");
  many->add_option("file", file, "Graph file")->required();
  many->add_option("--parabolic", parabolics, "Parabolic as \"a,b|conjugator\"; repeat for each member")->required();

  auto* kern = app.add_subcommand("kernel", "Print the kernel graph of the retraction onto a vertex");
  kern->add_option("file", file, "Graph file")->required();
  kern->add_option("--vertex", vertex_name, "Vertex x")->required();
  kern->add_option("--rewrite", rewrite, "Word in the kernel to rewrite");

  auto* self = app.add_subcommand("selftest", "Compare the solvers against the oracle on random instances");
  self->add_option("--vertices", st_vertices, "Maximum vertex count")->check(CLI::Range(1, 6));
  self->add_option("--len", st_len, "Maximum word length")->check(CLI::Range(0, 12));
  self->add_option("--cases", st_cases, "Number of cases")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report report(g.json);
  int code = 0;
  try {
    set_length_cap(g.max_len);
    if (*self) {
      report.data()["command"] = "selftest";
      code = run_selftest(g.seed, st_vertices, st_len, st_cases, report);
      report.print();
      return code;
    }

    auto graph = load_graph(file);
    ArtinGroup group(graph);
    auto& d = report.data();

    if (*validate) {
      d["command"] = "validate";
      d["result"] = "valid";
      d["vertices"] = graph->size();
      d["edges"] = graph->raw().edges.size();
      report.line("valid even FC");
    } else if (*eq) {
      Word u = group.parse(w1), v = group.parse(w2);
      bool same = group.is_equal(u, v);
      d["command"] = "eq";
      d["result"] = same ? "equal" : "not equal";
      report.line(same ? "equal" : "not equal");
    } else if (*triv) {
      bool trivial = group.is_trivial(group.parse(w1));
      d["command"] = "triv";
      d["result"] = trivial ? "trivial" : "nontrivial";
      report.line(trivial ? "trivial" : "nontrivial");
    } else if (*mem) {
      ParabolicSubgroup p(group.parse(conj), parse_vertex_set(*graph, support));
      bool in = member(group, p, group.parse(w1));
      d["command"] = "member";
      d["result"] = in ? "member" : "not member";
      d["support"] = support_json(*graph, p.support());
      d["conjugator"] = format_word(*graph, p.conjugator());
      report.line(in ? "member" : "not member");
    } else if (*inter) {
      ParabolicSubgroup p(group.parse(p_conj), parse_vertex_set(*graph, p_support));
      ParabolicSubgroup q(group.parse(q_conj), parse_vertex_set(*graph, q_support));
      std::vector<TraceStep> trace;
      IntersectionEngine engine(group, &trace);
      ParabolicSubgroup r = engine.intersect(p, q);
      d["command"] = "intersect";
      d["result"] = "parabolic";
      emit_parabolic(report, *graph, r);
      emit_trace(report, trace, g.trace);
    } else if (*many) {
      std::vector<ParabolicSubgroup> family;
      for (const auto& spec : parabolics) family.push_back(parse_parabolic_spec(*graph, spec));
      std::vector<TraceStep> trace;
      IntersectionEngine engine(group, &trace);
      IntersectManyResult r = engine.intersect_many(family);
      d["command"] = "intersect-many";
      d["result"] = "parabolic";
      emit_parabolic(report, *graph, r.result);
      json chain = json::array();
      for (const auto& c : r.chain)
        chain.push_back({{"support", support_json(*graph, c.support())}, {"conjugator", format_word(*graph, c.conjugator())}});
      d["chain"] = chain;
      d["distinct"] = r.distinct;
      report.line("distinct values along the chain: " + std::to_string(r.distinct));
      emit_trace(report, trace, g.trace);
    } else if (*kern) {
      KernelContext ctx(graph, graph->at(vertex_name));
      Word kernel_word(ctx.tag());
      if (!rewrite.empty()) kernel_word = ctx.rewrite(group.parse(rewrite));
      const ArtinGraph& delta = *ctx.graph();
      d["command"] = "kernel";
      d["result"] = "kernel";
      d["hypothesis"] = ctx.hypothesis_a() ? "star" : "labels-2";
      d["vertices"] = delta.names();
      json edges = json::array();
      report.line("vertices: " + format_vertex_list(delta, delta.vertices()));
      report.line("edges:");
      for (const auto& e : delta.raw().edges) {
        edges.push_back({{"u", e.u}, {"v", e.v}, {"label", e.label}});
        report.line("  " + e.u + " " + e.v + " " + std::to_string(e.label));
      }
      d["edges"] = edges;
      if (!ctx.outside().empty()) {
        auto [lo, hi] = ctx.window();
        d["window"] = {lo, hi};
        report.line("realized index window: [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      json sigmas = json::object();
      for (VertexId u : ctx.link()) {
        std::string s = format_word(delta, ctx.sigma(u));
        sigmas[graph->name(u)] = s;
        report.line("sigma_" + graph->name(u) + " = " + s);
      }
      d["sigma"] = sigmas;
      if (!rewrite.empty()) {
        d["rewrite"] = format_word(delta, kernel_word);
        report.line("rewrite: " + format_word(delta, kernel_word));
      }
    }
  } catch (const Error& e) {
    if (g.json)
      std::cout << json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  report.print();
  return code;
}
