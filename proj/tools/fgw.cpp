// Command-line front end: one binary, one subcommand per library operation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fgw/bounds.hpp"
#include "fgw/enumerate.hpp"
#include "fgw/textio.hpp"

using nlohmann::json;

namespace {

std::string slurp_stdin() {
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

// "-" means stdin; used for every positional that accepts a file or literal.
std::string read_arg(const std::string& s) { return s == "-" ? slurp_stdin() : s; }

std::string read_file_or_stdin(const std::string& path) {
  if (path == "-") return slurp_stdin();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool machine(const std::string& fmt) { return fmt == "machine"; }

void emit(const std::string& fmt, const std::string& key, const std::string& value) {
  if (machine(fmt))
    std::cout << json{{key, value}}.dump() << "\n";
  else
    std::cout << value << "\n";
}

json degree_json(const fgw::CertifiedDegree& d) {
  if (d.status == fgw::DegreeStatus::Certified)
    return {{"status", "certified"},
            {"value", d.value},
            {"witness", d.witness ? json::parse(fgw::format_diagram(*d.witness)) : json()}};
  return {{"status", "unknown"}, {"budget", d.budget}};
}

int run(int argc, char** argv) {
  CLI::App app{"free-group words, automorphisms, sphere-basis diagrams, degree bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string fmt = "text";
  app.add_option("--format", fmt, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  int rank = 2;
  int budget = 0;
  int jobs = 1;
  bool override_guard = false;

  auto add_rank = [&](CLI::App* c) { c->add_option("--rank", rank, "free-group rank"); };
  auto add_search = [&](CLI::App* c) {
    c->add_option("--budget", budget, "token budget");
    c->add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
    c->add_flag("--override-guard", override_guard, "lift the desk-scale search guard");
  };

  std::vector<std::string> words;
  std::string arg1, arg2;

  auto* c_reduce = app.add_subcommand("reduce", "freely reduce a word");
  c_reduce->add_option("word", arg1)->required();

  auto* c_mul = app.add_subcommand("mul", "reduced product of two words");
  c_mul->add_option("w1", arg1)->required();
  c_mul->add_option("w2", arg2)->required();

  auto* c_inv = app.add_subcommand("inv", "inverse of a word");
  c_inv->add_option("word", arg1)->required();

  auto* c_apply = app.add_subcommand("apply", "apply an endomorphism to a word");
  add_rank(c_apply);
  c_apply->add_option("endo", arg1)->required();
  c_apply->add_option("word", arg2)->required();

  auto* c_compose = app.add_subcommand("compose", "compose two endomorphisms (second acts first)");
  add_rank(c_compose);
  c_compose->add_option("f", arg1)->required();
  c_compose->add_option("g", arg2)->required();

  auto* c_invert = app.add_subcommand("invert", "invert an automorphism");
  add_rank(c_invert);
  c_invert->add_option("endo", arg1)->required();

  auto* c_basis = app.add_subcommand("is-basis", "Nielsen basis test for a tuple of words");
  add_rank(c_basis);
  c_basis->add_option("words", words)->required();

  auto* c_trace = app.add_subcommand("trace", "trace the automorphism of a diagram file");
  c_trace->add_option("file", arg1)->required();

  auto* c_validate = app.add_subcommand("validate", "check a diagram file against all invariants");
  c_validate->add_option("file", arg1)->required();

  auto* c_degree = app.add_subcommand("degree", "certified in-model degree of an automorphism");
  add_rank(c_degree);
  add_search(c_degree);
  c_degree->add_option("endo", arg1)->required();

  auto* c_deg0 = app.add_subcommand("deg0-enum", "catalogue of degree-zero automorphisms");
  add_rank(c_deg0);
  add_search(c_deg0);

  auto* c_bounds = app.add_subcommand("verify-bounds", "exhaustive bound sweep (rank 2)");
  add_rank(c_bounds);
  add_search(c_bounds);
  std::string mode = "muller";
  c_bounds->add_option("--mode", mode, "muller, mixed, or conjecture")
      ->check(CLI::IsMember({"muller", "mixed", "conjecture"}));

  auto* c_dot = app.add_subcommand("render-dot", "DOT rendering of a diagram file");
  c_dot->add_option("file", arg1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  fgw::EnumerateOptions opts;
  opts.jobs = jobs;
  opts.override_guard = override_guard;

  if (c_reduce->parsed()) {
    emit(fmt, "word", fgw::format_word(fgw::reduce(fgw::parse_word(read_arg(arg1)))));
  } else if (c_mul->parsed()) {
    auto w = fgw::concat(fgw::reduce(fgw::parse_word(read_arg(arg1))),
                         fgw::reduce(fgw::parse_word(read_arg(arg2))));
    emit(fmt, "word", fgw::format_word(w));
  } else if (c_inv->parsed()) {
    emit(fmt, "word", fgw::format_word(fgw::invert(fgw::reduce(fgw::parse_word(read_arg(arg1))))));
  } else if (c_apply->parsed()) {
    auto e = fgw::parse_endomorphism(read_arg(arg1), rank);
    emit(fmt, "word", fgw::format_word(fgw::apply(e, fgw::parse_word(read_arg(arg2)))));
  } else if (c_compose->parsed()) {
    auto f = fgw::parse_endomorphism(read_arg(arg1), rank);
    auto g = fgw::parse_endomorphism(read_arg(arg2), rank);
    emit(fmt, "endomorphism", fgw::format_endomorphism(fgw::compose(f, g)));
  } else if (c_invert->parsed()) {
    auto e = fgw::parse_endomorphism(read_arg(arg1), rank);
    emit(fmt, "endomorphism", fgw::format_endomorphism(fgw::invert_automorphism(e)));
  } else if (c_basis->parsed()) {
    std::vector<fgw::Word> tuple;
    for (const auto& s : words) tuple.push_back(fgw::reduce(fgw::parse_word(s)));
    bool ok = fgw::is_basis(tuple, rank);
    if (machine(fmt))
      std::cout << json{{"is_basis", ok}}.dump() << "\n";
    else
      std::cout << (ok ? "true" : "false") << "\n";
  } else if (c_trace->parsed()) {
    auto d = fgw::parse_diagram(read_file_or_stdin(arg1));
    emit(fmt, "endomorphism", fgw::format_endomorphism(fgw::trace(d)));
  } else if (c_validate->parsed()) {
    auto d = fgw::parse_diagram_unchecked(read_file_or_stdin(arg1));
    auto violations = fgw::validate(d);
    if (machine(fmt)) {
      json vs = json::array();
      for (const auto& v : violations)
        vs.push_back({{"code", fgw::violation_code_name(v.code)}, {"detail", v.detail}});
      std::cout << json{{"ok", violations.empty()}, {"violations", vs}}.dump() << "\n";
    } else if (violations.empty()) {
      std::cout << "ok\n";
    } else {
      for (const auto& v : violations)
        std::cout << fgw::violation_code_name(v.code) << ": " << v.detail << "\n";
    }
    return violations.empty() ? 0 : 1;
  } else if (c_degree->parsed()) {
    auto e = fgw::parse_endomorphism(read_arg(arg1), rank);
    auto d = fgw::degree(e, budget, opts);
    if (machine(fmt)) {
      std::cout << degree_json(d).dump() << "\n";
    } else if (d.status == fgw::DegreeStatus::Certified) {
      std::cout << "certified " << d.value << "\n";
    } else {
      std::cout << "unknown (budget " << d.budget << ")\n";
    }
    return d.status == fgw::DegreeStatus::Certified ? 0 : 3;
  } else if (c_deg0->parsed()) {
    for (const auto& [e, w] : fgw::degree_zero_set(rank, opts))
      std::cout << fgw::format_endomorphism(e) << "\t" << fgw::format_diagram(w) << "\n";
  } else if (c_bounds->parsed()) {
    auto m = mode == "muller"  ? fgw::BoundsMode::Muller
             : mode == "mixed" ? fgw::BoundsMode::Mixed
                               : fgw::BoundsMode::Conjecture;
    if (budget == 0) budget = 4;
    auto report = fgw::verify_bounds(rank, budget, m, opts);
    std::cout << (machine(fmt) ? fgw::render_report_machine(report) + "\n"
                               : fgw::render_report_text(report));
    return report.exit_code();
  } else if (c_dot->parsed()) {
    auto d = fgw::parse_diagram(read_file_or_stdin(arg1));
    std::cout << fgw::render_dot(d);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fgw::ParseError& e) {
    std::cerr << "parse error [" << e.code << "] at " << e.begin << ".." << e.end << ": "
              << e.what() << "\n";
    return 1;
  } catch (const fgw::DiagramRejected& e) {
    std::cerr << "diagram rejected:\n";
    for (const auto& v : e.violations)
      std::cerr << "  " << fgw::violation_code_name(v.code) << ": " << v.detail << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
