#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fca/context_io.hpp"
#include "fca/exploration.hpp"
#include "fca/implications.hpp"
#include "fca/lattice.hpp"
#include "fca/testlab.hpp"

namespace fca::cli {
namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

std::string braces(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

std::string render_concept(const FormalContext& ctx, const FormalConcept& c) {
  return "(" + braces(ctx.names_of(c.extent)) + ", " + braces(ctx.names_of(c.intent)) + ")";
}

struct Options {
  std::string context;
  std::string format = "text";
  std::optional<std::size_t> top;
  std::string implications;
  bool dichotomize = false;
  std::string attributes;
  std::string resume;
  std::string save;
  std::string oracle;
  std::string failure_attr;
  std::size_t depth = 1;
  std::string tags;
};

int cmd_concepts(const Options& o, Streams& io) {
  const auto ctx = load_context(o.context);
  const auto lattice = o.top ? top_part(ctx, *o.top) : build_lattice(ctx);
  if (o.format == "json") {
    io.out << lattice_to_json(lattice).dump(2) << '\n';
  } else if (o.format == "dot") {
    io.out << export_dot(lattice, ctx);
  } else {
    for (const auto& c : lattice.concepts()) io.out << render_concept(ctx, c) << '\n';
  }
  return kOk;
}

int cmd_base(const Options& o, Streams& io) {
  const auto ctx = load_context(o.context);
  const auto base = canonical_base(ctx);
  if (o.format == "json") {
    io.out << implications_to_json(base).dump(2) << '\n';
  } else if (o.format == "pict") {
    for (const auto& line : export_pict(base, ctx.attribute_names()).lines) io.out << line << '\n';
  } else {
    for (const auto& imp : base) io.out << format_implication(imp, ctx.attribute_names(), "->") << '\n';
  }
  return kOk;
}

int cmd_check(const Options& o, Streams& io) {
  auto ctx = load_context(o.context);
  const auto text = read_file(o.implications);
  bool dichotomized = o.dichotomize;
  for (const auto& line : split_list(text, '\n'))
    if (line == "#dichotomized") dichotomized = true;
  if (!dichotomized && uses_negated_tokens(text))
    throw UsageError("implications use '!x' tokens; pass --dichotomize or add a '#dichotomized' header");
  if (dichotomized) ctx = ctx.dichotomize();
  ParsedImplications parsed;
  try {
    parsed = parse_implications(text, ctx.attribute_names());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), o.implications);
  }
  std::size_t failed = 0;
  for (const auto& imp : parsed.implications) {
    const auto rendered = format_implication(imp, ctx.attribute_names(), "->");
    if (auto g = first_violator(ctx, imp)) {
      ++failed;
      io.out << "FAIL " << rendered << "  (witness: " << ctx.object_names()[*g] << ")\n";
    } else {
      io.out << "ok   " << rendered << '\n';
    }
  }
  const auto total = parsed.implications.size();
  io.out << (total - failed) << " of " << total << " implications hold\n";
  return failed == 0 ? kOk : kDomainError;
}

std::string style_question(const std::string& q, bool color) {
  return color ? "\x1b[1m" + q + "\x1b[0m" : q;
}

void print_results(const ExplorationSession& s, std::ostream& out) {
  const auto& ctx = s.working_context();
  out << "Exploration finished.\n";
  out << "Implications:\n";
  for (const auto& imp : s.accepted()) out << "  " << format_implication(imp, ctx.attribute_names(), "->") << '\n';
  out << "Examples:\n";
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    out << "  " << ctx.object_names()[g] << ": " << format_attributes(ctx.row(g), ctx.attribute_names()) << '\n';
}

// "y" | "n <name> <attr>, <attr>, ..."
std::optional<ExpertAnswer> parse_answer(const std::string& raw, const FormalContext& ctx, std::string& problem) {
  const std::string line = trim(raw);
  if (line == "y" || line == "yes") return Accept{};
  std::istringstream in(line);
  std::string verb, name;
  in >> verb;
  if (verb != "n" && verb != "no") {
    problem = "answer 'y' or 'n <name> <attributes>'";
    return std::nullopt;
  }
  if (!(in >> name)) {
    problem = "a counterexample needs an object name";
    return std::nullopt;
  }
  std::string rest;
  std::getline(in, rest);
  const auto names = rest.find(',') != std::string::npos ? split_list(rest) : split_list(rest, ' ');
  try {
    return Counterexample{name, ctx.attributes_from_names(names)};
  } catch (const NotFoundError& e) {
    problem = e.what();
    return std::nullopt;
  }
}

int cmd_explore(const Options& o, Streams& io) {
  std::optional<ExplorationSession> session;
  if (!o.resume.empty() && std::filesystem::exists(o.resume)) {
    session.emplace(load_session(read_file(o.resume)));
  } else if (!o.context.empty()) {
    session.emplace(load_context(o.context));
  } else if (!o.attributes.empty()) {
    session.emplace(split_list(o.attributes));
  } else if (!o.resume.empty()) {
    throw NotFoundError("cannot open '" + o.resume + "'");
  } else {
    throw UsageError("explore needs --attributes, --context or --resume");
  }
  const auto save = [&] {
    if (!o.save.empty()) write_file(o.save, save_session(*session));
  };

  if (!o.oracle.empty()) {
    const auto hidden = load_context(o.oracle);
    // Validates the examples against the hidden context before driving it.
    ExplorationSession probe = *session;
    run_with_oracle(probe, hidden);
    while (!session->done()) {
      const auto& q = *session->current_question();
      io.out << session->render(q) << '\n';
      if (auto g = first_violator(hidden, q)) {
        io.out << "  no: " << hidden.object_names()[*g] << " ("
               << format_attributes(hidden.row(*g), hidden.attribute_names()) << ")\n";
        session->answer(Counterexample{hidden.object_names()[*g], hidden.row(*g)});
      } else {
        io.out << "  yes\n";
        session->answer(Accept{});
      }
      save();
    }
    print_results(*session, io.out);
    return kOk;
  }

  save();
  while (!session->done()) {
    const auto& q = *session->current_question();
    io.out << style_question(session->render(q), io.color) << '\n'
           << "Is the following implication valid? [y | n <name> <attributes>]\n"
           << "> " << std::flush;
    std::string line;
    if (!std::getline(io.in, line)) {
      io.out << '\n';
      if (!o.save.empty()) {
        io.err << "input ended; session saved to " << o.save << '\n';
        return kOk;
      }
      io.err << "error: input ended before the exploration finished\n";
      return kDomainError;
    }
    std::string problem;
    const auto ans = parse_answer(line, session->working_context(), problem);
    if (!ans) {
      io.err << "invalid answer: " << problem << '\n';
      continue;
    }
    try {
      session->answer(*ans);
    } catch (const AnswerRejected& e) {
      io.err << "rejected: " << e.what() << '\n';
      continue;
    } catch (const NamingError& e) {
      io.err << "rejected: " << e.what() << '\n';
      continue;
    }
    save();
  }
  print_results(*session, io.out);
  return kOk;
}

int cmd_report_failures(const Options& o, Streams& io) {
  const auto ctx = load_context(o.context);
  const auto report = failure_report(ctx, o.failure_attr, o.depth);
  if (o.format == "json")
    io.out << report_to_json(report).dump(2) << '\n';
  else
    io.out << report_to_text(report);
  return kOk;
}

int cmd_report_features(const Options& o, Streams& io) {
  const auto ctx = load_context(o.context);
  const auto n = feature_neighbors(ctx, split_list(o.tags));
  if (o.format == "json")
    io.out << neighborhood_to_json(n).dump(2) << '\n';
  else
    io.out << neighborhood_to_text(n);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Formal concept analysis toolkit for test design and regression reports", "fca"};
  app.require_subcommand(1);
  Options o;

  auto* concepts = app.add_subcommand("concepts", "List concepts or export the concept lattice");
  concepts->add_option("--context", o.context, "Context file (.cxt, .csv, .json)")->required();
  concepts->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  concepts->add_option("--top", o.top, "Only concepts within N cover steps of the top");

  auto* base = app.add_subcommand("base", "Print the canonical implication base");
  base->add_option("--context", o.context, "Context file")->required();
  base->add_option("--format", o.format, "text, json or pict")->check(CLI::IsMember({"text", "json", "pict"}));

  auto* check = app.add_subcommand("check", "Check implications against a context");
  check->add_option("--context", o.context, "Context file")->required();
  check->add_option("--implications", o.implications, "Implications file, one 'a, b -> c' per line")->required();
  check->add_flag("--dichotomize", o.dichotomize, "Evaluate '!x' tokens against the dichotomized context");

  auto* explore = app.add_subcommand("explore", "Run attribute exploration");
  explore->add_option("--attributes", o.attributes, "Comma-separated attribute list");
  explore->add_option("--context", o.context, "Initial examples");
  explore->add_option("--resume", o.resume, "Resume a saved session");
  explore->add_option("--save", o.save, "Save the session after every answer");
  explore->add_option("--oracle", o.oracle, "Answer from a fully known context");

  auto* report = app.add_subcommand("report", "Failure and feature reports");
  report->require_subcommand(1);
  auto* failures = report->add_subcommand("failures", "Cluster failed tests by shared attributes");
  failures->add_option("--context", o.context, "Test-run context")->required();
  failures->add_option("--failure-attr", o.failure_attr, "Attribute marking a failed test")->required();
  failures->add_option("--depth", o.depth, "Levels below the top of the failed-test lattice");
  failures->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  auto* features = report->add_subcommand("features", "Feature group and its neighbours");
  features->add_option("--context", o.context, "Feature context")->required();
  features->add_option("--tags", o.tags, "Comma-separated tags")->required();
  features->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> argv_storage{"fca"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*concepts) return cmd_concepts(o, io);
    if (*base) return cmd_base(o, io);
    if (*check) return cmd_check(o, io);
    if (*explore) return cmd_explore(o, io);
    if (*failures) return cmd_report_failures(o, io);
    if (*features) return cmd_report_features(o, io);
  } catch (const UsageError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace fca::cli
