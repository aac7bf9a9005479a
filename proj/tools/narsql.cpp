// Command-line front end: narrate SQL, translate requests to SQL, run an
// interactive session over a fixture database and report corpus accuracy.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "narsql/corpus.hpp"
#include "narsql/feedback.hpp"
#include "narsql/generator.hpp"
#include "narsql/narrator.hpp"
#include "narsql/nested_parser.hpp"
#include "narsql/nl2sql.hpp"
#include "narsql/recognizer.hpp"
#include "narsql/storage.hpp"
#include "narsql/text.hpp"

using namespace narsql;

namespace {

// Thrown for bad user input that no library error covers.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void print_tokens(const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) std::cout << "  " << i + 1 << ". " << tokens[i] << "\n";
}

void print_rows(const ExecResult& r) {
  if (r.kind != ResultKind::Rows) return;
  std::cout << text::join(r.header, " | ") << "\n";
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(is_null(v) ? "NULL" : to_string(v));
    std::cout << text::join(cells, " | ") << "\n";
  }
}

struct NarrateArgs {
  std::string style = "all";
  bool tokens = false;
  std::string input = "-";
};

int narrate(const NarrateArgs& args) {
  const Narrator narrator;
  int status = 0;
  for (const auto& sql : split_statements(read_input(args.input))) {
    try {
      const auto n = narrator.narrate(classify(sql));
      std::cout << n.text << "\n";
      if (args.tokens) print_tokens(n.token_index);
    } catch (const NestedDetected&) {
      const auto q = parse_nested(sql);
      std::vector<Narration> all;
      if (args.style == "all") {
        all = narrator.narrate_all(q);
      } else {
        const auto style = args.style == "outer-to-inner"   ? NarrationStyle::OuterToInner
                           : args.style == "inner-to-outer" ? NarrationStyle::InnerToOuter
                                                            : NarrationStyle::CoJoined;
        all = {narrator.narrate(q, style)};
      }
      for (const auto& n : all) {
        std::cout << to_string(n.style) << ": " << n.text << "\n";
        if (args.tokens) print_tokens(n.token_index);
      }
    } catch (const std::runtime_error& e) {
      std::cerr << sql << "\n  " << e.what() << "\n";
      status = 1;
    }
  }
  return status;
}

Translator make_translator(const std::string& schema, const std::string& lexicon) {
  return Translator(lexicon.empty() ? Lexicon::builtin() : Lexicon::load(lexicon), Schema::load(schema));
}

struct SynthesizeArgs {
  std::string schema;
  std::string lexicon;
  bool execute = false;
  std::string fixture;
  std::string dump;
  bool polish = false;
  std::string request;
};

int synthesize(const SynthesizeArgs& args) {
  const auto tr = make_translator(args.schema, args.lexicon);
  SqlStatement stmt;
  try {
    stmt = tr.translate(args.request);
  } catch (const SynthesisError& e) {
    std::cerr << clarify(e, tr.schema()).text << "\n";
    return 1;
  }
  std::cout << render(stmt) << "\n";
  if (!args.execute) return 0;
  if (args.fixture.empty()) throw InputError("--execute needs --fixture");
  auto db = load_database(args.schema, args.fixture);
  const auto result = execute(stmt, db);
  print_rows(result);
  std::cout << feedback_for(stmt, result, {args.polish}).text << "\n";
  if (!args.dump.empty()) dump(db, args.dump);
  return 0;
}

struct ReplArgs {
  std::string schema;
  std::string lexicon;
  std::string fixture;
  std::string dump;
  bool polish = false;
};

// Runs SQL typed directly at the prompt.
void run_sql(const std::string& sql, Database& db, bool polish) {
  try {
    const auto stmt = classify(sql);
    const auto result = execute(stmt, db);
    print_rows(result);
    std::cout << feedback_for(stmt, result, {polish}).text << "\n";
  } catch (const NestedDetected&) {
    const auto q = parse_nested(sql);
    const auto result = execute(q, db);
    print_rows(result);
    std::cout << feedback_for(q, result, {polish}).text << "\n";
  }
}

int repl(const ReplArgs& args) {
  const auto tr = make_translator(args.schema, args.lexicon);
  auto db = args.fixture.empty() ? Database(tr.schema()) : load_database(args.schema, args.fixture);
  const FeedbackGenerator feedback(Vocabulary::builtin(), {args.polish});
  std::string line;
  const auto prompt = [] { std::cout << "> " << std::flush; };
  for (prompt(); std::getline(std::cin, line); prompt()) {
    line = text::trim(line);
    if (line.empty()) continue;
    if (line == "quit" || line == "exit") break;
    try {
      if (line.back() == ';') {
        run_sql(line, db, args.polish);
        continue;
      }
      auto pending = tr.normalize(line);
      std::optional<SqlStatement> stmt;
      try {
        stmt = tr.synthesize(pending);
      } catch (const SynthesisError& e) {
        std::cout << feedback.clarify(e, tr.schema()).text << "\n";
        prompt();
        std::string answer;
        if (!std::getline(std::cin, answer)) break;
        try {
          stmt = tr.synthesize(tr.merge(pending, answer));
        } catch (const SynthesisError&) {
          std::cout << feedback.clarify(MissingKeywords(), tr.schema()).text << "\n";
          continue;
        }
      }
      std::cout << render(*stmt) << "\n";
      const auto result = execute(*stmt, db);
      print_rows(result);
      std::cout << feedback.report(*stmt, result).text << "\n";
    } catch (const std::runtime_error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  std::cout << "\n";
  if (!args.dump.empty()) dump(db, args.dump);
  return 0;
}

struct EvalArgs {
  std::string mode = "narrate";
  std::string corpus;
  std::string schema;
  std::string lexicon;
  std::string curation;
  bool json = false;
};

int eval(const EvalArgs& args) {
  Report report;
  if (args.mode == "narrate") {
    report = accuracy_report(classify_batch(split_statements(read_input(args.corpus))));
  } else {
    if (args.schema.empty()) throw InputError("--mode synthesize needs --schema");
    auto pairs = parse_pairs(read_input(args.corpus));
    if (!args.curation.empty()) pairs = exclude(pairs, load_curation(args.curation));
    report = accuracy_report(evaluate_pairs(pairs, make_translator(args.schema, args.lexicon)));
  }
  std::cout << (args.json ? to_json(report) : to_text(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrate SQL statements and translate English requests into SQL"};
  app.require_subcommand(1);

  NarrateArgs narrate_args;
  auto* narrate_cmd = app.add_subcommand("narrate", "Describe SQL statements in English");
  narrate_cmd->add_option("--style", narrate_args.style, "Nested query style")
      ->check(CLI::IsMember({"all", "outer-to-inner", "inner-to-outer", "co-joined"}));
  narrate_cmd->add_flag("--tokens", narrate_args.tokens, "Print the numbered token index");
  narrate_cmd->add_option("input", narrate_args.input, "SQL file, or - for standard input");

  SynthesizeArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synthesize", "Translate an English request into SQL");
  synth_cmd->add_option("--schema", synth_args.schema, "Schema file")->required()->check(CLI::ExistingFile);
  synth_cmd->add_option("--lexicon", synth_args.lexicon, "Lexicon file (built-in when omitted)")
      ->check(CLI::ExistingFile);
  synth_cmd->add_flag("--execute", synth_args.execute, "Run the statement against the fixture");
  synth_cmd->add_option("--fixture", synth_args.fixture, "Fixture directory of CSV files")
      ->check(CLI::ExistingDirectory);
  synth_cmd->add_option("--dump", synth_args.dump, "Write the resulting tables as CSV here");
  synth_cmd->add_flag("--polish", synth_args.polish, "Grammatical feedback wording");
  synth_cmd->add_option("request", synth_args.request, "The request")->required();

  ReplArgs repl_args;
  auto* repl_cmd = app.add_subcommand("repl", "Interactive requests with clarification prompts");
  repl_cmd->add_option("--schema", repl_args.schema, "Schema file")->required()->check(CLI::ExistingFile);
  repl_cmd->add_option("--lexicon", repl_args.lexicon, "Lexicon file (built-in when omitted)")
      ->check(CLI::ExistingFile);
  repl_cmd->add_option("--fixture", repl_args.fixture, "Fixture directory of CSV files")
      ->check(CLI::ExistingDirectory);
  repl_cmd->add_option("--dump", repl_args.dump, "Write the tables as CSV here on exit");
  repl_cmd->add_flag("--polish", repl_args.polish, "Grammatical feedback wording");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy report over a corpus");
  eval_cmd->add_option("--mode", eval_args.mode, "narrate or synthesize")
      ->check(CLI::IsMember({"narrate", "synthesize"}));
  eval_cmd->add_option("--corpus", eval_args.corpus, "SQL corpus or JSON pair file, - for standard input")
      ->required();
  eval_cmd->add_option("--schema", eval_args.schema, "Schema file for synthesize mode")->check(CLI::ExistingFile);
  eval_cmd->add_option("--lexicon", eval_args.lexicon, "Lexicon file (built-in when omitted)")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--curation", eval_args.curation, "Items to leave out of synthesize mode")
      ->check(CLI::ExistingFile);
  eval_cmd->add_flag("--json", eval_args.json, "JSON report");

  std::size_t gen_count = 500;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Print generated simple statements, one per line");
  gen_cmd->add_option("--count", gen_count, "Number of statements");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*narrate_cmd) return narrate(narrate_args);
    if (*synth_cmd) return synthesize(synth_args);
    if (*repl_cmd) return repl(repl_args);
    if (*eval_cmd) return eval(eval_args);
    for (const auto& s : Generator(gen_seed).statement_corpus(gen_count)) std::cout << s << "\n";
    return 0;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
