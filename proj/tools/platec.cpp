// platec: plate-model to entity-relationship compiler.
//
//   platec translate lda.bpn --hints lda.hints --emit json,dot,ddl -o out/
//   platec validate lda.bpn
//   platec corpus-check --corpus corpus/

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "platec/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Compile plate-notation Bayesian networks into entity-relationship models"};
  app.require_subcommand(1);

  const bool color = ::isatty(STDERR_FILENO) && std::getenv("PLATEC_NO_COLOR") == nullptr;

  platec::CliConfig cfg;
  cfg.color = color;
  std::string stop_after = "reduced";
  std::vector<std::string> emit{"json"};
  std::string hints;

  auto* translate = app.add_subcommand("translate", "Run the pipeline and write artifacts");
  translate->add_option("input", cfg.input, "Model (.bpn) or serialized apm/v1 / erm/v1 JSON")->required();
  translate->add_option("--hints", hints, "Equivalence hints file");
  translate->add_flag("--assume-equivalent", cfg.assume_equivalent, "Merge every duplicate relationship");
  translate->add_option("--stop-after", stop_after, "apm | structural-erm | raw-erm | reduced")
      ->check(CLI::IsMember({"apm", "structural-erm", "raw-erm", "reduced"}));
  translate->add_option("--emit", emit, "Comma-separated: json, dot, mermaid, ddl")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "dot", "mermaid", "ddl"}));
  translate->add_option("-o,--output-dir", cfg.output_dir, "Directory for artifacts");
  translate->add_flag("--strict", cfg.strict, "Exit 2 when warnings remain");

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Parse and validate a model");
  validate->add_option("input", validate_input, "Model (.bpn)")->required();

  std::string corpus = "corpus";
  bool update = false;
  auto* corpus_cmd = app.add_subcommand("corpus-check", "Re-translate fixtures and diff against goldens");
  corpus_cmd->add_option("--corpus", corpus, "Corpus root directory");
  corpus_cmd->add_flag("--update", update, "Rewrite goldens instead of comparing");

  CLI11_PARSE(app, argc, argv);

  if (*translate) {
    cfg.stop_after = *platec::parse_stage(stop_after);
    cfg.emit.clear();
    for (const auto& e : emit) cfg.emit.push_back(*platec::parse_format(e));
    if (!hints.empty()) cfg.hints = hints;
    return platec::run(cfg, std::cout, std::cerr);
  }
  if (*validate) return platec::validate_file(validate_input, std::cout, std::cerr, color);
  return platec::corpus_check(corpus, std::cout, std::cerr, update);
}
