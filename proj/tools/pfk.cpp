#include <iostream>

#include <CLI11.hpp>

#include "pfk/cli.hpp"

int main(int argc, char** argv) {
  pfk::cli::RunConfig config;
  CLI::App app{"Parafree toolkit: presentations, abelianization, Magnus and Fox calculus, "
               "mod-p Betti chains and parafree verdicts"};
  app.require_subcommand(1);

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", config.json, "JSON output"); };
  std::string input;
  auto file_arg = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", input, what)->required();
  };

  auto* parse = app.add_subcommand("parse", "Parse a .gsp file and print it back");
  file_arg(parse, ".gsp file");
  json_flag(parse);

  auto* ab = app.add_subcommand("abelianize", "Print Z^r x Z/d1 x ...");
  file_arg(ab, ".gsp file");
  json_flag(ab);

  auto* magnus = app.add_subcommand("magnus", "Truncated Magnus expansion of a word");
  file_arg(magnus, "word");
  magnus->add_option("--degree", config.degree, "truncation degree");
  magnus->add_option("--ring", config.ring, "z or f<p>");
  json_flag(magnus);

  auto* fox = app.add_subcommand("fox", "Fox Jacobian of a presentation");
  file_arg(fox, ".gsp file");
  fox->add_option("--relator", config.relator, "1-based relator index");
  json_flag(fox);

  auto* solve = app.add_subcommand("solve", "Solve omega(x1, c2, ..) = 1 in a p-quotient");
  file_arg(solve, "word in x1..xn");
  solve->add_option("--prime", config.primes, "prime p")->required();
  solve->add_option("--degree", config.degree, "truncation degree");
  solve->add_option("--assign", config.assign, "x2=<word>,x3=<word>")->delimiter(',');
  solve->add_option("--seed", config.seed, "start the iteration from a random element");
  json_flag(solve);

  auto* betti = app.add_subcommand("betti", "dim H1(G_j; F_q) / index along the chain");
  file_arg(betti, ".gsp file");
  betti->add_option("--prime", config.primes, "prime q (default 2)");
  betti->add_option("--levels", config.levels, "number of levels below G");
  betti->add_flag("--truncate", config.truncate, "stop at the index cap instead of failing");
  json_flag(betti);

  auto* check = app.add_subcommand("check-parafree", "Parafree verdict; exit 0/1/2");
  file_arg(check, ".gsp file");
  check->add_option("--prime", config.primes, "witness primes (repeatable)");
  check->add_option("--dmax", config.dmax, "witness degree bound");
  json_flag(check);

  auto* corpus = app.add_subcommand("corpus", "Check every .gsp against its .expect sidecar");
  file_arg(corpus, "directory");
  corpus->add_option("--prime", config.primes, "witness primes (repeatable)");
  corpus->add_option("--dmax", config.dmax, "witness degree bound");
  json_flag(corpus);

  for (auto* sub : app.get_subcommands({}))
    if (sub != solve) sub->add_option("--seed", config.seed, "deterministic seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pfk::cli::kError;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.inputs = {input};
  return pfk::cli::run(config, std::cout, std::cerr);
}
