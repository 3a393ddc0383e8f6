// biasbreaker command-line front end.
//
//   play     run one match and print the transcript
//   verify   run a verification suite (built-in table or a JSON file)
//   demo     counterexample / indistinguishable walkthroughs
//   gen      write a random permissible game file
//   inspect  print a game file with its validation report

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "biasbreaker/arena.hpp"
#include "biasbreaker/game_io.hpp"
#include "biasbreaker/suite.hpp"

namespace bb = biasbreaker;

namespace {

bb::GameMatrix resolve_game(const std::string& source, std::uint32_t seed,
                            bool allow_nonpermissible = false) {
  if (source == "rps" || source == "m_star" || source == "m_lex")
    return bb::builtin_game(source);
  if (source.rfind("random:", 0) == 0) {
    const int n = std::stoi(source.substr(7));
    return bb::generate_permissible(n, seed);
  }
  return bb::load_game_file(source, allow_nonpermissible);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write: " + out_path);
  out << text;
}

int cmd_play(const std::string& game_src, const std::string& opp_spec,
             const std::string& ex_spec, int rounds, std::uint32_t seed,
             const std::string& format, const std::string& out_path) {
  bb::GameMatrix game = resolve_game(game_src, seed, true);
  bb::OpponentSpec opp = bb::parse_opponent(opp_spec, game.n());
  std::unique_ptr<bb::Exploiter> ex =
      bb::make_exploiter(ex_spec, game, rounds);
  bb::MatchTranscript tr = bb::run_match(game, opp, *ex, rounds);
  write_output(format == "csv" ? bb::transcript_to_csv(tr)
                               : bb::transcript_to_text(tr, game),
               out_path);
  if (tr.aborted) {
    std::cerr << "match aborted: " << tr.fault << "\n";
    return 2;
  }
  return 0;
}

struct FileSuiteRow {
  std::string name;
  std::string game;
  std::string opponent;
  std::string exploiter;
  int rounds = 100;
  std::uint32_t seed = 0;
  std::vector<bb::BoundSpec> bounds;
};

std::vector<FileSuiteRow> load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read suite file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed suite file: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("suite file must be a list");
  std::vector<FileSuiteRow> rows;
  for (const auto& r : doc) {
    FileSuiteRow row;
    row.name = r.value("name", "row" + std::to_string(rows.size()));
    row.game = r.at("game").get<std::string>();
    row.opponent = r.at("opponent").get<std::string>();
    row.exploiter = r.at("exploiter").get<std::string>();
    row.rounds = r.value("rounds", 100);
    row.seed = r.value("seed", 0u);
    if (r.contains("bounds"))
      for (const auto& b : r["bounds"]) {
        bb::BoundSpec spec;
        const std::string kind = b.at("kind").get<std::string>();
        if (kind == "suffix_all_wins")
          spec.kind = bb::BoundSpec::Kind::kSuffixAllWins;
        else if (kind == "total_nonwins_le")
          spec.kind = bb::BoundSpec::Kind::kTotalNonwinsLe;
        else if (kind == "phase_coupled")
          spec.kind = bb::BoundSpec::Kind::kPhaseCoupled;
        else
          throw std::runtime_error("unknown bound kind: " + kind);
        spec.value = b.value("value", 0);
        spec.phase_tag = b.value("phase", "predict");
        row.bounds.push_back(std::move(spec));
      }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_verify(const std::string& suite, int trials, std::uint32_t seed,
               const std::string& n_range) {
  if (suite == "default") {
    bb::SuiteOptions opt;
    opt.trials = trials;
    opt.base_seed = seed;
    if (!n_range.empty()) {
      const auto dots = n_range.find("..");
      if (dots == std::string::npos)
        throw std::runtime_error("--n-range expects A..B");
      opt.n_lo = std::stoi(n_range.substr(0, dots));
      opt.n_hi = std::stoi(n_range.substr(dots + 2));
    }
    const std::vector<bb::ItemResult> results = bb::run_default_suite(opt);
    bool all = true;
    for (const bb::ItemResult& r : results) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id
                << ": " << r.name;
      if (!r.pass) std::cout << " -- " << r.detail;
      std::cout << "\n";
      all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "criteria FAILED") << "\n";
    return all ? 0 : 1;
  }
  const std::vector<FileSuiteRow> rows = load_suite_file(suite);
  bool all = true;
  for (const FileSuiteRow& row : rows) {
    bool pass = true;
    std::string detail;
    try {
      bb::GameMatrix game = resolve_game(row.game, row.seed, true);
      bb::OpponentSpec opp = bb::parse_opponent(row.opponent, game.n());
      std::unique_ptr<bb::Exploiter> ex =
          bb::make_exploiter(row.exploiter, game, row.rounds);
      bb::MatchTranscript tr = bb::run_match(game, opp, *ex, row.rounds);
      if (tr.aborted) {
        pass = false;
        detail = tr.fault;
      }
      for (const bb::BoundSpec& b : row.bounds) {
        bb::BoundReport rep = bb::verify_bound(tr, b);
        if (!rep.pass) {
          pass = false;
          detail = rep.detail;
          std::ofstream dump("verify_fail_" + row.name + ".csv");
          dump << bb::transcript_to_csv(tr);
          break;
        }
      }
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << row.name;
    if (!pass) std::cout << " -- " << detail;
    std::cout << "\n";
    all = all && pass;
  }
  std::cout << (all ? "all rows passed" : "rows FAILED") << "\n";
  return all ? 0 : 1;
}

void print_stream_row(const std::string& label, const std::vector<int>& vals,
                      const bb::GameMatrix& g, bool as_actions) {
  std::cout << label;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    std::cout << (i ? "," : " ");
    if (as_actions)
      std::cout << g.action_label(vals[i]);
    else
      std::cout << std::showpos << vals[i] << std::noshowpos;
  }
  std::cout << "\n";
}

int cmd_demo(const std::string& which, int rounds, std::uint32_t seed) {
  if (which == "counterexample") {
    bb::MatchTranscript tr = bb::run_counterexample(rounds);
    bb::GameMatrix truth = bb::m_star_game();
    std::vector<int> opp, ours, anticipated, actual;
    for (const bb::TranscriptRow& r : tr.rows) {
      opp.push_back(r.theirs);
      ours.push_back(r.ours);
      anticipated.push_back(1);  // a hypothesis best response always "wins"
      actual.push_back(r.payoff);
    }
    std::cout << "A consistent-looking game matrix is not enough: the agent "
                 "below predicts every move\nand plays what its hypothesis "
                 "calls a best response, yet never wins a round.\n\n";
    print_stream_row("opponent:   ", opp, truth, true);
    print_stream_row("our play:   ", ours, truth, true);
    print_stream_row("anticipated:", anticipated, truth, false);
    print_stream_row("actual:     ", actual, truth, false);
    const bool cycle_holds =
        bb::transcript_to_csv(tr) == bb::counterexample_expected_csv(rounds);
    std::cout << "\npayoff cycle 0,-1,-1 "
              << (cycle_holds ? "confirmed" : "NOT reproduced") << "\n";
    return cycle_holds ? 0 : 1;
  }
  if (which == "indistinguishable") {
    bb::GameMatrix rps = bb::rps_game();
    bb::GameMatrix rev = rps.reversed();
    bb::ActionOrdering omega = bb::ActionOrdering::random(3, seed ^ 0x9E3779B9u);
    bb::ScriptedExploiter a =
        bb::ScriptedExploiter::random_script(3, rounds, seed * 31 + 5);
    bb::ScriptedExploiter b(a.script());
    bb::OpponentSpec best{bb::OpponentKind::kMyopicBest, bb::TiePolicy::kShift,
                          std::nullopt, omega};
    bb::OpponentSpec worst{bb::OpponentKind::kMyopicWorst,
                           bb::TiePolicy::kShift, std::nullopt, omega};
    bb::MatchTranscript t1 = bb::run_match(rps, best, a, rounds);
    bb::MatchTranscript t2 = bb::run_match(rev, worst, b, rounds);
    std::vector<int> s1, s2;
    bool equal = true;
    for (int t = 0; t < rounds; ++t) {
      s1.push_back(t1.rows[t].theirs);
      s2.push_back(t2.rows[t].theirs);
      equal = equal && s1.back() == s2.back();
    }
    print_stream_row("best responder, standard game: ", s1, rps, true);
    print_stream_row("worst responder, reversed game:", s2, rps, true);
    std::cout << "\nstreams " << (equal ? "identical" : "DIFFER")
              << ": no play can tell these opponents apart, and a best\n"
                 "response against one is a worst response against the "
                 "other.\n";
    return equal ? 0 : 1;
  }
  std::cerr << "unknown demo: " << which << "\n";
  return 1;
}

int cmd_gen(int n, std::uint32_t seed, const std::string& out_path) {
  bb::GameMatrix g = bb::generate_permissible(n, seed);
  write_output(bb::serialize_game(g), out_path);
  return 0;
}

int cmd_inspect(const std::string& source, std::uint32_t seed) {
  bb::GameMatrix g = resolve_game(source, seed, true);
  std::cout << "n = " << g.n() << "\n\npayoffs:\n";
  for (int i = 0; i < g.n(); ++i) {
    std::cout << "  " << std::setw(3) << g.action_label(i) << " |";
    for (int j = 0; j < g.n(); ++j)
      std::cout << std::setw(3) << g.payoff(i, j);
    std::cout << "\n";
  }
  bb::ValidationReport rep = g.validate_permissible();
  std::cout << "\nvalidation: " << (rep.ok() ? "pass" : "FAIL") << "\n";
  for (const bb::ValidationIssue& issue : rep.issues)
    std::cout << "  - " << issue.what << "\n";
  std::cout << "\nper action:\n";
  for (int i = 0; i < g.n(); ++i) {
    std::cout << "  " << g.action_label(i) << " beats:";
    for (int j = 0; j < g.n(); ++j)
      if (g.payoff(i, j) == 1) std::cout << " " << g.action_label(j);
    std::cout << "  loses to:";
    for (int j = 0; j < g.n(); ++j)
      if (g.payoff(i, j) == -1) std::cout << " " << g.action_label(j);
    std::cout << "\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"payoff-blind exploitation engine for repeated matrix games"};
  app.require_subcommand(1);

  std::string game_src = "rps", opp_spec = "mbr", ex_spec = "beat-mbr";
  std::string format = "text", out_path, suite = "default", n_range;
  std::string demo_name, inspect_src;
  int rounds = 100, trials = 20, gen_n = 3;
  std::uint32_t seed = 0;

  CLI::App* play = app.add_subcommand("play", "run a single match");
  play->add_option("--game", game_src,
                   "rps|m_star|m_lex|random:N|<path>")->capture_default_str();
  play->add_option("--opponent", opp_spec, "opponent spec")
      ->capture_default_str();
  play->add_option("--exploiter", ex_spec, "exploiter spec")
      ->capture_default_str();
  play->add_option("--rounds", rounds)->capture_default_str();
  play->add_option("--seed", seed)->capture_default_str();
  play->add_option("--format", format, "text|csv")->capture_default_str();
  play->add_option("--out", out_path, "write transcript to a file");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "default or a JSON suite file")
      ->capture_default_str();
  verify->add_option("--trials", trials, "seeds per game size")
      ->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--n-range", n_range, "restrict sizes, e.g. 3..4");

  CLI::App* demo = app.add_subcommand("demo", "narrated demonstrations");
  demo->add_option("name", demo_name, "counterexample|indistinguishable")
      ->required();
  demo->add_option("--rounds", rounds)->capture_default_str();
  demo->add_option("--seed", seed)->capture_default_str();

  CLI::App* gen = app.add_subcommand("gen", "generate a permissible game");
  gen->add_option("--n", gen_n, "action count")->required();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out_path, "output path (stdout if omitted)");

  CLI::App* inspect = app.add_subcommand("inspect", "show and validate a game");
  inspect->add_option("--game", inspect_src, "builtin name or path")
      ->required();
  inspect->add_option("--seed", seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (play->parsed())
      return cmd_play(game_src, opp_spec, ex_spec, rounds, seed, format,
                      out_path);
    if (verify->parsed()) return cmd_verify(suite, trials, seed, n_range);
    if (demo->parsed()) {
      const int r = demo->count("--rounds") ? rounds : 60;
      return cmd_demo(demo_name, r, seed);
    }
    if (gen->parsed()) return cmd_gen(gen_n, seed, out_path);
    if (inspect->parsed()) return cmd_inspect(inspect_src, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
