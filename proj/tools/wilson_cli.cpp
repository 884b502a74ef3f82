#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wilson/wilson.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;
constexpr int kBallCap = 12;
constexpr int kPartitionCap = 8;
constexpr int kFreeMonoidCap = 12;

struct Config {
  std::string genset = "S:1";
  int radius = -1;
  std::string format;
  std::string output;
  int threads = 1;
  std::optional<std::uint64_t> budget;
  bool force = false;
  double tol = 1e-12;
  int steps = 10;
  std::uint64_t seed = 0;
  std::string convention = "at-most";
  int max_n = -1;
  int length = 8;
  bool all_pairs = false;
  std::string word;
  std::string string;
  int depth = 2;
  double lambda = 2.0;
  double eta = 0.3;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_budget(const Config &cfg) {
  if (cfg.budget) return *cfg.budget;
  if (const char *env = std::getenv("WILSON_STATE_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception &) {
    }
    throw UsageError(std::string("WILSON_STATE_BUDGET is not a positive integer: ") + env);
  }
  return 0;
}

// Ordered list of the settings that determine a command's output.
using Fields = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string header_line(const std::string &command, const Fields &fields) {
  std::string line = std::string("wilson ") + wilson_version() + " command=" + command;
  for (const auto &[k, v] : fields) line += " " + k + "=" + v;
  return line;
}

std::string with_header(const std::string &format, const std::string &command,
                        const Fields &fields, const std::string &body) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json head;
    head["version"] = wilson_version();
    head["command"] = command;
    for (const auto &[k, v] : fields) head[k] = v;
    doc["header"] = head;
    const auto parsed = nlohmann::ordered_json::parse(body);
    for (const auto &[k, v] : parsed.items()) doc[k] = v;
    return doc.dump(2) + "\n";
  }
  const std::string prefix = format == "dot" ? "// " : "# ";
  return prefix + header_line(command, fields) + "\n" + body;
}

void emit(const Config &cfg, const std::string &text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + cfg.output);
  out << text;
}

struct Outcome {
  wilson_status status;
  char *text;
};

int exit_code(wilson_status st, const std::string &input) {
  switch (st) {
    case WILSON_OK:
      return 0;
    case WILSON_VERDICT_FAILED:
      std::cerr << "verdict: " << wilson_last_error() << "\n";
      return 1;
    case WILSON_INVALID_ARGUMENT:
      std::cerr << "error: " << wilson_last_error() << "\n";
      return kExitUsage;
    case WILSON_RESOURCE_EXHAUSTED:
      std::cerr << "resource limit: " << wilson_last_error() << " (input: " << input << ")\n";
      return kExitResource;
    default:
      std::cerr << "internal error: " << wilson_last_error() << "\n";
      return kExitInternal;
  }
}

void check_cap(const Config &cfg, int value, int cap, const std::string &what) {
  if (value > cap && !cfg.force)
    throw UsageError(what + " " + std::to_string(value) + " exceeds the desk-scale cap " +
                     std::to_string(cap) + " (use --force)");
}

void check_format(const std::string &format, std::initializer_list<const char *> allowed) {
  for (const char *a : allowed)
    if (format == a) return;
  std::string list;
  for (const char *a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("format '" + format + "' not supported here (expected " + list + ")");
}

wilson_format to_format(const std::string &f) {
  if (f == "json") return WILSON_FORMAT_JSON;
  if (f == "dot") return WILSON_FORMAT_DOT;
  if (f == "text") return WILSON_FORMAT_TEXT;
  return WILSON_FORMAT_CSV;
}

int run(const std::string &command, Config cfg) {
  wilson_context *ctx = nullptr;
  const std::uint64_t budget = resolve_budget(cfg);
  if (wilson_context_create(budget, &ctx) != WILSON_OK) return exit_code(WILSON_INTERNAL_ERROR, "");
  std::unique_ptr<wilson_context, void (*)(wilson_context *)> guard(ctx, wilson_context_destroy);

  Fields fields;
  const std::string budget_str = std::to_string(wilson_context_state_budget(ctx));
  char *text = nullptr;
  wilson_status st = WILSON_OK;
  std::string input;
  std::string format = cfg.format;

  if (command == "verify-all") {
    if (format.empty()) format = "json";
    check_format(format, {"json"});
    st = wilson_verify_all(ctx, cfg.threads, &text);
  } else if (command == "catalog") {
    if (format.empty()) format = "json";
    check_format(format, {"json"});
    st = wilson_catalog(ctx, &text);
  } else if (command == "ball") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv", "dot"});
    if (cfg.radius < 0) cfg.radius = 3;
    check_cap(cfg, cfg.radius, kBallCap, "radius");
    fields = {{"genset", cfg.genset}, {"radius", std::to_string(cfg.radius)}, {"format", format}};
    input = cfg.genset + " radius " + std::to_string(cfg.radius);
    st = wilson_ball(ctx, cfg.genset.c_str(), cfg.radius, to_format(format), cfg.threads, &text);
  } else if (command == "growth") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv"});
    if (cfg.radius < 0) cfg.radius = 8;
    check_cap(cfg, cfg.radius, kBallCap, "radius");
    if (cfg.convention != "at-most" && cfg.convention != "exactly")
      throw UsageError("convention must be at-most or exactly");
    fields = {{"genset", cfg.genset},
              {"radius", std::to_string(cfg.radius)},
              {"convention", cfg.convention}};
    input = cfg.genset + " radius " + std::to_string(cfg.radius);
    st = wilson_growth(ctx, cfg.genset.c_str(), cfg.radius,
                       cfg.convention == "exactly" ? WILSON_BALL_EXACTLY : WILSON_BALL_AT_MOST,
                       cfg.threads, &text);
  } else if (command == "delta-stats") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv"});
    if (cfg.genset == "S:1" && cfg.radius < 0) cfg.genset = "S:2";
    if (cfg.radius < 0) cfg.radius = 10;
    check_cap(cfg, cfg.radius, kBallCap, "radius");
    fields = {{"genset", cfg.genset}, {"radius", std::to_string(cfg.radius)}, {"eta", fmt(cfg.eta)}};
    input = cfg.genset + " radius " + std::to_string(cfg.radius);
    st = wilson_delta_stats(ctx, cfg.genset.c_str(), cfg.radius, cfg.eta, cfg.threads, &text);
  } else if (command == "lemma30") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv"});
    if (cfg.max_n < 0) cfg.max_n = 40;
    fields = {{"max_n", std::to_string(cfg.max_n)}};
    st = wilson_lemma30(ctx, cfg.max_n, &text);
  } else if (command == "lambda") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv"});
    fields = {{"steps", std::to_string(cfg.steps)}, {"tol", fmt(cfg.tol)}};
    st = wilson_lambda(ctx, cfg.steps, cfg.tol, &text);
  } else if (command == "curves") {
    if (format.empty()) format = "csv";
    check_format(format, {"csv"});
    fields = {{"lambda", fmt(cfg.lambda)}};
    st = wilson_curves(ctx, cfg.lambda, &text);
  } else if (command == "free-monoid") {
    if (format.empty()) format = "json";
    check_format(format, {"json"});
    check_cap(cfg, cfg.length, kFreeMonoidCap, "length");
    fields = {{"length", std::to_string(cfg.length)}, {"all_pairs", cfg.all_pairs ? "true" : "false"}};
    input = "length " + std::to_string(cfg.length);
    st = wilson_free_monoid(ctx, cfg.length, cfg.all_pairs ? 1 : 0, &text);
  } else if (command == "local-iso") {
    if (format.empty()) format = "json";
    check_format(format, {"json"});
    if (cfg.radius < 0) cfg.radius = 3;
    if (cfg.max_n < 0) cfg.max_n = 4;
    check_cap(cfg, cfg.radius, kPartitionCap, "radius");
    fields = {{"radius", std::to_string(cfg.radius)}, {"max_n", std::to_string(cfg.max_n)}};
    input = "radius " + std::to_string(cfg.radius);
    st = wilson_local_iso(ctx, cfg.radius, cfg.max_n, &text);
  } else if (command == "act") {
    if (format.empty()) format = "text";
    check_format(format, {"text"});
    fields = {{"genset", cfg.genset}, {"word", "\"" + cfg.word + "\""}, {"string", cfg.string}};
    input = "\"" + cfg.word + "\" on " + cfg.string;
    st = wilson_act(ctx, cfg.genset.c_str(), cfg.word.c_str(), cfg.string.c_str(), &text);
  } else if (command == "portrait") {
    if (format.empty()) format = "text";
    check_format(format, {"text", "json"});
    fields = {{"genset", cfg.genset}, {"word", "\"" + cfg.word + "\""},
              {"depth", std::to_string(cfg.depth)}, {"format", format}};
    input = "\"" + cfg.word + "\"";
    st = wilson_portrait(ctx, cfg.genset.c_str(), cfg.word.c_str(), cfg.depth, to_format(format), &text);
  }

  if (text) {
    std::string body(text);
    wilson_string_free(text);
    if (command == "act") body += "\n";
    fields.emplace_back("budget", budget_str);
    fields.emplace_back("seed", std::to_string(cfg.seed));
    emit(cfg, with_header(format, command, fields, body));
  }
  return exit_code(st, input);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Computations in the groups W and V acting on the 7-ary tree"};
  app.set_version_flag("--version", std::string(wilson_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::uint64_t budget = 0;
  auto *budget_opt = app.add_option("--budget", budget, "State budget for identity tests")
                         ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
  app.add_option("--format", cfg.format, "csv, json, dot or text")
      ->check(CLI::IsMember({"csv", "json", "dot", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads for ball enumeration")
      ->check(CLI::Range(1, 256));
  app.add_option("--seed", cfg.seed, "Recorded in the header; all computations are deterministic");
  app.add_flag("--force", cfg.force, "Allow sizes beyond the desk-scale caps");

  struct Sub {
    const char *name;
    const char *help;
  };
  const std::vector<Sub> subs{
      {"verify-all", "Run every check and print a JSON verdict report"},
      {"catalog", "Check the identity catalog"},
      {"ball", "Enumerate a Cayley ball (CSV or DOT)"},
      {"growth", "Ball sizes and growth estimates (CSV)"},
      {"delta-stats", "Delta-occurrence counts of ball geodesics against the finite bound"},
      {"lemma30", "Counts of Delta-free reduced words (CSV)"},
      {"lambda", "The Lambda_n sequence (CSV)"},
      {"curves", "Both sides of the crossing equation on a grid (CSV)"},
      {"free-monoid", "Free-monoid witness check (JSON)"},
      {"local-iso", "Least n with matching word partitions (JSON)"},
      {"act", "Act by a word on a string of labels"},
      {"portrait", "Portrait of a word to a given depth"},
  };
  for (const Sub &s : subs) {
    CLI::App *sub = app.add_subcommand(s.name, s.help);
    const std::string name = s.name;
    if (name == "ball" || name == "growth" || name == "delta-stats" || name == "act" ||
        name == "portrait")
      sub->add_option("-g,--genset", cfg.genset, "base, S:n, tilde or free");
    if (name == "ball" || name == "growth" || name == "delta-stats" || name == "local-iso")
      sub->add_option("-r,--radius", cfg.radius, "Radius")->check(CLI::NonNegativeNumber);
    if (name == "growth")
      sub->add_option("--convention", cfg.convention, "at-most or exactly")
          ->check(CLI::IsMember({"at-most", "exactly"}));
    if (name == "delta-stats")
      sub->add_option("--eta", cfg.eta, "Occurrence density threshold")->check(CLI::Range(0.0, 1.0));
    if (name == "lemma30" || name == "local-iso")
      sub->add_option("--max-n", cfg.max_n, "Largest n")->check(CLI::PositiveNumber);
    if (name == "lambda") {
      sub->add_option("--steps", cfg.steps, "Number of terms")->check(CLI::PositiveNumber);
      sub->add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
    }
    if (name == "curves") sub->add_option("--lambda", cfg.lambda, "Growth rate lambda");
    if (name == "free-monoid") {
      sub->add_option("-L,--length", cfg.length, "Word length")->check(CLI::PositiveNumber);
      sub->add_flag("--all-pairs", cfg.all_pairs, "Every ordered pair of distinct swappers");
    }
    if (name == "act" || name == "portrait")
      sub->add_option("-w,--word", cfg.word, "Symbols separated by spaces")->required();
    if (name == "act") sub->add_option("-s,--string", cfg.string, "Labels 1..7")->required();
    if (name == "portrait")
      sub->add_option("--depth", cfg.depth, "Levels below the root")->check(CLI::Range(0, 6));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (budget_opt->count() > 0) cfg.budget = budget;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, cfg);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
