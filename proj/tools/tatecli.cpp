// tatecli: batch front end over session files.
#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

#include "tate/session.hpp"

using tate::cli::json;

namespace {

// "3" -> 3, "[1,2]" -> [1,2], anything else stays a string
json parse_value(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.is_number() || j.is_array() || j.is_boolean() || j.is_object()) return j;
  } catch (const json::exception&) {
  }
  return text;
}

void report(const std::string& command, const tate::cli::Outcome& o) {
  std::cout << command << ": " << o.summary;
  if (!o.file.empty()) std::cout << " -> " << o.file;
  std::cout << "\n";
  if (!o.error.is_null()) std::cerr << o.error.dump() << "\n";
}

int fail(int code, const std::string& kind, const std::string& message) {
  json e = {{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << e.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul, Tate and reducer computations over session files"};
  std::vector<std::string> words;
  std::string session_path, out_dir;
  int budget_resolution = 0, budget_power = 0, degree_window = -1, threads = 1;
  bool verify = false;
  std::map<std::string, std::string> named;
  std::vector<std::string> extra;

  app.add_option("command", words, "command words, e.g. 'phi construct', or 'verify FILE...'");
  app.add_option("--session", session_path, "session file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--budget-resolution", budget_resolution, "resolution length budget")->check(CLI::PositiveNumber);
  app.add_option("--budget-power", budget_power, "power/exponent search budget")->check(CLI::PositiveNumber);
  app.add_option("--degree-window", degree_window, "top degree for graded dimensions")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", threads, "worker count (commands run in order)")->check(CLI::PositiveNumber);
  app.add_flag("--verify", verify, "re-check every emitted witness");
  for (const char* key : {"r", "i", "k", "n", "K", "mode", "bound", "nmax", "depth", "exponent", "elements",
                          "ideal", "module", "complex", "filtration", "J", "ring", "name"})
    app.add_option(std::string("--") + key, named[key], std::string("command argument '") + key + "'");
  app.add_option("--arg", extra, "extra command argument key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : tate::cli::precondition;
  }

  if (!words.empty() && words.front() == "verify") {
    if (words.size() < 2) return fail(tate::cli::precondition, "parse", "verify needs witness files");
    int rc = 0;
    for (std::size_t k = 1; k < words.size(); ++k) {
      auto o = tate::cli::verify_file(words[k]);
      std::cout << "verify " << words[k] << ": " << o.summary << "\n";
      if (!o.error.is_null()) std::cerr << o.error.dump() << "\n";
      rc = std::max(rc, o.exit_code);
    }
    return rc;
  }

  if (session_path.empty()) return fail(tate::cli::precondition, "parse", "--session is required");
  tate::cli::Session s;
  try {
    s = tate::cli::Session::from_file(session_path);
  } catch (const std::exception& e) {
    return fail(tate::cli::exit_code_of(e), "parse", e.what());
  }
  if (!out_dir.empty()) s.out_dir = out_dir;
  if (budget_resolution > 0) s.budgets.resolution = budget_resolution;
  if (budget_power > 0) s.budgets.power = budget_power;
  if (degree_window >= 0) s.budgets.degree_window = degree_window;
  s.budgets.threads = threads;

  if (words.empty()) {
    int rc = 0;
    auto outs = tate::cli::run_all(s, verify);
    for (std::size_t k = 0; k < outs.size(); ++k) {
      report(s.commands[k]["command"].get<std::string>(), outs[k]);
      rc = std::max(rc, outs[k].exit_code);
    }
    return rc;
  }

  std::string command;
  for (const auto& w : words) command += (command.empty() ? "" : " ") + w;
  json args = json::object();
  for (const auto& [key, value] : named)
    if (!value.empty() && key != "name") args[key] = parse_value(value);
  for (const auto& kv : extra) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) return fail(tate::cli::precondition, "parse", "--arg expects key=value");
    args[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
  }
  tate::cli::RunOptions opt;
  opt.verify = verify;
  opt.file_name = named["name"];
  auto o = tate::cli::run(s, command, args, opt);
  report(command, o);
  return o.exit_code;
}
