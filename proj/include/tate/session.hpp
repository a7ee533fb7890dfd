// Session files, the batch command runner behind tatecli, and witness re-verification.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tate/efpd.hpp"
#include "tate/io.hpp"

namespace tate::cli {

using io::json;

enum ExitCode { ok = 0, precondition = 2, budget = 3, verification = 4 };

struct Budgets {
  int resolution = 8;
  int power = 32;
  int degree_window = 6;
  int threads = 1;
};

/// Named rings, ideals, modules, complexes and filtrations plus a command list.
/// Objects are built on first use; every object of one ring shares one RingPtr.
class Session {
 public:
  static Session from_json(const json& j);
  static Session from_file(const std::string& path);

  Budgets budgets;
  std::string out_dir = ".";
  json commands = json::array();

  RingPtr ring(const std::string& name) const;
  /// the ring named by args["ring"], else the only ring, else "R"
  RingPtr default_ring(const json& args) const;
  /// name of a session ideal or an inline list of polynomials
  std::pair<RingPtr, Ideal> ideal(const json& ref, const json& args) const;
  /// null ref: R^1 over fallback
  FPModule module(const json& ref, const RingPtr& fallback) const;
  std::pair<RingPtr, Complex> complex(const json& ref, const json& args) const;
  std::pair<RingPtr, FiltrationSpec> filtration(const json& ref, const json& args) const;

 private:
  json rings_ = json::object(), ideals_ = json::object(), modules_ = json::object(),
       complexes_ = json::object(), filtrations_ = json::object();
  mutable std::map<std::string, RingPtr> ring_cache_;
  RingPtr ring_of(const json& spec, const json& args) const;
};

struct Outcome {
  int exit_code = ok;
  std::string file;     // witness written, empty when none
  std::string summary;  // one line
  json error;           // null unless exit_code != 0 and nothing was written
};

struct RunOptions {
  bool verify = false;
  std::string file_name;  // default: slug of the command
};

/// One command; args hold the command's parameters. Never throws for mathematical errors.
Outcome run(const Session& s, const std::string& command, const json& args, const RunOptions& opt = {});
/// Every command of the session in order, plus manifest.json in out_dir.
std::vector<Outcome> run_all(const Session& s, bool verify = false);

struct ClaimResult {
  std::string kind;
  bool pass = false;
  std::string detail;
};

/// Re-checks every claim of a witness file from its contents alone.
std::vector<ClaimResult> verify_witness(const json& witness);
Outcome verify_file(const std::string& path);

std::vector<std::string> command_names();
std::string slug(const std::string& command);
int exit_code_of(const std::exception& e);
std::string error_kind(int code);

}  // namespace tate::cli
