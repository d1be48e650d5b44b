// Command-line front end.  Three subcommands:
//
//   wps-info   well-formedness and degree arithmetic for a weight system
//   replicate  the full verification pipeline on a coefficient triplet
//   qsmooth    stratum-by-stratum quasismoothness scans on a variety spec
//
// Exit codes: 0 when every gating section verified, 1 when some section
// failed its check, 2 on unusable input, 3 when a budget ran out before a
// verdict was reached.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfano/errors.hpp"
#include "qfano/family.hpp"
#include "qfano/report.hpp"

namespace {

using namespace qfano;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Prints the text rendering, optionally writes the JSON rendering, and
// turns the document verdict into a process exit code.
int emit(const ReportDocument& doc, const std::string& json_path) {
  std::cout << doc.to_text();
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + json_path);
    out << doc.to_json_text();
  }
  return doc.exit_code();
}

// Accepts variable names from the ring or positional tokens p1, p2, ...
// (1-based).  Names win when a variable is literally called "p2".
std::vector<std::size_t> resolve_allowed(const std::vector<std::string>& raw,
                                         const WeightedRing& ring) {
  std::vector<std::size_t> out;
  for (const std::string& tok : raw) {
    if (auto idx = ring.index_of(tok)) {
      out.push_back(*idx);
      continue;
    }
    if (tok.size() > 1 && tok[0] == 'p') {
      try {
        std::size_t pos = 0;
        unsigned long k = std::stoul(tok.substr(1), &pos);
        if (pos == tok.size() - 1 && k >= 1 && k <= ring.arity()) {
          out.push_back(k - 1);
          continue;
        }
      } catch (const std::exception&) {
      }
    }
    throw input_error("unknown coordinate '" + tok +
                      "' (use a variable name or p<k>)");
  }
  return out;
}

struct CommonFlags {
  bool exact = false;
  std::vector<std::uint64_t> primes;
  int jobs = 0;
  std::uint64_t budget = 200000;
  std::string json_path;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--exact", exact,
                  "run scans over the coefficient field itself instead of "
                  "reductions modulo random primes");
    cmd->add_option("--primes", primes,
                    "explicit reduction primes (distinct, each >= 1009)")
        ->delimiter(',');
    cmd->add_option("--jobs", jobs, "worker threads (0 = library default)");
    cmd->add_option("--budget", budget,
                    "pair budget per basis computation");
    cmd->add_option("--json", json_path, "also write the report as JSON");
  }

  QsmOptions qsm() const {
    QsmOptions opt;
    opt.exact = exact;
    opt.fixed_primes = primes;
    opt.jobs = jobs;
    opt.pair_budget = budget;
    return opt;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"exact replication checks for three families of Q-Fano "
               "threefold models"};
  app.set_version_flag("--version", "qfano 0.1.0");
  app.require_subcommand(1);

  // wps-info
  auto* info = app.add_subcommand(
      "wps-info", "well-formedness, degrees and coordinate points of a "
                  "weighted hypersurface or codimension-2 format");
  std::vector<std::uint32_t> weights;
  std::vector<std::uint64_t> degrees;
  std::string info_json;
  info->add_option("--weights", weights, "ambient weights, comma separated")
      ->required()
      ->delimiter(',');
  info->add_option("--degrees", degrees,
                   "equation degrees, comma separated (one or two)")
      ->required()
      ->delimiter(',');
  info->add_option("--json", info_json, "also write the report as JSON");

  // replicate
  auto* rep = app.add_subcommand(
      "replicate", "run the full pipeline: quasismoothness, generality "
                   "condition, singularity inventory, link certificates, "
                   "exclusion arithmetic, symmetry heuristic");
  std::string triplet_path;
  std::uint64_t sample_seed = 0;
  bool symmetric = false;
  std::string field_desc = "QQ";
  CommonFlags rep_flags;
  auto* file_opt = rep->add_option(
      "file", triplet_path, "triplet file (JSON with field, a6, b6, c8)");
  auto* sample_opt =
      rep->add_option("--sample", sample_seed,
                      "draw a verified triplet from the given seed instead "
                      "of reading a file");
  rep->add_flag("--symmetric", symmetric,
                "sample with b6 = a6 (only with --sample)");
  rep->add_option("--field", field_desc,
                  "coefficient field for --sample: QQ or Fp:<prime>");
  file_opt->excludes(sample_opt);
  sample_opt->excludes(file_opt);
  rep_flags.attach(rep);

  // qsmooth
  auto* qs = app.add_subcommand(
      "qsmooth", "stratum table for the general member of a linear system, "
                 "or a quasismoothness scan of one given member");
  std::string spec_path;
  bool general = false, member = false;
  std::vector<std::string> allow_raw;
  CommonFlags qs_flags;
  qs->add_option("file", spec_path,
                 "variety spec (JSON with variables, weights, equations)")
      ->required();
  qs->add_flag("--general", general,
               "scan the linear system spanned by the equations' monomials");
  qs->add_flag("--member", member, "scan the given member itself");
  qs->add_option("--allow", allow_raw,
                 "coordinate points to skip in --member mode (variable "
                 "names or p<k>, 1-based)")
      ->delimiter(',');
  qs_flags.attach(qs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (info->parsed())
    return emit(wps_info_report(weights, degrees), info_json);

  if (rep->parsed()) {
    ReplicateOptions opt;
    opt.qsm = rep_flags.qsm();
    if (*sample_opt) {
      Field f = Field::from_string(field_desc);
      SampleMode mode =
          symmetric ? SampleMode::symmetric : SampleMode::general;
      SampleResult sr = sample_triplet(sample_seed, mode, f, opt.qsm);
      std::string text = sr.triplet.to_json_text();
      ReportDocument doc = replicate_report(sr.triplet, opt, text);
      ReportSection s{"sample", "info", {}};
      s.fact("seed", std::to_string(sample_seed));
      s.fact("mode", symmetric ? "symmetric" : "general");
      s.fact("field", field_desc);
      s.fact("discarded draws", std::to_string(sr.retries));
      doc.sections.insert(doc.sections.begin(), std::move(s));
      return emit(doc, rep_flags.json_path);
    }
    if (triplet_path.empty())
      throw input_error("replicate needs a triplet file or --sample");
    std::string text = slurp(triplet_path);
    Triplet t = Triplet::from_json_text(text);
    return emit(replicate_report(t, opt, text), rep_flags.json_path);
  }

  // qsmooth
  if (general == member)
    throw input_error("qsmooth needs exactly one of --general or --member");
  std::string text = slurp(spec_path);
  VarietySpec V = variety_from_json_text(text);
  if (general) {
    if (!allow_raw.empty())
      throw input_error("--allow only applies to --member scans");
    return emit(general_scan_report(V, text), qs_flags.json_path);
  }
  std::vector<std::size_t> allowed = resolve_allowed(allow_raw, *V.ring());
  return emit(member_scan_report(V, allowed, qs_flags.qsm(), text),
              qs_flags.json_path);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qfano::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
