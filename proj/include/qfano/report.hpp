#ifndef QFANO_REPORT_HPP
#define QFANO_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfano/family.hpp"

namespace qfano {

// Stable 64-bit FNV-1a content digest, rendered "fnv1a:<16 hex digits>".
// Used to tie a report to the exact input bytes it was produced from.
std::string fnv1a_digest(std::string_view bytes);

// One titled block of a report: a status plus ordered key/value facts.
// Statuses: "verified" and "certified" count as good, "failed" and
// "inconclusive" gate the summary, "info" never does.
struct ReportSection {
  std::string name;
  std::string status;
  std::vector<std::pair<std::string, std::string>> facts;

  void fact(std::string key, std::string value) {
    facts.emplace_back(std::move(key), std::move(value));
  }
};

// Machine- and human-renderable result document.  The JSON form is
// byte-deterministic for a fixed tool version, input, and seed; the text
// form contains every verdict the JSON carries.
struct ReportDocument {
  std::string tool = "qfano 0.1.0";
  std::string input_digest;
  std::vector<ReportSection> sections;
  std::vector<std::string> notes;
  std::string summary;             // "replicated" | "failed" | "inconclusive"
  std::string structure_evidence;  // set by the replication pipeline

  // Recomputes `summary` from the section statuses: replicated only when
  // every non-info section is verified or certified, failed as soon as any
  // section failed, inconclusive otherwise.
  void finalize();

  int exit_code() const;  // 0 replicated, 1 failed, 3 inconclusive

  std::string to_json_text() const;
  std::string to_text() const;
};

// Ambient-space arithmetic for a weight/degree format: well-formedness,
// anticanonical degree and Fano index, the general-member stratum scan, and
// a per-coordinate-point summary.  No equations are involved.
ReportDocument wps_info_report(const std::vector<std::uint32_t>& weights,
                               const std::vector<std::uint64_t>& degrees);

struct ReplicateOptions {
  QsmOptions qsm;
  // Seed for the exclusion-section point sampling.
  std::uint64_t point_seed = 2026;
  // Rational triplets run the exclusion checks over this prime reduction.
  std::uint64_t reduction_prime = 2147483647;
};

// The full verification pipeline on one triplet: ambient checks, degree
// arithmetic, general-member strata, member quasismoothness, the generality
// condition, singularity typing, link certification, exclusion arithmetic,
// and the symmetry heuristic.  `input_text` is only digested.
ReportDocument replicate_report(const Triplet& t, const ReplicateOptions& opt,
                                const std::string& input_text);

// Stratum table for the complete linear system(s) of V's degrees: which
// strata the combinatorial criteria clear for a general member of the
// format.  Summary is replicated only when every stratum passes.
ReportDocument general_scan_report(const VarietySpec& V,
                                   const std::string& input_text);

// Member-level cone smoothness scan of V outside the allowed coordinate
// points, wrapped as a report.
ReportDocument member_scan_report(const VarietySpec& V,
                                  const std::vector<std::size_t>& allowed,
                                  const QsmOptions& opt,
                                  const std::string& input_text);

// Parses {"variables": [...], "weights": [...], "equations": [...]} with an
// optional "field" ("QQ" or "Fp:<prime>", default rationals) into a variety.
VarietySpec variety_from_json_text(const std::string& text);

}  // namespace qfano

#endif
