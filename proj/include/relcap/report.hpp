#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relcap {

enum class CaseStatus { kPass, kFail, kFlagged, kEquality };

std::string_view status_name(CaseStatus status);

struct CaseRow {
  std::string name;  // no commas; carries the inputs digest
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double std_error = 0.0;
  CaseStatus status = CaseStatus::kPass;
  std::string note;  // not written to the CSV
};

struct Report {
  std::string suite;
  std::vector<CaseRow> rows;
  double runtime_seconds = 0.0;

  /// PASS and EQUALITY rows.
  std::size_t pass_count() const;
  std::size_t fail_count() const;
  std::size_t flagged_count() const;
};

/// Inequality row: slack = lhs - rhs; PASS when slack >= 0, FLAG within
/// k * std_error below zero, FAIL beyond.
CaseRow inequality_row(std::string name, double lhs, double rhs, double std_error, double k);

/// Equality row: PASS when |lhs - rhs| <= max(rel * |rhs|, k * std_error).
CaseRow equality_row(std::string name, double lhs, double rhs, double std_error, double k,
                     double rel);

/// 12 significant digits, shortest form, locale independent.
std::string format_number(double value);

std::string format_csv(const Report& report);
/// Throws std::runtime_error when the file cannot be written.
void emit_csv(const Report& report, const std::string& path);

/// FNV-1a 64, as 16 hex digits.
std::string digest_hex(std::string_view data);

}  // namespace relcap
