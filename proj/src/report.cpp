#include "relcap/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace relcap {

std::string_view status_name(CaseStatus status) {
  switch (status) {
    case CaseStatus::kPass:
      return "PASS";
    case CaseStatus::kFail:
      return "FAIL";
    case CaseStatus::kFlagged:
      return "FLAG";
    case CaseStatus::kEquality:
      return "EQUALITY";
  }
  return "";
}

std::size_t Report::pass_count() const {
  return std::count_if(rows.begin(), rows.end(), [](const CaseRow& r) {
    return r.status == CaseStatus::kPass || r.status == CaseStatus::kEquality;
  });
}

std::size_t Report::fail_count() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const CaseRow& r) { return r.status == CaseStatus::kFail; });
}

std::size_t Report::flagged_count() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const CaseRow& r) { return r.status == CaseStatus::kFlagged; });
}

CaseRow inequality_row(std::string name, double lhs, double rhs, double std_error, double k) {
  CaseRow row{std::move(name), lhs, rhs, lhs - rhs, std_error, CaseStatus::kPass, {}};
  if (!std::isfinite(row.slack) || row.slack < -k * std_error) {
    row.status = CaseStatus::kFail;
  } else if (row.slack < 0.0) {
    row.status = CaseStatus::kFlagged;
  }
  return row;
}

CaseRow equality_row(std::string name, double lhs, double rhs, double std_error, double k,
                     double rel) {
  CaseRow row{std::move(name), lhs, rhs, lhs - rhs, std_error, CaseStatus::kPass, {}};
  const double tol = std::max(rel * std::abs(rhs), k * std_error);
  if (!(std::abs(row.slack) <= tol)) {
    row.status = CaseStatus::kFail;
  }
  return row;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_csv(const Report& report) {
  std::string out = "case,lhs,rhs,slack,stderr,status\n";
  for (const CaseRow& r : report.rows) {
    out += r.name;
    for (const double v : {r.lhs, r.rhs, r.slack, r.std_error}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += status_name(r.status);
    out += '\n';
  }
  return out;
}

void emit_csv(const Report& report, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  const std::string text = format_csv(report);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

std::string digest_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace relcap
