#pragma once

#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>

#include "pfk/cheeger.hpp"
#include "pfk/spectral.hpp"
#include "pfk/surgery.hpp"
#include "pfk/verify.hpp"

namespace pfk {

/// Insertion-ordered, so report fields appear in a stable, readable order.
using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "pfk-report/1";

Json to_json(const EigenResult& r);
Json to_json(const CheegerResult& r);
Json to_json(const SurgeryTrace& t);
Json to_json(const FKReport& r);
Json to_json(const LemmaReport& r);
Json to_json(const DeletionReport& r);
Json to_json(const LimitReport& r);
Json to_json(std::span<const SweepRow> rows);

/// Top-level report object: {"schema": "pfk-report/1", "kind": kind, ...body}.
Json make_report(const std::string& kind, Json body);

/// Serializes with two-space indentation; every floating value is written
/// with 17 significant digits so records round-trip exactly.
void write_json(std::ostream& out, const Json& j);
std::string dump_json(const Json& j);

/// %.17g, as used in text and CSV output.
std::string format_real(double v);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace pfk
