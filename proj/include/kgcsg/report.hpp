#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kgcsg/correlation.hpp"
#include "kgcsg/pipeline.hpp"

namespace kgcsg {

enum class ReportFormat { csv, json };

ReportFormat parse_format(std::string_view name);

struct EmitOptions {
    bool include_timing = true;  ///< when false, wall-time fields are written as 0
};

// JSON field names mirror the C++ members. CSV layouts:
//   CsgReport          dataset,classes,pool_size,m,k,seed,kc,csg   (full CSG first, then each k_c)
//   SweepGrid          m,k,csg,pool_size,wall_ms,status
//   CorrelationReport  kind,dataset,model,csg,mrr,r
//   DatasetStats       dataset,entities,relations,triples,classes
void emit_report(const CsgReport& r, ReportFormat fmt, std::ostream& sink, const EmitOptions& opts = {});
void emit_report(const SweepGrid& g, ReportFormat fmt, std::ostream& sink, const EmitOptions& opts = {});
void emit_report(const CorrelationReport& c, ReportFormat fmt, std::ostream& sink, const EmitOptions& opts = {});
void emit_report(const std::string& dataset, const DatasetStats& s, ReportFormat fmt, std::ostream& sink);

nlohmann::ordered_json to_json(const CsgReport& r, const EmitOptions& opts = {});

/// Reads back a report written by emit_report(CsgReport, json).
CsgReport csg_report_from_json(const nlohmann::json& j);

}  // namespace kgcsg
