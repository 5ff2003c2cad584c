#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgcsg/pipeline.hpp"

namespace kgcsg {

/// Pearson product-moment coefficient. nullopt ("undefined") when either
/// coordinate has zero variance; throws DataError for fewer than 2 points.
std::optional<double> pearson(std::span<const std::pair<double, double>> points);

struct MetricRow {
    std::string dataset;
    std::string model;
    double mrr = 0.0;
};

/// CSV `dataset,model,mrr` (header optional). MRR must lie in [0, 1].
std::vector<MetricRow> read_metrics(std::istream& in);

struct CorrelationPoint {
    std::string dataset;
    std::string model;
    double csg = 0.0;
    double mrr = 0.0;
};

struct CorrelationReport {
    std::vector<CorrelationPoint> points;  ///< sorted by (dataset, model)
    std::vector<std::pair<std::string, std::optional<double>>> per_model;  ///< r across datasets, by model name
    std::optional<double> mean_r;    ///< mean of the defined per-model coefficients
    std::optional<double> pooled_r;  ///< all points together
};

/// Joins metric rows with each dataset's CSG by dataset name.
CorrelationReport correlate_with_metrics(const std::vector<CsgReport>& reports, const std::vector<MetricRow>& rows);
CorrelationReport correlate_with_metrics(const std::vector<CsgReport>& reports, std::istream& metrics);

}  // namespace kgcsg
