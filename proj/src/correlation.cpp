#include "kgcsg/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>

#include "kgcsg/error.hpp"

namespace kgcsg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> pearson_or_undefined(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return std::nullopt;
    return pearson(pts);
}

}  // namespace

std::optional<double> pearson(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw DataError("pearson needs at least 2 points, got " + std::to_string(points.size()));
    const bool x_const = std::all_of(points.begin(), points.end(), [&](auto& p) { return p.first == points[0].first; });
    const bool y_const =
        std::all_of(points.begin(), points.end(), [&](auto& p) { return p.second == points[0].second; });
    if (x_const || y_const) return std::nullopt;

    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    const double r = sxy / std::sqrt(sxx * syy);
    if (!std::isfinite(r)) return std::nullopt;
    return std::clamp(r, -1.0, 1.0);
}

std::vector<MetricRow> read_metrics(std::istream& in) {
    std::vector<MetricRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != 3) {
            throw DataError("metrics row " + std::to_string(lineno) + ": expected 3 fields dataset,model,mrr");
        }
        if (rows.empty() && fields[0] == "dataset" && fields[1] == "model" && fields[2] == "mrr") continue;
        double mrr = 0.0;
        const auto* end = fields[2].data() + fields[2].size();
        auto [ptr, ec] = std::from_chars(fields[2].data(), end, mrr);
        if (ec != std::errc{} || ptr != end) {
            throw DataError("metrics row " + std::to_string(lineno) + ": unparsable mrr '" + std::string(fields[2]) + "'");
        }
        if (!(mrr >= 0.0 && mrr <= 1.0)) {
            throw DataError("metrics row " + std::to_string(lineno) + ": mrr " + std::string(fields[2]) +
                            " outside [0, 1]");
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw DataError("metrics row " + std::to_string(lineno) + ": empty dataset or model name");
        }
        rows.push_back(MetricRow{std::string(fields[0]), std::string(fields[1]), mrr});
    }
    return rows;
}

CorrelationReport correlate_with_metrics(const std::vector<CsgReport>& reports, const std::vector<MetricRow>& rows) {
    std::map<std::string, double> csg_by_dataset;
    for (const auto& r : reports) {
        if (!csg_by_dataset.try_emplace(r.dataset, r.csg_full).second) {
            throw DataError("two CSG reports for dataset '" + r.dataset + "'");
        }
    }

    CorrelationReport out;
    for (const auto& row : rows) {
        const auto it = csg_by_dataset.find(row.dataset);
        if (it == csg_by_dataset.end()) {
            std::string known;
            for (const auto& [name, _] : csg_by_dataset) known += (known.empty() ? "" : ", ") + name;
            throw DataError("metrics dataset '" + row.dataset + "' has no CSG report (known: " + known + ")");
        }
        out.points.push_back(CorrelationPoint{row.dataset, row.model, it->second, row.mrr});
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dataset, a.model, a.mrr) < std::tie(b.dataset, b.model, b.mrr);
    });

    std::map<std::string, std::vector<std::pair<double, double>>> by_model;
    std::vector<std::pair<double, double>> all;
    for (const auto& p : out.points) {
        by_model[p.model].emplace_back(p.csg, p.mrr);
        all.emplace_back(p.csg, p.mrr);
    }
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& [model, pts] : by_model) {
        const auto r = pearson_or_undefined(pts);
        out.per_model.emplace_back(model, r);
        if (r) {
            sum += *r;
            ++defined;
        }
    }
    if (defined > 0) out.mean_r = sum / static_cast<double>(defined);
    out.pooled_r = pearson_or_undefined(all);
    return out;
}

CorrelationReport correlate_with_metrics(const std::vector<CsgReport>& reports, std::istream& metrics) {
    return correlate_with_metrics(reports, read_metrics(metrics));
}

}  // namespace kgcsg
