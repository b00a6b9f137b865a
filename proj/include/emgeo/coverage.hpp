#pragma once

#include "emgeo/table.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

enum class CoverageUnit { Locations, Disasters };
enum class ReportFormat { Text, Json, Svg };

ReportFormat parse_report_format(std::string_view name);

// Counts of located units. Percentages are kept as the exact located/total
// ratio and rendered to two decimals only at display time, so reported
// figures never drift through floating point.
struct CoverageReport {
    CoverageUnit unit = CoverageUnit::Locations;
    long long total = 0;
    long long located = 0;
    std::string rule;
    std::optional<std::string> warning;

    long long not_located() const { return total - located; }

    // "11.11" style fixed two-decimal strings, computed in integer math.
    std::string percent_located_text() const;
    std::string percent_not_located_text() const;

    double percent_located_value() const;
};

// Reduces the ordered located-flags of one disaster's locations to a single
// verdict. ANY and ALL are the built-in folds; CUSTOM takes any predicate
// over the boolean vector.
class DisasterAggregation {
public:
    using Predicate = std::function<bool(const std::vector<bool>&)>;

    static DisasterAggregation any();
    static DisasterAggregation all();
    static DisasterAggregation custom(Predicate predicate, std::string name = "custom");
    static DisasterAggregation parse(std::string_view name);

    bool reduce(const std::vector<bool>& located) const;
    const std::string& name() const { return name_; }

private:
    DisasterAggregation(Predicate predicate, std::string name);

    Predicate predicate_;
    std::string name_;
};

// Fraction of rows (location-disaster pairs) whose coordinate columns both
// hold a valid geographic coordinate. Hemisphere-suffixed native forms
// count; out-of-range values do not and are reported through `warnings`.
CoverageReport percent_located_locations(const Table& table, std::string_view lat_column,
                                         std::string_view lng_column,
                                         std::vector<std::string>* warnings = nullptr);

// Fraction of disasters located, grouping rows by Dis No and reducing each
// group with `how`.
CoverageReport percent_located_disasters(const Table& table, std::string_view lat_column,
                                         std::string_view lng_column,
                                         const DisasterAggregation& how = DisasterAggregation::any(),
                                         std::vector<std::string>* warnings = nullptr);

// Deterministic rendering; the SVG form is a two-bar chart with percentage
// labels.
std::string render_report(const CoverageReport& report, ReportFormat format);

} // namespace emgeo
