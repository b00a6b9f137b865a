#include "emgeo/coverage.hpp"

#include "emgeo/error.hpp"
#include "emgeo/ingest.hpp"
#include "emgeo/strings.hpp"

#include <json.hpp>

#include <algorithm>
#include <iterator>
#include <sstream>
#include <utility>

namespace emgeo {

ReportFormat parse_report_format(std::string_view name)
{
    const std::string n = str::to_lower(str::trim(name));
    if (n == "text") return ReportFormat::Text;
    if (n == "json") return ReportFormat::Json;
    if (n == "svg" || n == "svg-bar-chart") return ReportFormat::Svg;
    throw Error(ErrorKind::Config, "unknown report format '" + std::string(name) + "' (text, json, svg)");
}

namespace {

// Percent scaled to hundredths, rounded half away from zero, in integers.
long long percent_centi(long long part, long long total)
{
    if (total <= 0) {
        return 0;
    }
    return (part * 10000 + total / 2) / total;
}

std::string format_centi(long long centi)
{
    std::string out = std::to_string(centi / 100) + ".";
    long long frac = centi % 100;
    out += static_cast<char>('0' + frac / 10);
    out += static_cast<char>('0' + frac % 10);
    return out;
}

std::string_view unit_name(CoverageUnit unit)
{
    return unit == CoverageUnit::Locations ? "locations" : "disasters";
}

} // namespace

std::string CoverageReport::percent_located_text() const
{
    return format_centi(percent_centi(located, total));
}

std::string CoverageReport::percent_not_located_text() const
{
    return format_centi(percent_centi(not_located(), total));
}

double CoverageReport::percent_located_value() const
{
    return total > 0 ? 100.0 * static_cast<double>(located) / static_cast<double>(total) : 0.0;
}

DisasterAggregation::DisasterAggregation(Predicate predicate, std::string name)
    : predicate_(std::move(predicate)), name_(std::move(name))
{
}

DisasterAggregation DisasterAggregation::any()
{
    return DisasterAggregation(
        [](const std::vector<bool>& located) {
            for (bool b : located) {
                if (b) {
                    return true;
                }
            }
            return false;
        },
        "any");
}

DisasterAggregation DisasterAggregation::all()
{
    return DisasterAggregation(
        [](const std::vector<bool>& located) {
            for (bool b : located) {
                if (!b) {
                    return false;
                }
            }
            return true;
        },
        "all");
}

DisasterAggregation DisasterAggregation::custom(Predicate predicate, std::string name)
{
    if (!predicate) {
        throw Error(ErrorKind::Config, "custom aggregation requires a predicate");
    }
    return DisasterAggregation(std::move(predicate), std::move(name));
}

DisasterAggregation DisasterAggregation::parse(std::string_view name)
{
    const std::string n = str::to_lower(str::trim(name));
    if (n == "any") return any();
    if (n == "all") return all();
    throw Error(ErrorKind::Config, "unknown aggregation '" + std::string(name) + "' (any, all)");
}

bool DisasterAggregation::reduce(const std::vector<bool>& located) const
{
    return predicate_(located);
}

namespace {

bool row_located(const std::vector<std::string>& row, size_t lat_idx, size_t lng_idx,
                 std::vector<std::string>* warnings)
{
    auto lat = parse_coordinate_cell(row[lat_idx], CoordinateAxis::Latitude, warnings);
    auto lng = parse_coordinate_cell(row[lng_idx], CoordinateAxis::Longitude, warnings);
    return lat.has_value() && lng.has_value();
}

} // namespace

CoverageReport percent_located_locations(const Table& table, std::string_view lat_column,
                                         std::string_view lng_column, std::vector<std::string>* warnings)
{
    const size_t lat_idx = table.require_column(lat_column);
    const size_t lng_idx = table.require_column(lng_column);

    CoverageReport report;
    report.unit = CoverageUnit::Locations;
    report.rule = "located iff both '" + std::string(lat_column) + "' and '" + std::string(lng_column) +
                  "' hold valid coordinates";
    report.total = static_cast<long long>(table.rows.size());
    for (const auto& row : table.rows) {
        if (row_located(row, lat_idx, lng_idx, warnings)) {
            ++report.located;
        }
    }
    if (report.total == 0) {
        report.warning = "no rows to report on";
        if (warnings != nullptr) {
            warnings->push_back(*report.warning);
        }
    }
    return report;
}

CoverageReport percent_located_disasters(const Table& table, std::string_view lat_column,
                                         std::string_view lng_column, const DisasterAggregation& how,
                                         std::vector<std::string>* warnings)
{
    const size_t lat_idx = table.require_column(lat_column);
    const size_t lng_idx = table.require_column(lng_column);
    const size_t dis_idx = table.require_column("Dis No");

    // Group rows by Dis No in first-appearance order.
    std::vector<std::pair<std::string, std::vector<bool>>> groups;
    for (const auto& row : table.rows) {
        const std::string& dis_no = row[dis_idx];
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == dis_no; });
        if (it == groups.end()) {
            groups.emplace_back(dis_no, std::vector<bool>{});
            it = std::prev(groups.end());
        }
        it->second.push_back(row_located(row, lat_idx, lng_idx, warnings));
    }

    CoverageReport report;
    report.unit = CoverageUnit::Disasters;
    report.rule = "disaster located iff '" + how.name() + "' over its locations";
    report.total = static_cast<long long>(groups.size());
    for (const auto& [dis_no, located] : groups) {
        bool verdict = false;
        try {
            verdict = how.reduce(located);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::Validation,
                        "aggregation predicate failed for disaster " + dis_no + ": " + e.what());
        }
        if (verdict) {
            ++report.located;
        }
    }
    if (report.total == 0) {
        report.warning = "no rows to report on";
        if (warnings != nullptr) {
            warnings->push_back(*report.warning);
        }
    }
    return report;
}

namespace {

std::string render_text(const CoverageReport& report)
{
    std::ostringstream out;
    out << "coverage (" << unit_name(report.unit) << "): located " << report.located << " of "
        << report.total << " (" << report.percent_located_text() << "%), not located "
        << report.not_located() << " (" << report.percent_not_located_text() << "%)\n";
    out << "rule: " << report.rule << "\n";
    if (report.warning.has_value()) {
        out << "warning: " << *report.warning << "\n";
    }
    return out.str();
}

std::string render_json(const CoverageReport& report)
{
    nlohmann::ordered_json doc;
    doc["unit"] = std::string(unit_name(report.unit));
    doc["total"] = report.total;
    doc["located"] = report.located;
    doc["not_located"] = report.not_located();
    doc["percent_located"] = report.percent_located_text();
    doc["percent_not_located"] = report.percent_not_located_text();
    doc["rule"] = report.rule;
    if (report.warning.has_value()) {
        doc["warning"] = *report.warning;
    }
    return doc.dump(2) + "\n";
}

std::string render_svg(const CoverageReport& report)
{
    // Bar heights derive from the integer centi-percent so the output is
    // identical across platforms.
    const long long located_centi = percent_centi(report.located, report.total);
    const long long not_located_centi = percent_centi(report.not_located(), report.total);
    const long long chart_height = 150;
    auto bar_height = [&](long long centi) { return centi * chart_height / 10000; };

    const long long h_located = bar_height(located_centi);
    const long long h_not = bar_height(not_located_centi);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"320\" height=\"220\" "
           "viewBox=\"0 0 320 220\">\n";
    out << "  <title>located " << unit_name(report.unit) << "</title>\n";
    out << "  <line x1=\"20\" y1=\"180\" x2=\"300\" y2=\"180\" stroke=\"#333\"/>\n";
    out << "  <rect x=\"60\" y=\"" << (180 - h_located) << "\" width=\"80\" height=\"" << h_located
        << "\" fill=\"#2b8cbe\"/>\n";
    out << "  <rect x=\"180\" y=\"" << (180 - h_not) << "\" width=\"80\" height=\"" << h_not
        << "\" fill=\"#cccccc\"/>\n";
    out << "  <text x=\"100\" y=\"196\" font-size=\"11\" text-anchor=\"middle\">located "
        << report.percent_located_text() << "%</text>\n";
    out << "  <text x=\"220\" y=\"196\" font-size=\"11\" text-anchor=\"middle\">not located "
        << report.percent_not_located_text() << "%</text>\n";
    out << "  <text x=\"160\" y=\"212\" font-size=\"11\" text-anchor=\"middle\">" << report.located
        << " / " << report.total << " " << unit_name(report.unit) << "</text>\n";
    if (report.warning.has_value()) {
        out << "  <text x=\"160\" y=\"20\" font-size=\"11\" text-anchor=\"middle\">warning: "
            << *report.warning << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace

std::string render_report(const CoverageReport& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::Text: return render_text(report);
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Svg: return render_svg(report);
    }
    throw Error(ErrorKind::Config, "unknown report format");
}

} // namespace emgeo
