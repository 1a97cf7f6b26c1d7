#pragma once

// Tabulated distribution output: grid of (x, pdf_ac, cdf) rows plus a
// separate atom block, serialized as CSV, JSON, or a minimal SVG chart.
// Numbers are written with 17 significant digits so CSV and JSON round-trip
// IEEE doubles exactly; formatting is locale-independent.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "telesum/distribution.hpp"

namespace telesum {

inline constexpr const char* tool_name = "telesum";
inline constexpr const char* tool_version = "1.0.0";

struct DistributionTable {
    struct Row {
        double x, pdf_ac, cdf;
    };

    std::string command; // producing subcommand, e.g. "pdf"
    std::vector<std::pair<std::string, double>> meta; // ordered parameter list
    std::vector<Atom> atoms;
    std::vector<Row> rows;

    void validate() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = rows[i];
            if (!std::isfinite(r.x) || !std::isfinite(r.pdf_ac) || !std::isfinite(r.cdf))
                throw std::domain_error("DistributionTable: non-finite row value");
            if (i > 0 && !(rows[i - 1].x < r.x))
                throw std::domain_error("DistributionTable: x must be strictly increasing");
        }
        for (const auto& a : atoms)
            if (!std::isfinite(a.location) || !std::isfinite(a.mass) || a.mass < 0.0)
                throw std::domain_error("DistributionTable: bad atom");
    }
};

// Evenly spaced grid with both endpoints included.
inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::domain_error("linspace: need n >= 2");
    if (!(lo < hi)) throw std::domain_error("linspace: need lo < hi");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
    xs.back() = hi;
    return xs;
}

// Evaluate a mixed law over a grid.
inline DistributionTable make_distribution_table(const MixedDistribution& law,
                                                 const std::vector<double>& xs) {
    DistributionTable tbl;
    tbl.atoms = law.atoms;
    tbl.rows.reserve(xs.size());
    for (double x : xs) tbl.rows.push_back({x, law.pdf_ac ? law.pdf_ac(x) : 0.0,
                                            law.cdf ? law.cdf(x) : 0.0});
    tbl.validate();
    return tbl;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_csv(std::ostream& os, const DistributionTable& tbl) {
    os << "# " << tool_name << "," << tool_version << "\n";
    if (!tbl.command.empty()) os << "# command," << tbl.command << "\n";
    for (const auto& kv : tbl.meta)
        os << "# " << kv.first << "," << detail::fmt17(kv.second) << "\n";
    for (const auto& a : tbl.atoms)
        os << "# atom," << detail::fmt17(a.location) << "," << detail::fmt17(a.mass) << "\n";
    os << "x,pdf_ac,cdf\n";
    for (const auto& r : tbl.rows)
        os << detail::fmt17(r.x) << "," << detail::fmt17(r.pdf_ac) << ","
           << detail::fmt17(r.cdf) << "\n";
}

inline void write_json(std::ostream& os, const DistributionTable& tbl) {
    nlohmann::ordered_json j;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    j["command"] = tbl.command;
    j["meta"] = nlohmann::ordered_json::array();
    for (const auto& kv : tbl.meta)
        j["meta"].push_back({{"name", kv.first}, {"value", kv.second}});
    j["atoms"] = nlohmann::ordered_json::array();
    for (const auto& a : tbl.atoms)
        j["atoms"].push_back({{"location", a.location}, {"mass", a.mass}});
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : tbl.rows)
        j["rows"].push_back({{"x", r.x}, {"pdf_ac", r.pdf_ac}, {"cdf", r.cdf}});
    os << j.dump(2) << "\n";
}

inline DistributionTable read_json(std::istream& is) {
    nlohmann::json j;
    is >> j;
    DistributionTable tbl;
    tbl.command = j.value("command", std::string());
    for (const auto& m : j.value("meta", nlohmann::json::array()))
        tbl.meta.emplace_back(m.at("name").get<std::string>(), m.at("value").get<double>());
    for (const auto& a : j.value("atoms", nlohmann::json::array()))
        tbl.atoms.push_back({a.at("location").get<double>(), a.at("mass").get<double>()});
    for (const auto& r : j.value("rows", nlohmann::json::array()))
        tbl.rows.push_back({r.at("x").get<double>(), r.at("pdf_ac").get<double>(),
                            r.at("cdf").get<double>()});
    tbl.validate();
    return tbl;
}

// Minimal dependency-free SVG line chart of one column; atoms are drawn as
// vertical dashed strokes with height proportional to their mass.
enum class SvgColumn { pdf_ac, cdf };

inline void write_svg(std::ostream& os, const DistributionTable& tbl, SvgColumn col,
                      const char* ylabel = nullptr, const char* xlabel = "x") {
    if (tbl.rows.size() < 2) throw std::domain_error("write_svg: need at least 2 rows");
    if (ylabel == nullptr) ylabel = col == SvgColumn::pdf_ac ? "pdf_ac" : "cdf";
    const int width = 800, height = 500, margin = 50;
    auto pick = [col](const DistributionTable::Row& r) {
        return col == SvgColumn::pdf_ac ? r.pdf_ac : r.cdf;
    };
    double xmin = tbl.rows.front().x, xmax = tbl.rows.back().x;
    double ymin = 0.0, ymax = col == SvgColumn::cdf ? 1.0 : 0.0;
    for (const auto& r : tbl.rows) ymax = std::max(ymax, pick(r));
    for (const auto& a : tbl.atoms) {
        xmin = std::min(xmin, a.location);
        xmax = std::max(xmax, a.location);
        ymax = std::max(ymax, a.mass);
    }
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2.0 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2.0 * margin);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
       << width - margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const auto& a : tbl.atoms)
        os << "  <line x1=\"" << px(a.location) << "\" y1=\"" << py(0.0) << "\" x2=\""
           << px(a.location) << "\" y2=\"" << py(a.mass)
           << "\" stroke=\"crimson\" stroke-width=\"2\" stroke-dasharray=\"4 3\"/>\n";
    os << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : tbl.rows) os << px(r.x) << "," << py(pick(r)) << " ";
    os << "\"/>\n";
    os << "  <text x=\"" << width / 2 << "\" y=\"" << height - margin / 3
       << "\" text-anchor=\"middle\" font-size=\"14\">" << xlabel << "</text>\n";
    os << "  <text x=\"" << margin << "\" y=\"" << margin - 10
       << "\" text-anchor=\"middle\" font-size=\"14\">" << ylabel << "</text>\n";
    os << "</svg>\n";
}

} // namespace telesum
