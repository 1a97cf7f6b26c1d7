#include <catch2/catch_amalgamated.hpp>

#include <telesum/sumdist.hpp>
#include <telesum/table.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace telesum;

namespace {

DistributionTable sample_table() {
    TelegraphParams p{1.0, 1.0};
    const double t = 2.0;
    auto tbl = make_distribution_table(sum_law(p, t), linspace(-3.99, 3.99, 21));
    tbl.command = "pdf";
    tbl.meta = {{"c", 1.0}, {"lambda", 1.0}, {"t", 2.0}};
    return tbl;
}

} // namespace

TEST_CASE("linspace", "[table]") {
    auto xs = linspace(-1.0, 2.0, 7);
    REQUIRE(xs.size() == 7);
    CHECK(xs.front() == -1.0);
    CHECK(xs.back() == 2.0);
    for (int i = 1; i < 7; ++i) CHECK(xs[i] - xs[i - 1] == Catch::Approx(0.5).margin(1e-15));

    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(linspace(1.0, 0.0, 5), std::domain_error);
}

TEST_CASE("table construction and validation", "[table]") {
    auto tbl = sample_table();
    REQUIRE(tbl.rows.size() == 21);
    REQUIRE(tbl.atoms.size() == 3);
    CHECK_NOTHROW(tbl.validate());

    auto bad = tbl;
    std::swap(bad.rows[3], bad.rows[4]); // x no longer increasing
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    bad = tbl;
    bad.rows[5].pdf_ac = std::nan("");
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("CSV round-trips every double at 17 significant digits", "[table]") {
    auto tbl = sample_table();
    std::ostringstream os;
    write_csv(os, tbl);
    const std::string text = os.str();

    CHECK(text.find("# telesum,1.0.0") == 0);
    CHECK(text.find("# command,pdf\n") != std::string::npos);
    CHECK(text.find("# lambda,1\n") != std::string::npos);
    CHECK(text.find("x,pdf_ac,cdf\n") != std::string::npos);

    // Parse back: atom lines first, then data rows.
    std::istringstream is(text);
    std::string line;
    std::vector<Atom> atoms;
    std::vector<std::array<double, 3>> rows;
    bool in_rows = false;
    while (std::getline(is, line)) {
        if (line.rfind("# atom,", 0) == 0) {
            const char* s = line.c_str() + 7;
            char* end = nullptr;
            const double loc = std::strtod(s, &end);
            REQUIRE(*end == ',');
            const double mass = std::strtod(end + 1, &end);
            atoms.push_back({loc, mass});
        } else if (line == "x,pdf_ac,cdf") {
            in_rows = true;
        } else if (in_rows && !line.empty()) {
            char* end = nullptr;
            std::array<double, 3> r{};
            r[0] = std::strtod(line.c_str(), &end);
            REQUIRE(*end == ',');
            r[1] = std::strtod(end + 1, &end);
            REQUIRE(*end == ',');
            r[2] = std::strtod(end + 1, &end);
            rows.push_back(r);
        }
    }

    REQUIRE(atoms.size() == tbl.atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        CHECK(atoms[i].location == tbl.atoms[i].location);
        CHECK(atoms[i].mass == tbl.atoms[i].mass);
    }
    REQUIRE(rows.size() == tbl.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i][0] == tbl.rows[i].x);
        CHECK(rows[i][1] == tbl.rows[i].pdf_ac);
        CHECK(rows[i][2] == tbl.rows[i].cdf);
    }
}

TEST_CASE("JSON round-trips losslessly and agrees with CSV", "[table]") {
    auto tbl = sample_table();
    std::ostringstream os;
    write_json(os, tbl);

    std::istringstream is(os.str());
    auto back = read_json(is);

    CHECK(back.command == tbl.command);
    REQUIRE(back.meta.size() == tbl.meta.size());
    for (std::size_t i = 0; i < tbl.meta.size(); ++i) {
        CHECK(back.meta[i].first == tbl.meta[i].first);
        CHECK(back.meta[i].second == tbl.meta[i].second);
    }
    REQUIRE(back.atoms.size() == tbl.atoms.size());
    for (std::size_t i = 0; i < tbl.atoms.size(); ++i) {
        CHECK(back.atoms[i].location == tbl.atoms[i].location);
        CHECK(back.atoms[i].mass == tbl.atoms[i].mass);
    }
    REQUIRE(back.rows.size() == tbl.rows.size());
    for (std::size_t i = 0; i < tbl.rows.size(); ++i) {
        CHECK(back.rows[i].x == tbl.rows[i].x);
        CHECK(back.rows[i].pdf_ac == tbl.rows[i].pdf_ac);
        CHECK(back.rows[i].cdf == tbl.rows[i].cdf);
    }
}

TEST_CASE("SVG emission", "[table]") {
    auto tbl = sample_table();
    std::ostringstream os;
    write_svg(os, tbl, SvgColumn::pdf_ac);
    const std::string svg = os.str();

    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("pdf_ac") != std::string::npos);

    // One dashed stroke per atom.
    std::size_t strokes = 0, pos = 0;
    while ((pos = svg.find("crimson", pos)) != std::string::npos) {
        ++strokes;
        pos += 7;
    }
    CHECK(strokes == tbl.atoms.size());

    DistributionTable tiny;
    tiny.rows = {{0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(write_svg(os, tiny, SvgColumn::cdf), std::domain_error);
}
