#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "csv.hpp"
#include "svgplot.hpp"
#include "util.hpp"

using namespace vm;

namespace {

// Minimal well-formedness check for the subset of XML the plots emit:
// matched tag nesting and no dangling '<'.
bool tags_balanced(const std::string& svg) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < svg.size()) {
        if (svg[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t end = svg.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = svg.substr(i + 1, end - i - 1);
        if (!tag.empty() && tag.front() == '/') {
            if (stack.empty()) return false;
            const std::string name = tag.substr(1);
            if (stack.back() != name) return false;
            stack.pop_back();
        } else if (!tag.empty() && tag.back() != '/') {
            const std::size_t sp = tag.find_first_of(" \t\n");
            stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
        }
        i = end + 1;
    }
    return stack.empty();
}

NormalizedPoint pt(int id, const std::string& speaker, Group g, Vowel v, double z1, double z2) {
    NormalizedPoint p;
    p.token_id = id;
    p.speaker = speaker;
    p.group = g;
    p.phoneme = v;
    p.z1 = z1;
    p.z2 = z2;
    return p;
}

ClarityScore cl(const std::string& speaker, Group g, double vai) {
    ClarityScore c;
    c.speaker = speaker;
    c.group = g;
    c.vai = vai;
    c.vsa_hz2 = 250000;
    return c;
}

VfdValue vf(int id, const std::string& speaker, Group g, Vowel v, double d) {
    VfdValue x;
    x.token_id = id;
    x.speaker = speaker;
    x.group = g;
    x.phoneme = v;
    x.vfd = d;
    x.log_vfd = std::log(std::max(d, 1e-9));
    return x;
}

// Small hand-built dataset shared by the plot tests and the golden files.
struct PlotFixture {
    std::vector<NormalizedPoint> points;
    std::vector<ClarityScore> clarity;
    std::vector<VfdValue> vfd;

    PlotFixture() {
        int id = 0;
        for (Vowel v : kVowels) {
            const double base_z1 = -1.2 + 0.45 * static_cast<int>(v);
            const double base_z2 = 1.4 - 0.5 * static_cast<int>(v);
            for (int k = 0; k < 3; ++k) {
                points.push_back(pt(id++, "OC01", Group::pre_surgery, v,
                                    base_z1 + 0.08 * k, base_z2 - 0.06 * k));
            }
        }
        clarity = {cl("OC01", Group::pre_surgery, 0.98), cl("OC01", Group::post_surgery, 0.94),
                   cl("OC02", Group::pre_surgery, 1.01), cl("OC02", Group::post_surgery, 1.02),
                   cl("TD01", Group::typical, 1.03)};
        int vid = 0;
        for (const char* sp : {"OC01", "OC02"}) {
            for (int k = 0; k < 4; ++k) {
                vfd.push_back(vf(vid++, sp, Group::pre_surgery, Vowel::I, 0.3 + 0.05 * k));
                vfd.push_back(vf(vid++, sp, Group::post_surgery, Vowel::I, 0.5 + 0.07 * k));
            }
        }
    }
};

}  // namespace

TEST_CASE("vowel space SVG is well formed and shows every phoneme") {
    PlotFixture fx;
    const std::string svg = vowel_space_svg(Group::pre_surgery, fx.points);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(tags_balanced(svg));
    for (Vowel v : kVowels)
        CHECK(svg.find(std::string(">") + label(v) + "<") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("one-token phoneme has a zero-length connector to its median") {
    std::vector<NormalizedPoint> points = {pt(0, "S", Group::typical, Vowel::I, 0.5, 0.5)};
    const std::string svg = vowel_space_svg(Group::typical, points);
    // Median equals the point: the connector collapses to identical endpoints.
    const std::size_t line = svg.find("<line x1=");
    REQUIRE(line != std::string::npos);
    const std::size_t x1 = svg.find("x1=\"", line), x2 = svg.find("x2=\"", line);
    const std::size_t y1 = svg.find("y1=\"", line), y2 = svg.find("y2=\"", line);
    CHECK(svg.substr(x1 + 4, 6) == svg.substr(x2 + 4, 6));
    CHECK(svg.substr(y1 + 4, 6) == svg.substr(y2 + 4, 6));
    CHECK(tags_balanced(svg));
}

TEST_CASE("dumbbell and change panels are well formed") {
    PlotFixture fx;
    const std::string dumbbell = vai_dumbbell_svg(fx.clarity);
    CHECK(tags_balanced(dumbbell));
    CHECK(dumbbell.find("OC01") != std::string::npos);
    CHECK(dumbbell.find("OC02") != std::string::npos);
    CHECK(dumbbell.find("TD01") == std::string::npos);  // no pre/post pair

    const std::string panels = change_panels_svg(fx.clarity, fx.vfd);
    CHECK(tags_balanced(panels));
    CHECK(panels.find("change in VAI") != std::string::npos);
    CHECK(panels.find("change in /i/ VFD") != std::string::npos);
}

TEST_CASE("plots are byte-identical against reviewed golden files") {
    PlotFixture fx;
    const std::filesystem::path golden_dir =
        std::filesystem::path(VM_TEST_DATA_DIR) / "golden";
    const struct {
        const char* name;
        std::string content;
    } cases[] = {
        {"vowel_space_pre_surgery.svg", vowel_space_svg(Group::pre_surgery, fx.points)},
        {"vai_dumbbell.svg", vai_dumbbell_svg(fx.clarity)},
        {"change_panels.svg", change_panels_svg(fx.clarity, fx.vfd)},
    };
    if (std::getenv("VM_UPDATE_GOLDEN")) {
        std::filesystem::create_directories(golden_dir);
        for (const auto& c : cases) csv::write_file(golden_dir / c.name, c.content);
    }
    for (const auto& c : cases) {
        INFO("golden file: " << c.name);
        REQUIRE(std::filesystem::exists(golden_dir / c.name));
        CHECK(c.content == csv::read_text_file(golden_dir / c.name));
    }
}
