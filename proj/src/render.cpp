#include "porolab/render.hpp"

#include "porolab/errors.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace porolab {

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct LogSegments {
    // u = ln(1/x): blocks map to [ln(1/hi), ln(1/lo)], gaps to bubbles between
    std::vector<std::pair<double, double>> liquid;
    std::vector<std::pair<double, double>> bubbles;
    std::vector<std::string> bubble_ratio;  // exact b/a per bubble
    double u_min = 0, u_max = 1;
};

LogSegments collect(const AnySet& any, std::size_t depth) {
    LogSegments out;
    std::vector<Block> blocks;
    if (const auto* g = std::get_if<GermSet>(&any)) {
        std::size_t usable = g->usable_depth(depth);
        for (std::size_t n = 1; n <= usable; ++n) blocks.push_back(g->block(n));
    } else {
        blocks = std::get<FiniteSet>(any).blocks();
    }
    if (blocks.empty()) throw AnalysisError("render: nothing to draw");
    auto u_of = [](const Rat& x) { return -x.log_approx(); };
    for (const Block& b : blocks) out.liquid.emplace_back(u_of(b.hi), u_of(b.lo));
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        const Rat& a = blocks[i + 1].hi;
        const Rat& b = blocks[i].lo;
        out.bubbles.emplace_back(u_of(b), u_of(a));
        out.bubble_ratio.push_back((b / a).str());
    }
    out.u_min = out.liquid.front().first;
    out.u_max = out.liquid.back().second;
    return out;
}

}  // namespace

std::string render_svg(const AnySet& e, std::size_t depth, const std::string& title) {
    LogSegments seg = collect(e, depth);
    const double width = 1000.0, height = 160.0, margin = 50.0;
    const double span = seg.u_max > seg.u_min ? seg.u_max - seg.u_min : 1.0;
    auto X = [&](double u) { return margin + (u - seg.u_min) / span * (width - 2 * margin); };
    const double y0 = 70.0, bh = 26.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt12(width) << "\" height=\""
       << fmt12(height) << "\" viewBox=\"0 0 " << fmt12(width) << " " << fmt12(height) << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<text x=\"" << fmt12(margin) << "\" y=\"24\" font-family=\"monospace\" font-size=\"13\">"
       << title << " — axis: u = ln(1/x)</text>\n";
    os << "<line x1=\"" << fmt12(margin) << "\" y1=\"" << fmt12(y0 + bh) << "\" x2=\""
       << fmt12(width - margin) << "\" y2=\"" << fmt12(y0 + bh)
       << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt12(margin) << "\" y=\"" << fmt12(y0 + bh + 18)
       << "\" font-family=\"monospace\" font-size=\"11\">u=" << fmt12(seg.u_min) << "</text>\n";
    os << "<text x=\"" << fmt12(width - margin - 90) << "\" y=\"" << fmt12(y0 + bh + 18)
       << "\" font-family=\"monospace\" font-size=\"11\">u=" << fmt12(seg.u_max) << "</text>\n";

    // liquid: the set itself
    for (const auto& [ua, ub] : seg.liquid) {
        double x = X(ua), w = X(ub) - X(ua);
        if (w < 1.0) w = 1.0;  // points stay visible
        os << "<rect x=\"" << fmt12(x) << "\" y=\"" << fmt12(y0) << "\" width=\"" << fmt12(w)
           << "\" height=\"" << fmt12(bh) << "\" fill=\"#3565a0\"/>\n";
    }
    // bubbles: the components of the complement, annotated with exact b/a
    for (std::size_t i = 0; i < seg.bubbles.size(); ++i) {
        double xa = X(seg.bubbles[i].first), xb = X(seg.bubbles[i].second);
        double cx = (xa + xb) / 2.0, rx = (xb - xa) / 2.0;
        if (rx < 2.0) rx = 2.0;
        os << "<ellipse cx=\"" << fmt12(cx) << "\" cy=\"" << fmt12(y0 + bh / 2) << "\" rx=\""
           << fmt12(rx) << "\" ry=\"" << fmt12(bh / 2 - 2) << "\" fill=\"none\" stroke=\"#a03535\""
           << " stroke-width=\"1.5\"/>\n";
        if (i < 12) {
            os << "<text x=\"" << fmt12(cx) << "\" y=\"" << fmt12(y0 - 8)
               << "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">"
               << seg.bubble_ratio[i] << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_ascii(const AnySet& e, std::size_t depth, std::size_t width) {
    LogSegments seg = collect(e, depth);
    if (width < 16) width = 16;
    const double span = seg.u_max > seg.u_min ? seg.u_max - seg.u_min : 1.0;
    std::string line(width, '.');
    auto col = [&](double u) {
        double f = (u - seg.u_min) / span;
        if (f < 0) f = 0;
        if (f > 1) f = 1;
        return static_cast<std::size_t>(f * (width - 1));
    };
    for (const auto& [ua, ub] : seg.liquid) {
        for (std::size_t c = col(ua); c <= col(ub); ++c) line[c] = '#';
    }
    std::ostringstream os;
    os << "-ln E  [u=" << fmt12(seg.u_min) << " .. u=" << fmt12(seg.u_max) << "]  # liquid, . bubble\n";
    os << line << "\n";
    os << "bubble ratios b/a:";
    for (std::size_t i = 0; i < seg.bubble_ratio.size() && i < 10; ++i) {
        const std::string& r = seg.bubble_ratio[i];
        // the ruler is a sketch; exact values live in the reports
        os << " " << (r.size() <= 24 ? r : r.substr(0, 10) + "~" + std::to_string(r.size()) + "d");
    }
    if (seg.bubble_ratio.size() > 10) os << " ...";
    os << "\n";
    return os.str();
}

}  // namespace porolab
