#include "hstcn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hstcn::cli {

namespace {

constexpr double kPanelW = 460, kPanelH = 380;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string f3(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

std::string label(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

struct Series {
    const char* cls;
    const char* color;
    const char* dash;
    std::optional<double> SweepRow::*field;
};

constexpr Series kSeries[] = {
    {"closed", "#1f77b4", "", &SweepRow::ip_closed},
    {"lemma1", "#2ca02c", "6 3", &SweepRow::ip_lemma1},
    {"asymptotic", "#d62728", "2 3", &SweepRow::ip_asymptotic},
};

struct Scale {
    double lo, hi;
    bool log;
    double map(double v, double a, double b) const {
        double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo)) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
};

void panel(std::ostringstream& o, const std::vector<const SweepRow*>& rows, bool jam, double ox) {
    double xmin = rows.front()->value, xmax = rows.back()->value;
    if (xmax == xmin) xmax = xmin + 1.0;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    auto take = [&](const std::optional<double>& v) {
        if (v && std::isfinite(*v)) ymin = std::min(ymin, *v), ymax = std::max(ymax, *v);
    };
    for (auto* r : rows) {
        take(r->ip_mc), take(r->ci_lo), take(r->ci_hi);
        for (const auto& s : kSeries) take(r->*s.field);
    }
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
    Scale ys{ymin, ymax, ymin > 0.0 && ymax / ymin > 10.0};
    if (ys.log) {
        ys.lo = std::pow(10.0, std::floor(std::log10(ymin)));
        ys.hi = std::pow(10.0, std::ceil(std::log10(ymax)));
    } else {
        double pad = ymax > ymin ? 0.05 * (ymax - ymin) : 0.05 * std::max(std::abs(ymax), 1e-3);
        ys.lo = std::max(0.0, ymin - pad), ys.hi = ymax + pad;
    }
    Scale xs{xmin, xmax, false};
    const double x0 = ox + kLeft, x1 = ox + kPanelW - kRight, y0 = kTop + kPanelH - kBottom, y1 = kTop;
    auto X = [&](double v) { return xs.map(v, x0, x1); };
    auto Y = [&](double v) { return ys.map(v, y0, y1); };

    o << "<g class=\"panel\" data-jammer=\"" << (jam ? "on" : "off") << "\">\n";
    o << "<text x=\"" << f3((x0 + x1) / 2) << "\" y=\"" << f3(kTop - 12) << "\" text-anchor=\"middle\">"
      << (jam ? "with jammer" : "without jammer") << "</text>\n";
    o << "<rect x=\"" << f3(x0) << "\" y=\"" << f3(y1) << "\" width=\"" << f3(x1 - x0) << "\" height=\""
      << f3(y0 - y1) << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double v = xmin + (xmax - xmin) * i / 4.0;
        o << "<text class=\"xtick\" x=\"" << f3(X(v)) << "\" y=\"" << f3(y0 + 16) << "\" text-anchor=\"middle\">"
          << label(v) << "</text>\n";
    }
    if (ys.log) {
        for (double e = std::log10(ys.lo); e <= std::log10(ys.hi) + 1e-9; e += 1.0)
            o << "<text class=\"ytick\" x=\"" << f3(x0 - 6) << "\" y=\"" << f3(Y(std::pow(10.0, e)) + 4)
              << "\" text-anchor=\"end\">1e" << static_cast<int>(std::lround(e)) << "</text>\n";
    } else {
        for (int i = 0; i <= 4; ++i) {
            double v = ys.lo + (ys.hi - ys.lo) * i / 4.0;
            o << "<text class=\"ytick\" x=\"" << f3(x0 - 6) << "\" y=\"" << f3(Y(v) + 4)
              << "\" text-anchor=\"end\">" << label(v) << "</text>\n";
        }
    }
    o << "<text x=\"" << f3((x0 + x1) / 2) << "\" y=\"" << f3(y0 + 38) << "\" text-anchor=\"middle\">"
      << rows.front()->param << "</text>\n";
    o << "<text x=\"" << f3(ox + 16) << "\" y=\"" << f3((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
      << f3(ox + 16) << " " << f3((y0 + y1) / 2) << ")\">IP</text>\n";

    for (const auto& s : kSeries) {
        std::string pts;
        std::ostringstream marks;
        for (auto* r : rows) {
            const auto& v = r->*s.field;
            if (!v || !(*v > 0.0 || !ys.log)) continue;
            if (!pts.empty()) pts += ' ';
            pts += f3(X(r->value)) + "," + f3(Y(*v));
            marks << "<rect class=\"marker " << s.cls << "\" x=\"" << f3(X(r->value) - 2.5) << "\" y=\""
                  << f3(Y(*v) - 2.5) << "\" width=\"5\" height=\"5\" fill=\"" << s.color << "\"/>\n";
        }
        if (pts.empty()) continue;
        o << "<polyline class=\"series " << s.cls << "\" fill=\"none\" stroke=\"" << s.color << "\"";
        if (*s.dash) o << " stroke-dasharray=\"" << s.dash << "\"";
        o << " points=\"" << pts << "\"/>\n" << marks.str();
    }
    for (auto* r : rows) {
        if (!r->ip_mc || (ys.log && !(*r->ip_mc > 0.0))) continue;
        double cx = X(r->value);
        if (r->ci_lo && r->ci_hi && (!ys.log || *r->ci_lo > 0.0))
            o << "<line class=\"whisker\" x1=\"" << f3(cx) << "\" y1=\"" << f3(Y(*r->ci_lo)) << "\" x2=\"" << f3(cx)
              << "\" y2=\"" << f3(Y(*r->ci_hi)) << "\" stroke=\"#000\"/>\n";
        o << "<circle class=\"marker mc\" cx=\"" << f3(cx) << "\" cy=\"" << f3(Y(*r->ip_mc))
          << "\" r=\"3.5\" fill=\"none\" stroke=\"#000\"/>\n";
    }
    // Legend.
    double ly = y1 + 14;
    for (const auto& s : kSeries) {
        o << "<text x=\"" << f3(x1 - 8) << "\" y=\"" << f3(ly) << "\" text-anchor=\"end\" fill=\"" << s.color
          << "\">" << s.cls << "</text>\n";
        ly += 14;
    }
    o << "<text x=\"" << f3(x1 - 8) << "\" y=\"" << f3(ly) << "\" text-anchor=\"end\">mc (95% CI)</text>\n";
    o << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw PlotError("plot: no rows");
    for (const auto& r : rows)
        if (r.param != rows.front().param) throw PlotError("plot: rows mix sweep parameters");
    std::vector<const SweepRow*> on, off;
    for (const auto& r : rows) (r.jammer ? on : off).push_back(&r);
    auto by_value = [](const SweepRow* a, const SweepRow* b) { return a->value < b->value; };
    std::stable_sort(on.begin(), on.end(), by_value);
    std::stable_sort(off.begin(), off.end(), by_value);
    int panels = !on.empty() + !off.empty();
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW * panels << "\" height=\"" << kPanelH
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    double ox = 0.0;
    if (!on.empty()) panel(o, on, true, ox), ox += kPanelW;
    if (!off.empty()) panel(o, off, false, ox);
    o << "</svg>\n";
    return o.str();
}

void emit_plot(const std::vector<SweepRow>& rows, const std::string& path) {
    std::string svg = render_svg(rows);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PlotError("plot: cannot write '" + path + "'");
    f << svg;
}

}  // namespace hstcn::cli
