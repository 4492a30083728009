#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace triopt::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double x0, y0, w, h;          // pixel rectangle
    double xmin, xmax, ymin, ymax;  // data rectangle

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void draw_mesh(std::ostringstream& out, const Triangulation& mesh, const Frame& fr,
               const std::string& title) {
    out << "<text x=\"" << num(fr.x0 + fr.w / 2) << "\" y=\"" << num(fr.y0 - 8)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
        << title << "</text>\n";
    for (const Edge& e : edges(mesh)) {
        const Point& a = mesh.vertices[e.lo];
        const Point& b = mesh.vertices[e.hi];
        out << "<line x1=\"" << num(fr.px(a.x)) << "\" y1=\"" << num(fr.py(a.y))
            << "\" x2=\"" << num(fr.px(b.x)) << "\" y2=\"" << num(fr.py(b.y))
            << "\" stroke=\"#334\" stroke-width=\"1\"/>\n";
    }
}

}  // namespace

std::string render_mesh_pair(const Triangulation& before, const Triangulation& after) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Triangulation* m : {&before, &after}) {
        for (const Point& p : m->vertices) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;

    // Equal-aspect panels.
    const double panel = 380.0, margin = 30.0;
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    Frame left{margin, margin, panel, panel,
               cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2};
    Frame right = left;
    right.x0 = margin + panel + 2 * margin;

    const double width = right.x0 + panel + margin;
    const double height = panel + 2 * margin;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
        << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    draw_mesh(out, before, left, "initial");
    draw_mesh(out, after, right, "optimized");
    out << "</svg>\n";
    return out.str();
}

std::string render_convergence(const std::vector<TraceRow>& trace) {
    const double width = 640.0, height = 400.0;
    const Frame fr{60.0, 20.0, width - 80.0, height - 70.0, 0.0, 1.0, 0.0, 1.0};

    constexpr double kFloor = 1e-16;
    double ymin = 1e300, ymax = -1e300;
    for (const TraceRow& row : trace) {
        const double y = std::log10(std::max(row.phi, kFloor));
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xmax = std::max<double>(1.0, trace.empty() ? 1.0 : trace.back().iter);

    Frame plot = fr;
    plot.xmin = 0.0;
    plot.xmax = xmax;
    plot.ymin = ymin;
    plot.ymax = ymax;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
        << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes.
    out << "<line x1=\"" << num(plot.x0) << "\" y1=\"" << num(plot.y0) << "\" x2=\""
        << num(plot.x0) << "\" y2=\"" << num(plot.y0 + plot.h)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(plot.x0) << "\" y1=\"" << num(plot.y0 + plot.h)
        << "\" x2=\"" << num(plot.x0 + plot.w) << "\" y2=\"" << num(plot.y0 + plot.h)
        << "\" stroke=\"black\"/>\n";

    // y ticks at integer decades.
    const int e_lo = static_cast<int>(std::floor(ymin));
    const int e_hi = static_cast<int>(std::ceil(ymax));
    const int stride = std::max(1, (e_hi - e_lo) / 8);
    for (int e = e_lo; e <= e_hi; e += stride) {
        if (e < ymin - 1e-9 || e > ymax + 1e-9) continue;
        const double y = plot.py(e);
        out << "<line x1=\"" << num(plot.x0 - 4) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(plot.x0) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(plot.x0 - 8) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e"
            << e << "</text>\n";
    }

    // x ticks.
    const int xstride = std::max(1, static_cast<int>(xmax) / 5);
    for (int it = 0; it <= static_cast<int>(xmax); it += xstride) {
        const double x = plot.px(it);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(plot.y0 + plot.h) << "\" x2=\""
            << num(x) << "\" y2=\"" << num(plot.y0 + plot.h + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(plot.y0 + plot.h + 18)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" << it
            << "</text>\n";
    }
    out << "<text x=\"" << num(plot.x0 + plot.w / 2) << "\" y=\"" << num(height - 10)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << "iteration</text>\n";
    out << "<text x=\"14\" y=\"" << num(plot.y0 + plot.h / 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << num(plot.y0 + plot.h / 2) << ")\">phi</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#0a62a8\" stroke-width=\"1.5\" points=\"";
    for (const TraceRow& row : trace) {
        const double y = std::log10(std::max(row.phi, kFloor));
        out << num(plot.px(row.iter)) << ',' << num(plot.py(y)) << ' ';
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace triopt::svg
