#include "fuzzy/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fuzzy/calculus.hpp"
#include "fuzzy/errors.hpp"

namespace fuzzy {

std::string fmt17(double v) {
    if (v == 0) v = 0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cuts_csv(const FuzzyNum& fz, const std::vector<double>& grid) {
    std::string out = "alpha,lo,hi\n";
    for (const auto& r : sample(fz, grid)) out += fmt17(r.alpha) + "," + fmt17(r.lo) + "," + fmt17(r.hi) + "\n";
    return out;
}

namespace {

struct Point {
    double x, y;
};

// Abscissae over [lo, hi] plus junctions, with one-sided limits at jumps.
std::vector<Point> trace(const FuzzyNum& fz, double lo, double hi, std::size_t n) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    for (double j : junctions(fz))
        if (j >= lo && j <= hi) xs.push_back(j);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Point> pts;
    for (double x : xs) {
        double l = membership_left_limit(fz, x), m = membership(fz, x), r = membership_right_limit(fz, x);
        if (l != m) pts.push_back({x, l});
        pts.push_back({x, m});
        if (r != m) pts.push_back({x, r});
    }
    return pts;
}

}  // namespace

std::string membership_csv(const FuzzyNum& fz, std::size_t n) {
    if (n < 2) throw DomainError("grid needs at least two points");
    Interval s = fz.support();
    std::string out = "x,mu\n";
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(s.lo + (s.hi - s.lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    for (double j : junctions(fz)) xs.push_back(j);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) out += fmt17(x) + "," + fmt17(membership(fz, x)) + "\n";
    return out;
}

std::string membership_svg(const std::vector<std::pair<std::string, FuzzyNum>>& curves, std::size_t min_points) {
    if (curves.empty()) throw DomainError("nothing to plot");
    min_points = std::max<std::size_t>(min_points, 2);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [name, fz] : curves) {
        lo = std::min(lo, fz.support().lo);
        hi = std::max(hi, fz.support().hi);
    }
    double pad = hi > lo ? 0.05 * (hi - lo) : 1.0;
    lo -= pad;
    hi += pad;
    const double W = 800, H = 400, M = 40;
    auto px = [&](double x) { return M + (x - lo) / (hi - lo) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - y * (H - 2 * M); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    char buf[128];
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" viewBox=\"0 0 800 400\">\n";
    out += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", M, py(0), W - M,
                  py(0));
    out += buf;
    std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#bbb\" stroke-dasharray=\"4\"/>\n",
                  M, py(1), W - M, py(1));
    out += buf;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& [name, fz] = curves[i];
        Interval s = fz.support();
        std::vector<Point> pts{{lo, 0}};
        if (s.hi > s.lo) {
            auto inner = trace(fz, s.lo, s.hi, min_points);
            if (inner.front().y != 0) pts.push_back({s.lo, 0});
            pts.insert(pts.end(), inner.begin(), inner.end());
            if (inner.back().y != 0) pts.push_back({s.hi, 0});
        } else {
            pts.push_back({s.lo, 0});
            pts.push_back({s.lo, 1});
            pts.push_back({s.lo, 0});
        }
        pts.push_back({hi, 0});
        const char* color = colors[i % 6];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", k ? " " : "", px(pts[k].x), py(pts[k].y));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\" font-size=\"12\">", W - M - 150,
                      M + 16.0 * static_cast<double>(i), color);
        out += buf;
        for (char ch : name) {
            if (ch == '<') out += "&lt;";
            else if (ch == '&') out += "&amp;";
            else out += ch;
        }
        out += "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fuzzy
