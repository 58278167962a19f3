#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace arena::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Fixed-size plot with a linear data-to-pixel mapping.
class Canvas {
public:
    Canvas(double x0, double x1, double y0, double y1, std::string title)
        : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1.0), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1.0) {
        body_ << "<text x=\"" << num(kWidth / 2.0) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
              << escape(title) << "</text>\n";
        body_ << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\"" << num(kWidth - kRight)
              << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
        body_ << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
              << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double fx = x0_ + (x1_ - x0_) * i / 4.0;
            const double fy = y0_ + (y1_ - y0_) * i / 4.0;
            text(px(fx), kHeight - kBottom + 16, num(fx), "middle");
            text(kLeft - 6, py(fy) + 4, num(fy), "end");
        }
    }

    double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

    void text(double x, double y, const std::string& s, const char* anchor = "start") {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
              << "\" font-size=\"10\">" << escape(s) << "</text>\n";
    }
    void line(double xa, double ya, double xb, double yb, const char* stroke) {
        body_ << "<line x1=\"" << num(px(xa)) << "\" y1=\"" << num(py(ya)) << "\" x2=\"" << num(px(xb)) << "\" y2=\""
              << num(py(yb)) << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
        body_ << "\"/>\n";
    }
    void dot(double x, double y, const char* fill) {
        body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5\" fill=\"" << fill << "\"/>\n";
    }
    void rect(double xa, double ya, double xb, double yb, const char* fill) {
        const double left = std::min(px(xa), px(xb));
        const double top = std::min(py(ya), py(yb));
        body_ << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(std::abs(px(xb) - px(xa)))
              << "\" height=\"" << num(std::abs(py(yb) - py(ya))) << "\" fill=\"" << fill << "\"/>\n";
    }
    void legend(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            const double y = kTop + 14.0 * static_cast<double>(i);
            body_ << "<rect x=\"" << num(kWidth - kRight + 8) << "\" y=\"" << num(y - 8) << "\" width=\"10\" height=\"10\" fill=\""
                  << color(i) << "\"/>\n";
            text(kWidth - kRight + 22, y, names[i]);
        }
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    static constexpr int kWidth = 640;
    static constexpr int kHeight = 400;
    static constexpr double kLeft = 50, kRight = 130, kTop = 36, kBottom = 36;

    double x0_, x1_, y0_, y1_;
    std::ostringstream body_;
};

}  // namespace

std::string cdf_plot(const CdfEntry& entry) {
    double xmax = 1.0;
    if (entry.curve && !entry.curve->points.empty()) xmax = std::max(xmax, entry.curve->points.back().first);
    Canvas c(0.0, xmax, 0.0, 1.0,
             "CDF of " + to_string(entry.metric) + " - " + entry.model + " - top " + std::to_string(entry.top_k));
    if (entry.curve) {
        std::vector<std::pair<double, double>> steps{{0.0, 0.0}};
        double previous = 0.0;
        for (const auto& [x, f] : entry.curve->points) {
            steps.emplace_back(x, previous);
            steps.emplace_back(x, f);
            previous = f;
        }
        steps.emplace_back(xmax, previous);
        c.polyline(steps, color(0));
    }
    return c.str();
}

std::string stacked_shares(const MetricAnalyses& analyses) {
    const int max_k = analyses.best_of_all.empty() ? 1 : analyses.best_of_all.back().top_k;
    Canvas c(0.5, max_k + 0.5, 0.0, 1.0, "Best-of-all shares (" + to_string(analyses.metric) + ") by top-k");
    std::vector<std::string> models;
    if (!analyses.best_of_all.empty()) {
        for (const auto& [m, s] : analyses.best_of_all.front().shares) models.push_back(m);
    }
    for (const auto& b : analyses.best_of_all) {
        double base = 0.0;
        for (std::size_t i = 0; i < models.size(); ++i) {
            const double share = b.shares.at(models[i]);
            c.rect(b.top_k - 0.4, base, b.top_k + 0.4, base + share, color(i));
            base += share;
        }
    }
    c.legend(models);
    return c.str();
}

std::string scatter_plot(const MetricAnalyses& analyses, bool with_points) {
    double xmax = 1.0, ymax = 1.0;
    for (const auto& p : analyses.scatter.points) {
        xmax = std::max(xmax, static_cast<double>(p.rank));
        ymax = std::max(ymax, p.value);
    }
    Canvas c(0.0, xmax + 1.0, 0.0, ymax, to_string(analyses.metric) + " by importance rank");
    std::vector<std::string> models;
    for (const auto& t : analyses.scatter.trends) models.push_back(t.model);
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (with_points) {
            for (const auto& p : analyses.scatter.points) {
                if (p.model == models[i]) c.dot(p.rank, p.value, color(i));
            }
        }
        const auto& t = analyses.scatter.trends[i];
        c.line(1.0, t.intercept + t.slope, xmax, t.intercept + t.slope * xmax, color(i));
    }
    c.legend(models);
    return c.str();
}

std::string window_bars(const WindowComparison& comparison) {
    double ymax = 0.0;
    for (const auto& d : comparison.deltas) {
        ymax = std::max({ymax, d.wape_a.value_or(0.0), d.wape_b.value_or(0.0)});
    }
    const double n = static_cast<double>(comparison.deltas.size());
    Canvas c(0.0, std::max(1.0, n), 0.0, ymax > 0.0 ? ymax : 1.0,
             "Pooled " + to_string(comparison.metric) + ": " + comparison.window_a.first.to_string() + ".." +
                 comparison.window_a.last.to_string() + " vs " + comparison.window_b.first.to_string() + ".." +
                 comparison.window_b.last.to_string());
    for (std::size_t i = 0; i < comparison.deltas.size(); ++i) {
        const auto& d = comparison.deltas[i];
        const double x = static_cast<double>(i);
        if (d.wape_a) c.rect(x + 0.1, 0.0, x + 0.5, *d.wape_a, color(0));
        if (d.wape_b) c.rect(x + 0.5, 0.0, x + 0.9, *d.wape_b, color(1));
        c.text(c.px(x + 0.5), 390, d.model, "middle");
    }
    c.legend({"window a", "window b"});
    return c.str();
}

}  // namespace arena::svg
