#include "qaoabench/plots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qaoabench/errors.hpp"

namespace qaoabench {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out.good()) throw IoError("failed writing: " + path);
}

// Fixed-layout canvas with a data viewport; all numbers go through
// format_double so identical inputs yield identical bytes.
class SvgCanvas {
public:
    SvgCanvas(double x_min, double x_max, double y_min, double y_max, std::string x_label,
              std::string y_label)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
        svg_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        svg_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
             << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
        svg_ << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        emit_frame(x_label, y_label);
    }

    double map_x(double x) const {
        return kMarginLeft + (x - x_min_) / (x_max_ - x_min_) * plot_width();
    }

    double map_y(double y) const {
        return kMarginTop + (1.0 - (y - y_min_) / (y_max_ - y_min_)) * plot_height();
    }

    void circle(double x, double y, double radius, const std::string& fill) {
        svg_ << "  <circle cx=\"" << format_double(map_x(x)) << "\" cy=\""
             << format_double(map_y(y)) << "\" r=\"" << format_double(radius) << "\" fill=\""
             << fill << "\" fill-opacity=\"0.65\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              bool dashed = false) {
        svg_ << "  <line x1=\"" << format_double(map_x(x1)) << "\" y1=\""
             << format_double(map_y(y1)) << "\" x2=\"" << format_double(map_x(x2)) << "\" y2=\""
             << format_double(map_y(y2)) << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
        if (dashed) svg_ << " stroke-dasharray=\"6,4\"";
        svg_ << "/>\n";
    }

    void rect(double x1, double y1, double x2, double y2, const std::string& fill,
              const std::string& stroke) {
        const double left = map_x(x1);
        const double top = map_y(y2);
        svg_ << "  <rect x=\"" << format_double(left) << "\" y=\"" << format_double(top)
             << "\" width=\"" << format_double(map_x(x2) - left) << "\" height=\""
             << format_double(map_y(y1) - top) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
             << "\" stroke-width=\"1\"/>\n";
    }

    void x_tick(double x, const std::string& label) {
        const double sx = map_x(x);
        const double bottom = kHeight - kMarginBottom;
        svg_ << "  <line x1=\"" << format_double(sx) << "\" y1=\"" << format_double(bottom)
             << "\" x2=\"" << format_double(sx) << "\" y2=\"" << format_double(bottom + 5)
             << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg_ << "  <text x=\"" << format_double(sx) << "\" y=\"" << format_double(bottom + 18)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label
             << "</text>\n";
    }

    void y_tick(double y, const std::string& label) {
        const double sy = map_y(y);
        svg_ << "  <line x1=\"" << format_double(kMarginLeft - 5) << "\" y1=\""
             << format_double(sy) << "\" x2=\"" << format_double(kMarginLeft) << "\" y2=\""
             << format_double(sy) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg_ << "  <text x=\"" << format_double(kMarginLeft - 8) << "\" y=\""
             << format_double(sy + 4) << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                "font-size=\"11\">"
             << label << "</text>\n";
    }

    void default_y_ticks() {
        for (int i = 0; i <= 4; ++i) {
            const double y = y_min_ + (y_max_ - y_min_) * i / 4.0;
            y_tick(y, format_double(y));
        }
    }

    std::string finish() {
        svg_ << "</svg>\n";
        return svg_.str();
    }

    static constexpr double kWidth = 640;
    static constexpr double kHeight = 480;
    static constexpr double kMarginLeft = 64;
    static constexpr double kMarginRight = 24;
    static constexpr double kMarginTop = 24;
    static constexpr double kMarginBottom = 52;

private:
    double plot_width() const { return kWidth - kMarginLeft - kMarginRight; }
    double plot_height() const { return kHeight - kMarginTop - kMarginBottom; }

    void emit_frame(const std::string& x_label, const std::string& y_label) {
        svg_ << "  <rect x=\"" << format_double(kMarginLeft) << "\" y=\""
             << format_double(kMarginTop) << "\" width=\"" << format_double(plot_width())
             << "\" height=\"" << format_double(plot_height())
             << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg_ << "  <text x=\"" << format_double(kMarginLeft + plot_width() / 2) << "\" y=\""
             << format_double(kHeight - 12)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
             << "</text>\n";
        const double ly = kMarginTop + plot_height() / 2;
        svg_ << "  <text x=\"16\" y=\"" << format_double(ly)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
                "transform=\"rotate(-90,16,"
             << format_double(ly) << ")\">" << y_label << "</text>\n";
    }

    std::ostringstream svg_;
    double x_min_, x_max_, y_min_, y_max_;
};

std::string boxplot_svg(const std::vector<RatioSummary>& summaries, const std::string& x_label) {
    const double slots = static_cast<double>(summaries.size());
    SvgCanvas canvas(0.0, slots, 0.0, 1.0, x_label, "approximation ratio");
    canvas.default_y_ticks();
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        canvas.x_tick(static_cast<double>(i) + 0.5, summaries[i].group);
    }
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const RatioSummary& s = summaries[i];
        const double center = static_cast<double>(i) + 0.5;
        const double half_width = 0.22;
        // Whiskers with caps, then the interquartile box and median bar.
        canvas.line(center, s.min, center, s.q1, "black");
        canvas.line(center, s.q3, center, s.max, "black");
        canvas.line(center - half_width / 2, s.min, center + half_width / 2, s.min, "black");
        canvas.line(center - half_width / 2, s.max, center + half_width / 2, s.max, "black");
        canvas.rect(center - half_width, s.q1, center + half_width, s.q3, "#9ecae1", "black");
        canvas.line(center - half_width, s.median, center + half_width, s.median, "black");
    }
    return canvas.finish();
}

std::string boxplot_csv(const std::vector<RatioSummary>& summaries) {
    std::ostringstream csv;
    csv << "group,min,q1,median,q3,max\n";
    for (const auto& s : summaries) {
        csv << s.group << ',' << format_double(s.min) << ',' << format_double(s.q1) << ','
            << format_double(s.median) << ',' << format_double(s.q3) << ','
            << format_double(s.max) << '\n';
    }
    return csv.str();
}

std::string scatter_ged_svg(const std::vector<DistancePair>& pairs,
                            const std::optional<LinearFit>& fit) {
    double x_max = 1.0;
    double y_max = 0.1;
    for (const auto& pair : pairs) {
        x_max = std::max(x_max, static_cast<double>(pair.ged));
        y_max = std::max(y_max, pair.d);
    }
    x_max *= 1.05;
    y_max *= 1.1;

    SvgCanvas canvas(0.0, x_max, 0.0, y_max, "graph edit distance",
                     "|approximation ratio difference|");
    canvas.default_y_ticks();
    const int x_ticks = std::min(8, std::max(1, static_cast<int>(x_max)));
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = x_max * i / x_ticks;
        canvas.x_tick(x, format_double(std::round(x * 100.0) / 100.0));
    }
    for (const auto& pair : pairs) {
        canvas.circle(static_cast<double>(pair.ged), pair.d, 3.0, "#3182bd");
    }
    if (fit) {
        canvas.line(0.0, fit->intercept, x_max, fit->intercept + fit->slope * x_max, "#de2d26",
                    /*dashed=*/true);
    }
    return canvas.finish();
}

std::string scatter_ged_csv(const std::vector<DistancePair>& pairs) {
    std::ostringstream csv;
    csv << "g1,g2,ged,d\n";
    for (const auto& pair : pairs) {
        csv << pair.g1 << ',' << pair.g2 << ',' << pair.ged << ',' << format_double(pair.d)
            << '\n';
    }
    return csv.str();
}

std::string concentration_svg(const ConcentrationCloud& cloud) {
    SvgCanvas canvas(0.0, std::numbers::pi, 0.0, 2.0 * std::numbers::pi,
                     "beta (step " + std::to_string(cloud.step) + ")",
                     "gamma (step " + std::to_string(cloud.step) + ")");
    canvas.y_tick(0.0, "0");
    canvas.y_tick(std::numbers::pi / 2, "pi/2");
    canvas.y_tick(std::numbers::pi, "pi");
    canvas.y_tick(3 * std::numbers::pi / 2, "3pi/2");
    canvas.y_tick(2 * std::numbers::pi, "2pi");
    canvas.x_tick(0.0, "0");
    canvas.x_tick(std::numbers::pi / 4, "pi/4");
    canvas.x_tick(std::numbers::pi / 2, "pi/2");
    canvas.x_tick(3 * std::numbers::pi / 4, "3pi/4");
    canvas.x_tick(std::numbers::pi, "pi");
    for (const auto& point : cloud.points) {
        canvas.circle(point.beta, point.gamma, 2.5, "#31a354");
    }
    return canvas.finish();
}

std::string concentration_csv(const ConcentrationCloud& cloud) {
    std::ostringstream csv;
    csv << "graph_id,step,beta,gamma\n";
    for (const auto& point : cloud.points) {
        csv << point.graph_id << ',' << cloud.step << ',' << format_double(point.beta) << ','
            << format_double(point.gamma) << '\n';
    }
    return csv.str();
}

}  // namespace

std::vector<std::string> emit_plots(const AnalysisOutputs& outputs, const std::string& out_dir,
                                    PlotFormat format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    const bool svg = format != PlotFormat::csv;
    const bool csv = format != PlotFormat::svg;
    std::vector<std::string> written;

    auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        write_file(path, content);
        written.push_back(path);
    };

    if (!outputs.by_depth.empty()) {
        if (svg) emit("boxplot_p.svg", boxplot_svg(outputs.by_depth, "QAOA depth p"));
        if (csv) emit("boxplot_p.csv", boxplot_csv(outputs.by_depth));
    }
    if (!outputs.by_class.empty()) {
        if (svg) emit("boxplot_ep.svg", boxplot_svg(outputs.by_class, "edge probability e_p"));
        if (csv) emit("boxplot_ep.csv", boxplot_csv(outputs.by_class));
    }
    if (!outputs.pairs.empty()) {
        if (svg) emit("scatter_ged.svg", scatter_ged_svg(outputs.pairs, outputs.ged_fit));
        if (csv) emit("scatter_ged.csv", scatter_ged_csv(outputs.pairs));
    }
    for (const auto& cloud : outputs.clouds) {
        const std::string stem = "concentration_p" + std::to_string(cloud.depth);
        if (svg) emit(stem + ".svg", concentration_svg(cloud));
        if (csv) emit(stem + ".csv", concentration_csv(cloud));
    }
    return written;
}

}  // namespace qaoabench
