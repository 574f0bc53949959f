#include "qd/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "qd/archive_container.hpp"
#include "qd/grid_container.hpp"

namespace qd {

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double quantize(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

MetricsRow compute_metrics(const Container& container, long batch, long evals)
{
    MetricsRow row;
    row.batch = batch;
    row.evals = evals;
    row.size = container.size();

    // Sums run over dump-quantized values in id order so the trace can be
    // recomputed exactly from collection.csv.
    auto members = container.members_by_id();
    double total_quality = 0.0;
    double total_novelty = 0.0;
    std::optional<double> max_quality;
    for (const auto* m : members) {
        double fitness = quantize(m->fitness);
        total_quality += fitness + container.quality_offset();
        total_novelty += quantize(m->novelty);
        if (!max_quality || fitness > *max_quality)
            max_quality = fitness;
    }
    row.max_quality = max_quality;
    row.total_quality = total_quality;
    if (container.tracks_total_novelty() && !members.empty())
        row.total_novelty = total_novelty;
    return row;
}

std::string metrics_csv_header() { return "batch,evals,size,max_quality,total_quality,total_novelty"; }

namespace {
    std::string opt_value(const std::optional<double>& v)
    {
        return v.has_value() ? format_value(*v) : "NA";
    }
} // namespace

std::string metrics_csv_row(const MetricsRow& row)
{
    return std::to_string(row.batch) + "," + std::to_string(row.evals) + "," +
           std::to_string(row.size) + "," + opt_value(row.max_quality) + "," +
           format_value(row.total_quality) + "," + opt_value(row.total_novelty);
}

void write_metrics_csv(const MetricsTrace& trace, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << metrics_csv_header() << "\n";
    for (const auto& row : trace)
        out << metrics_csv_row(row) << "\n";
}

MetricsTrace read_metrics_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    MetricsTrace trace;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (fields.size() != 6)
            throw std::runtime_error("malformed metrics row in " + path);
        MetricsRow row;
        row.batch = std::stol(fields[0]);
        row.evals = std::stol(fields[1]);
        row.size = std::stoul(fields[2]);
        if (fields[3] != "NA")
            row.max_quality = std::strtod(fields[3].c_str(), nullptr);
        row.total_quality = std::strtod(fields[4].c_str(), nullptr);
        if (fields[5] != "NA")
            row.total_novelty = std::strtod(fields[5].c_str(), nullptr);
        trace.push_back(row);
    }
    return trace;
}

std::string collection_csv(const Container& container, std::size_t descriptor_dim,
                           std::size_t genotype_size)
{
    std::string csv = "id,cell";
    for (std::size_t d = 0; d < descriptor_dim; ++d)
        csv += ",desc_" + std::to_string(d);
    csv += ",fitness,novelty,local_quality,curiosity";
    for (std::size_t g = 0; g < genotype_size; ++g)
        csv += ",g_" + std::to_string(g);
    csv += "\n";

    for (const auto* m : container.members_by_id()) {
        csv += std::to_string(m->id) + "," + container.cell_label(*m);
        for (double c : m->descriptor.coords)
            csv += "," + format_value(c);
        csv += "," + format_value(m->fitness);
        csv += "," + format_value(m->novelty);
        csv += "," + std::to_string(m->local_quality);
        csv += "," + format_value(m->curiosity);
        for (double v : m->genotype.values)
            csv += "," + format_value(v);
        csv += "\n";
    }
    return csv;
}

void write_collection_csv(const Container& container, std::size_t descriptor_dim,
                          std::size_t genotype_size, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << collection_csv(container, descriptor_dim, genotype_size);
}

namespace {

    // Light-to-dark ramp with monotone lightness; t = 1 is the best fitness.
    struct RampStop {
        double t;
        int r, g, b;
    };
    constexpr RampStop kRamp[] = {
        {0.00, 26, 16, 64},    // darkest: worst fitness
        {0.25, 85, 33, 115},
        {0.50, 170, 57, 115},
        {0.75, 235, 116, 88},
        {1.00, 252, 227, 164}, // lightest: best fitness
    };

    std::string ramp_color(double t)
    {
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
        std::size_t hi = 1;
        while (hi + 1 < std::size(kRamp) && kRamp[hi].t < t)
            ++hi;
        const auto& a = kRamp[hi - 1];
        const auto& b = kRamp[hi];
        double w = (t - a.t) / (b.t - a.t);
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(a.r + w * (b.r - a.r)),
                      static_cast<int>(a.g + w * (b.g - a.g)),
                      static_cast<int>(a.b + w * (b.b - a.b)));
        return buf;
    }

} // namespace

std::string render_collection_svg(const Container& container, std::size_t descriptor_dim)
{
    if (descriptor_dim != 2)
        throw std::invalid_argument("collection rendering requires a 2-D descriptor space, got " +
                                    std::to_string(descriptor_dim) + " dimensions");
    constexpr double kCanvas = 800.0;

    auto members = container.members_by_id();
    double fmin = 0.0, fmax = 0.0;
    if (!members.empty()) {
        fmin = fmax = members.front()->fitness;
        for (const auto* m : members) {
            fmin = std::min(fmin, m->fitness);
            fmax = std::max(fmax, m->fitness);
        }
    }
    double range = fmax - fmin;
    auto shade = [&](double fitness) {
        return ramp_color(range > 0.0 ? (fitness - fmin) / range : 1.0);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"860\" "
           "viewBox=\"0 0 800 860\">\n";
    svg += "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">";
    for (const auto& stop : kRamp) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "<stop offset=\"%g\" stop-color=\"#%02x%02x%02x\"/>",
                      stop.t, stop.r, stop.g, stop.b);
        svg += buf;
    }
    svg += "</linearGradient></defs>\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\" "
           "stroke=\"#cccccc\"/>\n";

    if (const auto* grid = dynamic_cast<const GridContainer*>(&container)) {
        const auto& res = grid->params().resolution;
        double cw = kCanvas / res[0];
        double ch = kCanvas / res[1];
        for (const auto* m : members) {
            auto cell = discretize(m->descriptor, res);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                          "fill=\"%s\"/>\n",
                          cell[0] * cw, kCanvas - (cell[1] + 1) * ch, cw, ch,
                          shade(m->fitness).c_str());
            svg += buf;
        }
    } else {
        const auto* archive = dynamic_cast<const ArchiveContainer*>(&container);
        double radius = archive != nullptr ? std::max(2.0, archive->params().l * kCanvas / 2.0) : 3.0;
        for (const auto* m : members) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n",
                          m->descriptor.coords[0] * kCanvas,
                          kCanvas - m->descriptor.coords[1] * kCanvas, radius,
                          shade(m->fitness).c_str());
            svg += buf;
        }
    }

    // Legend: fitness ramp with its endpoints.
    double ly = kCanvas + 20.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"150\" y=\"%.0f\" width=\"500\" height=\"18\" fill=\"url(#ramp)\" "
                  "stroke=\"#444444\"/>\n",
                  ly);
    svg += buf;
    std::string lo_label = members.empty() ? "NA" : format_value(fmin);
    std::string hi_label = members.empty() ? "NA" : format_value(fmax);
    std::snprintf(buf, sizeof buf,
                  "<text x=\"140\" y=\"%.0f\" text-anchor=\"end\" font-size=\"14\" "
                  "font-family=\"sans-serif\">%s</text>\n",
                  ly + 14.0, lo_label.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"660\" y=\"%.0f\" text-anchor=\"start\" font-size=\"14\" "
                  "font-family=\"sans-serif\">%s</text>\n",
                  ly + 14.0, hi_label.c_str());
    svg += buf;
    svg += "</svg>\n";
    return svg;
}

} // namespace qd
