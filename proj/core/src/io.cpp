#include "qtriality/io.hpp"

#include "qtriality/errors.hpp"
#include "qtriality/metrics.hpp"

#include <fstream>
#include <sstream>

namespace qtriality {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    return out;
}

std::string fd(double x) { return format_double(x); }

struct AxisView {
    const char* name;
    double ideal;
    const NormalizedAxis* axis;
};

// Map a value in [lo, hi] to SVG pixel coordinates (y axis flipped).
struct SvgFrame {
    double lo = -0.1;
    double hi = 1.1;
    double size = 480.0;
    double margin = 40.0;

    double px(double x) const {
        return margin + (x - lo) / (hi - lo) * (size - 2.0 * margin);
    }
    double py(double y) const {
        return size - margin - (y - lo) / (hi - lo) * (size - 2.0 * margin);
    }
};

void write_projection_svg(const std::filesystem::path& path, const char* x_label,
                          const char* y_label, std::span<const std::array<double, 2>> ideal,
                          std::span<const std::array<double, 3>> normalized) {
    SvgFrame f;
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.size << "\" height=\""
        << f.size << "\" viewBox=\"0 0 " << f.size << " " << f.size << "\">\n";
    out << "<rect width=\"" << f.size << "\" height=\"" << f.size << "\" fill=\"white\"/>\n";

    // Axes along x = 0 and y = 0.
    out << "<line x1=\"" << fd(f.px(f.lo)) << "\" y1=\"" << fd(f.py(0.0)) << "\" x2=\""
        << fd(f.px(f.hi)) << "\" y2=\"" << fd(f.py(0.0)) << "\" stroke=\"#999\"/>\n";
    out << "<line x1=\"" << fd(f.px(0.0)) << "\" y1=\"" << fd(f.py(f.lo)) << "\" x2=\""
        << fd(f.px(0.0)) << "\" y2=\"" << fd(f.py(f.hi)) << "\" stroke=\"#999\"/>\n";

    // Unit circle arc through the first quadrant.
    const double r = f.px(1.0) - f.px(0.0);
    out << "<path d=\"M " << fd(f.px(1.0)) << " " << fd(f.py(0.0)) << " A " << fd(r) << " "
        << fd(r) << " 0 0 0 " << fd(f.px(0.0)) << " " << fd(f.py(1.0))
        << "\" fill=\"none\" stroke=\"#333\" stroke-dasharray=\"4 3\"/>\n";

    // Axis labels.
    out << "<text x=\"" << fd(f.px(f.hi) - 10.0) << "\" y=\"" << fd(f.py(0.0) + 20.0)
        << "\" font-size=\"14\" text-anchor=\"end\">" << x_label << "</text>\n";
    out << "<text x=\"" << fd(f.px(0.0) + 8.0) << "\" y=\"" << fd(f.py(f.hi) + 14.0)
        << "\" font-size=\"14\">" << y_label << "</text>\n";

    // Ideal points: hollow circles.
    for (const auto& pt : ideal) {
        out << "<circle cx=\"" << fd(f.px(pt[0])) << "\" cy=\"" << fd(f.py(pt[1]))
            << "\" r=\"4\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    }

    // Normalized points: filled circles with half-width error bars.
    for (const auto& pt : normalized) {
        const double x = pt[0];
        const double y = pt[1];
        const double hw = pt[2];
        if (hw > 0.0) {
            out << "<line x1=\"" << fd(f.px(x - hw)) << "\" y1=\"" << fd(f.py(y)) << "\" x2=\""
                << fd(f.px(x + hw)) << "\" y2=\"" << fd(f.py(y))
                << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
        }
        out << "<circle cx=\"" << fd(f.px(x)) << "\" cy=\"" << fd(f.py(y))
            << "\" r=\"3\" fill=\"#d62728\"/>\n";
    }

    out << "</svg>\n";
    if (!out) throw ValidationError("failed writing " + path.string());
}

} // namespace

void write_records_csv(const std::filesystem::path& path,
                       std::span<const StateResult> results, SweepMode mode) {
    std::ofstream out = open_out(path);
    out << record_csv_header() << ",state_index,repetition,mode,seed\n";
    const std::string mode_name = sweep_mode_name(mode);
    for (std::size_t si = 0; si < results.size(); ++si) {
        const StateResult& result = results[si];
        for (std::size_t rep = 0; rep < result.records.size(); ++rep) {
            out << record_csv_row(result.records[rep], result.params) << "," << si << "," << rep
                << "," << mode_name << "," << result.seeds[rep] << "\n";
        }
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_ellipsoids_csv(const std::filesystem::path& path,
                          std::span<const PrepParams> states,
                          std::span<const EllipsoidStats> stats) {
    if (states.size() != stats.size())
        throw ValidationError("states and statistics row counts differ");
    std::ofstream out = open_out(path);
    out << "state_index,alpha,theta"
           ",v_a_mean,v_a_sigma,v_a_halfwidth"
           ",p_a_mean,p_a_sigma,p_a_halfwidth"
           ",c_mean,c_sigma,c_halfwidth\n";
    for (std::size_t si = 0; si < states.size(); ++si) {
        const EllipsoidStats& st = stats[si];
        out << si << "," << fd(states[si].alpha) << "," << fd(states[si].theta);
        for (const AxisStats* axis : {&st.v_a, &st.p_a, &st.c}) {
            out << "," << fd(axis->mean) << "," << fd(axis->stddev) << ","
                << fd(axis->halfwidth);
        }
        out << "\n";
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_normalized_csv(const std::filesystem::path& path, const SweepOutputs& outputs) {
    std::ofstream out = open_out(path);
    out << "state_index,alpha,theta";
    for (const char* axis : {"v_a", "p_a", "c"}) {
        out << "," << axis << "_raw_mean"
            << "," << axis << "_noise_sim_mean"
            << "," << axis << "_ideal"
            << "," << axis << "_normalized"
            << "," << axis << "_halfwidth"
            << "," << axis << "_flag";
    }
    out << ",normalized_sum,sum_bound\n";

    for (std::size_t si = 0; si < outputs.states.size(); ++si) {
        const NormalizedPoint& pt = outputs.normalized[si];
        out << si << "," << fd(outputs.states[si].alpha) << "," << fd(outputs.states[si].theta);
        for (const NormalizedAxis* axis : {&pt.v_a, &pt.p_a, &pt.c}) {
            out << "," << fd(axis->raw_mean) << "," << fd(axis->noise_sim_mean) << ","
                << fd(axis->ideal) << "," << fd(axis->normalized) << "," << fd(axis->halfwidth)
                << "," << axis_flag_name(axis->flag);
        }
        out << "," << fd(pt.sum()) << "," << fd(pt.sum_bound()) << "\n";
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_slice_csv(const std::filesystem::path& path, std::span<const SliceRow> rows) {
    std::ofstream out = open_out(path);
    out << "alpha,p_a,c_channel,c_sampled_mean,c_max,ratio\n";
    for (const SliceRow& row : rows) {
        out << fd(row.alpha) << "," << fd(row.p_a) << "," << fd(row.c_channel) << ","
            << fd(row.c_sampled_mean) << "," << fd(row.c_max) << ",";
        if (row.ratio) out << fd(*row.ratio);
        out << "\n";
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_purity_csv(const std::filesystem::path& path, std::span<const PurityRow> rows) {
    std::ofstream out = open_out(path);
    out << "purity,c,c_max\n";
    for (const PurityRow& row : rows)
        out << fd(row.purity) << "," << fd(row.c) << "," << fd(row.c_max) << "\n";
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan) {
    std::ofstream out = open_out(path);
    out << "alpha,theta,v_a,p_a,c,v_a_closed,p_a_closed,c_closed\n";
    for (const ScanRow& row : scan.rows) {
        out << fd(row.alpha) << "," << fd(row.theta) << "," << fd(row.v_a) << "," << fd(row.p_a)
            << "," << fd(row.c) << "," << fd(row.v_a_closed) << "," << fd(row.p_a_closed) << ","
            << fd(row.c_closed) << "\n";
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

void write_counts_csv(const std::filesystem::path& path, std::span<const CountsTable> tables,
                      std::span<const std::uint64_t> seeds) {
    if (tables.size() != seeds.size())
        throw ValidationError("counts tables and seeds row counts differ");
    std::ofstream out = open_out(path);
    out << "setting,outcome,count,shots,seed\n";
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
        const CountsTable& table = tables[ti];
        for (std::size_t o = 0; o < 4; ++o) {
            out << table.setting.name() << "," << CountsTable::outcome_label(o) << ","
                << table.counts[o] << "," << table.shots << "," << seeds[ti] << "\n";
        }
    }
    if (!out) throw ValidationError("failed writing " + path.string());
}

std::vector<std::filesystem::path> write_projection_svgs(const std::filesystem::path& dir,
                                                         const SweepOutputs& outputs) {
    struct Proj {
        const char* file;
        const char* x_label;
        const char* y_label;
        // Indices into (v_a, p_a, c) = (0, 1, 2).
        int xi;
        int yi;
    };
    const Proj projections[] = {
        {"projection_vp.svg", "v_a", "p_a", 0, 1},
        {"projection_vc.svg", "v_a", "c", 0, 2},
        {"projection_pc.svg", "p_a", "c", 1, 2},
    };

    std::vector<std::filesystem::path> written;
    for (const Proj& proj : projections) {
        std::vector<std::array<double, 2>> ideal;
        std::vector<std::array<double, 3>> normalized;
        for (std::size_t si = 0; si < outputs.states.size(); ++si) {
            const TrialityRecord& rec = outputs.ideal[si];
            const double ideal_xyz[3] = {rec.v_a, rec.p_a, rec.c};
            ideal.push_back({ideal_xyz[proj.xi], ideal_xyz[proj.yi]});

            const NormalizedPoint& pt = outputs.normalized[si];
            const NormalizedAxis* axes[3] = {&pt.v_a, &pt.p_a, &pt.c};
            normalized.push_back({axes[proj.xi]->normalized, axes[proj.yi]->normalized,
                                  axes[proj.xi]->halfwidth});
        }
        const std::filesystem::path path = dir / proj.file;
        write_projection_svg(path, proj.x_label, proj.y_label, ideal, normalized);
        written.push_back(path);
    }
    return written;
}

} // namespace qtriality
