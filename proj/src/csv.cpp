#include "sphlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sphlab {

namespace {

constexpr const char* study_header =
    "scheme,field,distribution,seed,N,h,n_interior,rmse_f,rmse_fx,rmse_fy,"
    "rmse_fxx,rmse_fxy,rmse_fyy,std_f,std_fx,std_fy,fallbacks,interior_rmse_f";

std::string opt_str(const std::optional<double>& v) {
    return v ? format_float(*v) : std::string{};
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    if (s.empty()) throw std::runtime_error("study csv: empty numeric cell");
    return std::stod(s);
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

}  // namespace

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<StudyCsvRow> flatten_results(std::span<const StudyResult> results) {
    std::vector<StudyCsvRow> out;
    for (const auto& study : results) {
        for (const auto& row : study.rows) {
            StudyCsvRow r;
            r.scheme = study.config.scheme_name;
            r.field = field_name(study.config.field);
            r.distribution = study.config.distribution.name();
            r.seed = study.config.distribution.jittered ? study.config.distribution.seed : 0;
            r.row = row;
            out.push_back(std::move(r));
        }
    }
    return out;
}

void write_study_csv(std::span<const StudyCsvRow> rows, std::ostream& out) {
    out << study_header << '\n';
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.field << ',' << r.distribution << ',' << r.seed << ','
            << r.row.n_particles << ',' << format_float(r.row.h) << ','
            << format_float(r.row.mean_interior_n) << ',' << format_float(r.row.rmse_f) << ','
            << format_float(r.row.rmse_fx) << ',' << format_float(r.row.rmse_fy) << ','
            << opt_str(r.row.rmse_fxx) << ',' << opt_str(r.row.rmse_fxy) << ','
            << opt_str(r.row.rmse_fyy) << ',' << format_float(r.row.std_f) << ','
            << format_float(r.row.std_fx) << ',' << format_float(r.row.std_fy) << ','
            << r.row.fallback_count << ',' << format_float(r.row.interior_rmse_f) << '\n';
    }
}

std::vector<StudyCsvRow> read_study_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("study csv: empty input");
    if (split_line(line) != split_line(study_header))
        throw std::runtime_error("study csv: unexpected header");
    std::vector<StudyCsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != 18) throw std::runtime_error("study csv: malformed row: " + line);
        StudyCsvRow r;
        r.scheme = cells[0];
        r.field = cells[1];
        r.distribution = cells[2];
        r.seed = std::stoull(cells[3]);
        r.row.n_particles = std::stoull(cells[4]);
        r.row.h = parse_double(cells[5]);
        r.row.mean_interior_n = parse_double(cells[6]);
        r.row.rmse_f = parse_double(cells[7]);
        r.row.rmse_fx = parse_double(cells[8]);
        r.row.rmse_fy = parse_double(cells[9]);
        r.row.rmse_fxx = parse_opt(cells[10]);
        r.row.rmse_fxy = parse_opt(cells[11]);
        r.row.rmse_fyy = parse_opt(cells[12]);
        r.row.std_f = parse_double(cells[13]);
        r.row.std_fx = parse_double(cells[14]);
        r.row.std_fy = parse_double(cells[15]);
        r.row.fallback_count = std::stoull(cells[16]);
        r.row.degraded = r.row.fallback_count * 100 > r.row.n_particles;
        r.row.interior_rmse_f = parse_double(cells[17]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

struct GroupKey {
    std::string scheme, field, distribution;
    auto operator<=>(const GroupKey&) const = default;
};

std::map<GroupKey, std::vector<const StudyCsvRow*>> group_rows(
    std::span<const StudyCsvRow> rows) {
    std::map<GroupKey, std::vector<const StudyCsvRow*>> groups;
    for (const auto& r : rows) groups[{r.scheme, r.field, r.distribution}].push_back(&r);
    return groups;
}

constexpr Quantity all_quantities[] = {Quantity::F,   Quantity::Fx,  Quantity::Fy,
                                       Quantity::Fxx, Quantity::Fxy, Quantity::Fyy};

std::optional<double> row_rmse(const StudyCsvRow& r, Quantity q) {
    switch (q) {
        case Quantity::F: return r.row.rmse_f;
        case Quantity::Fx: return r.row.rmse_fx;
        case Quantity::Fy: return r.row.rmse_fy;
        case Quantity::Fxx: return r.row.rmse_fxx;
        case Quantity::Fxy: return r.row.rmse_fxy;
        case Quantity::Fyy: return r.row.rmse_fyy;
    }
    return std::nullopt;
}

}  // namespace

std::vector<SlopeCsvRow> fit_all_slopes(std::span<const StudyCsvRow> rows) {
    std::vector<SlopeCsvRow> out;
    for (const auto& [key, group] : group_rows(rows)) {
        for (Quantity q : all_quantities) {
            std::vector<double> xs, ys;
            for (const auto* r : group) {
                const auto v = row_rmse(*r, q);
                if (!v) continue;
                xs.push_back(static_cast<double>(r->row.n_particles));
                ys.push_back(*v);
            }
            if (xs.size() < 2) continue;
            SlopeCsvRow s;
            s.scheme = key.scheme;
            s.field = key.field;
            s.distribution = key.distribution;
            s.quantity = quantity_name(q);
            s.fit = fit_loglog_slope(xs, ys);
            out.push_back(std::move(s));
        }
    }
    return out;
}

void write_slopes_csv(std::span<const SlopeCsvRow> rows, std::ostream& out) {
    out << "scheme,field,distribution,quantity,slope,intercept,r2,points\n";
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.field << ',' << r.distribution << ',' << r.quantity << ','
            << format_float(r.fit.slope) << ',' << format_float(r.fit.intercept) << ','
            << format_float(r.fit.r2) << ',' << r.fit.points << '\n';
    }
}

std::string render_slope_table(std::span<const StudyCsvRow> rows) {
    static constexpr const char* scheme_order[] = {"sph",  "cspm",  "fpm", "msph",
                                                   "sphn", "cspmn", "fpmn"};
    const auto slopes = fit_all_slopes(rows);

    std::vector<std::string> distributions;
    for (const auto& r : rows)
        if (std::find(distributions.begin(), distributions.end(), r.distribution) ==
            distributions.end())
            distributions.push_back(r.distribution);

    std::ostringstream out;
    for (const auto& dist : distributions) {
        std::vector<std::string> schemes;
        std::vector<std::string> fields;
        for (const auto& r : rows) {
            if (r.distribution != dist) continue;
            if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
                schemes.push_back(r.scheme);
            if (std::find(fields.begin(), fields.end(), r.field) == fields.end())
                fields.push_back(r.field);
        }
        std::sort(schemes.begin(), schemes.end(), [](const auto& a, const auto& b) {
            const auto pos = [](const std::string& s) {
                for (std::size_t i = 0; i < std::size(scheme_order); ++i)
                    if (s == scheme_order[i]) return i;
                return std::size(scheme_order);
            };
            return pos(a) < pos(b);
        });
        std::sort(fields.begin(), fields.end());

        out << "RMSE convergence slopes (" << dist << " distribution)\n";
        out << "  quantity";
        for (const auto& s : schemes) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), " %8s", s.c_str());
            out << buf;
        }
        out << '\n';
        for (const auto& field : fields) {
            for (Quantity q : all_quantities) {
                char label[24];
                std::snprintf(label, sizeof(label), "  %-8s",
                              (field + "_" + quantity_name(q)).c_str());
                out << label;
                bool any = false;
                std::string line;
                for (const auto& s : schemes) {
                    const auto it = std::find_if(slopes.begin(), slopes.end(), [&](const auto& r) {
                        return r.scheme == s && r.field == field && r.distribution == dist &&
                               r.quantity == quantity_name(q);
                    });
                    char cell[16];
                    if (it == slopes.end()) {
                        std::snprintf(cell, sizeof(cell), " %8s", "-----");
                    } else {
                        std::snprintf(cell, sizeof(cell), " %8.2f", it->fit.slope);
                        any = true;
                    }
                    line += cell;
                }
                if (any)
                    out << line << '\n';
                else
                    out << " (not estimated)\n";
            }
        }
        out << '\n';
    }

    std::string footnotes;
    for (const auto& r : rows) {
        if (!r.row.degraded) continue;
        footnotes += "  " + r.scheme + " " + r.field + " " + r.distribution +
                     " N=" + std::to_string(r.row.n_particles) + ": " +
                     std::to_string(r.row.fallback_count) + " fallback particles\n";
    }
    if (!footnotes.empty()) out << "degraded rows (fallbacks exceeded 1% of N):\n" << footnotes;
    return out.str();
}

}  // namespace sphlab
