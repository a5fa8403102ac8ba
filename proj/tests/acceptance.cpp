// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion plus the measured numbers behind it.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "sphlab/consistency.hpp"
#include "sphlab/experiments.hpp"
#include "sphlab/fields.hpp"
#include "sphlab/kernel.hpp"
#include "sphlab/particles.hpp"
#include "sphlab/schemes.hpp"
#include "sphlab/statistics.hpp"

using namespace sphlab;

namespace {

constexpr double pi = 3.14159265358979323846;

struct Criterion {
    int id;
    std::string title;
    bool ok = true;

    Criterion(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

    void check(bool passed, const std::string& detail) {
        std::printf("    %-4s %s\n", passed ? "ok" : "FAIL", detail.c_str());
        ok = ok && passed;
    }
    bool finish() const {
        std::printf("criterion %d (%s): %s\n\n", id, title.c_str(), ok ? "PASS" : "FAIL");
        return ok;
    }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// reference resolution ladder: particle count, interior neighbor count,
// smoothing length
struct LadderRef {
    std::size_t n_particles;
    double neighbors;
    double h;
};
constexpr LadderRef ladder_ref[] = {
    {625, 213, 0.342},    {2500, 556, 0.271},   {5625, 973, 0.237},    {10000, 1436, 0.215},
    {15625, 1933, 0.200}, {22500, 2472, 0.188}, {30625, 3041, 0.179},  {40000, 3648, 0.170},
    {62500, 4880, 0.158}, {90000, 6288, 0.149}, {160000, 9216, 0.136}, {250000, 12416, 0.126},
    {562500, 21328, 0.110}};

std::vector<std::size_t> ladder_rows(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t i = first; i <= last; ++i) out.push_back(ladder_ref[i - 1].n_particles);
    return out;
}

StudyResult run(const char* scheme_token, SchemeConfig scheme, FieldId field, Distribution dist,
                std::vector<std::size_t> ladder) {
    StudyConfig cfg;
    cfg.scheme = scheme;
    cfg.scheme_name = scheme_token;
    cfg.field = field;
    cfg.distribution = dist;
    cfg.ladder = std::move(ladder);
    cfg.threads = 0;
    std::fprintf(stderr, "  [run] %s %s %s\n", scheme_token, field_name(field), dist.name());
    return run_study(cfg);
}

SlopeFit fit_rows(const StudyResult& study, Quantity q, std::size_t first, std::size_t last) {
    std::vector<double> xs, ys;
    for (std::size_t i = first; i <= last && i <= study.rows.size(); ++i) {
        xs.push_back(static_cast<double>(study.rows[i - 1].n_particles));
        ys.push_back(study.rows[i - 1].rmse(q));
    }
    return fit_loglog_slope(xs, ys);
}

std::uint64_t rng_state = 0xacce97edULL;
double urand() { return detail::unit_double(detail::splitmix64_next(rng_state)); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> sample_field(const ParticleSet& p, FieldId id) {
    std::vector<double> f(p.size());
    for (std::size_t a = 0; a < p.size(); ++a)
        f[a] = exact_field(id, Quantity::F, p.x[a], p.y[a]);
    return f;
}

// ---------------------------------------------------------------- criteria

bool criterion_1() {
    Criterion c(1, "reference ladder: smoothing lengths and interior neighbor counts");
    const auto start = std::chrono::steady_clock::now();
    const auto scaled = SchemeConfig::scaled_n(SchemeVariant::Standard);
    double max_h_err = 0.0;
    for (const auto& row : ladder_ref)
        max_h_err =
            std::max(max_h_err, std::abs(smoothing_length_for(row.n_particles, scaled) - row.h));
    c.check(max_h_err <= 0.001,
            fmt("h = N^(-1/6) matches all 13 reference rows, max deviation %.2g (<= 0.001)",
                max_h_err));

    for (const auto& row : ladder_ref) {
        if (row.n_particles > 90000) break;
        const auto p = generate_regular(row.n_particles);
        const double h = smoothing_length_for(row.n_particles, scaled);
        const auto mean = mean_interior_neighbors(p, h);
        const double ratio = mean.value_or(0.0) / row.neighbors;
        c.check(mean.has_value() && ratio > 0.9 && ratio < 1.1,
                fmt("N=%-6zu interior n = %.1f vs reference %.0f (ratio %.3f within 10%%)",
                    row.n_particles, mean.value_or(0.0), row.neighbors, ratio));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(seconds < 60.0, fmt("runtime %.1f s (< 60 s)", seconds));
    return c.finish();
}

struct StudyBank {
    // fixed-n regular, ladder rows 1-10
    StudyResult sph_f1, sph_f2, cspm_f1, cspm_f2, fpm_f1, fpm_f2, msph_f1, msph_f2;
    // fixed-n irregular, first field only
    StudyResult cspm_f1_irr, fpm_f1_irr, msph_f1_irr;
    // scaled-n regular and irregular, ladder rows 1-9
    StudyResult scaled_reg[3][2];
    StudyResult scaled_irr[3][2];
};

StudyBank run_all_studies() {
    StudyBank bank;
    const auto fixed_rows = ladder_rows(1, 10);
    const auto scaled_rows = ladder_rows(1, 9);
    const auto reg = Distribution::regular();
    const auto irr = Distribution::irregular(0.45, 42);

    bank.sph_f1 =
        run("sph", SchemeConfig::fixed_n(SchemeVariant::Standard), FieldId::F1, reg, fixed_rows);
    bank.sph_f2 =
        run("sph", SchemeConfig::fixed_n(SchemeVariant::Standard), FieldId::F2, reg, fixed_rows);
    bank.cspm_f1 =
        run("cspm", SchemeConfig::fixed_n(SchemeVariant::CSPM), FieldId::F1, reg, fixed_rows);
    bank.cspm_f2 =
        run("cspm", SchemeConfig::fixed_n(SchemeVariant::CSPM), FieldId::F2, reg, fixed_rows);
    bank.fpm_f1 =
        run("fpm", SchemeConfig::fixed_n(SchemeVariant::FPM), FieldId::F1, reg, fixed_rows);
    bank.fpm_f2 =
        run("fpm", SchemeConfig::fixed_n(SchemeVariant::FPM), FieldId::F2, reg, fixed_rows);
    bank.msph_f1 =
        run("msph", SchemeConfig::fixed_n(SchemeVariant::MSPH), FieldId::F1, reg, fixed_rows);
    bank.msph_f2 =
        run("msph", SchemeConfig::fixed_n(SchemeVariant::MSPH), FieldId::F2, reg, fixed_rows);

    bank.cspm_f1_irr =
        run("cspm", SchemeConfig::fixed_n(SchemeVariant::CSPM), FieldId::F1, irr, fixed_rows);
    bank.fpm_f1_irr =
        run("fpm", SchemeConfig::fixed_n(SchemeVariant::FPM), FieldId::F1, irr, fixed_rows);
    bank.msph_f1_irr =
        run("msph", SchemeConfig::fixed_n(SchemeVariant::MSPH), FieldId::F1, irr, fixed_rows);

    const SchemeVariant variants[3] = {SchemeVariant::Standard, SchemeVariant::CSPM,
                                       SchemeVariant::FPM};
    const char* tokens[3] = {"sphn", "cspmn", "fpmn"};
    const FieldId fields[2] = {FieldId::F1, FieldId::F2};
    for (int s = 0; s < 3; ++s) {
        for (int f = 0; f < 2; ++f) {
            bank.scaled_reg[s][f] =
                run(tokens[s], SchemeConfig::scaled_n(variants[s]), fields[f], reg, scaled_rows);
            bank.scaled_irr[s][f] =
                run(tokens[s], SchemeConfig::scaled_n(variants[s]), fields[f], irr, scaled_rows);
        }
    }
    return bank;
}

bool criterion_2(const StudyBank& bank) {
    Criterion c(2, "regular-distribution convergence slopes, fixed-neighbor schemes");
    const auto near = [&](const char* label, double slope, double target) {
        c.check(std::abs(slope - target) <= 0.2,
                fmt("%-28s slope %+.3f vs %+.2f (+-0.2)", label, slope, target));
    };
    // the function estimate plateaus: the first four rows decay, the rest
    // sit on the fixed-n discretization floor
    near("sph f1 pre-plateau (rows 1-4)", fit_rows(bank.sph_f1, Quantity::F, 1, 4).slope, -0.75);
    near("sph f1 plateau (rows 5-10)", fit_rows(bank.sph_f1, Quantity::F, 5, 10).slope, 0.0);
    near("sph f2", bank.sph_f2.fit_rmse(Quantity::F).slope, -0.28);
    near("cspm f1", bank.cspm_f1.fit_rmse(Quantity::F).slope, -0.76);
    near("cspm f2", bank.cspm_f2.fit_rmse(Quantity::F).slope, -0.76);
    near("fpm f1", bank.fpm_f1.fit_rmse(Quantity::F).slope, -1.0);
    near("fpm f2", bank.fpm_f2.fit_rmse(Quantity::F).slope, -1.0);
    near("msph f1", bank.msph_f1.fit_rmse(Quantity::F).slope, -1.76);
    near("msph f2", bank.msph_f2.fit_rmse(Quantity::F).slope, -1.76);
    near("msph f1 fx", bank.msph_f1.fit_rmse(Quantity::Fx).slope, -1.0);
    near("msph f1 fy", bank.msph_f1.fit_rmse(Quantity::Fy).slope, -1.0);
    near("msph f2 fx", bank.msph_f2.fit_rmse(Quantity::Fx).slope, -1.0);
    near("msph f2 fy", bank.msph_f2.fit_rmse(Quantity::Fy).slope, -1.0);
    near("msph f1 fxx", bank.msph_f1.fit_rmse(Quantity::Fxx).slope, -0.75);
    near("msph f1 fxy", bank.msph_f1.fit_rmse(Quantity::Fxy).slope, -1.0);
    near("msph f1 fyy", bank.msph_f1.fit_rmse(Quantity::Fyy).slope, -0.75);
    return c.finish();
}

bool criterion_3(const StudyBank& bank) {
    Criterion c(3, "regular-distribution convergence slopes, scaled-neighbor schemes");
    // reference convergence-rate table: {f, fx, fy} per field, per scheme
    const double targets[3][2][3] = {
        {{-0.97, -0.77, -0.77}, {-0.78, -0.77, -0.77}},  // sphn
        {{-0.92, -0.94, -0.94}, {-0.92, -0.91, -0.91}},  // cspmn
        {{-1.00, -0.95, -0.95}, {-0.98, -0.93, -0.93}},  // fpmn
    };
    const char* tokens[3] = {"sphn", "cspmn", "fpmn"};
    const Quantity quantities[3] = {Quantity::F, Quantity::Fx, Quantity::Fy};
    for (int s = 0; s < 3; ++s)
        for (int f = 0; f < 2; ++f)
            for (int q = 0; q < 3; ++q) {
                const double slope = bank.scaled_reg[s][f].fit_rmse(quantities[q]).slope;
                const double target = targets[s][f][q];
                c.check(std::abs(slope - target) <= 0.2,
                        fmt("%-5s %s %-3s slope %+.3f vs %+.2f (+-0.2)", tokens[s],
                            f == 0 ? "f1" : "f2", quantity_name(quantities[q]), slope, target));
            }
    return c.finish();
}

bool criterion_4(const StudyBank& bank) {
    Criterion c(4, "error-standard-deviation decay against neighbor count");
    const char* tokens[3] = {"sphn", "cspmn", "fpmn"};
    for (int s = 0; s < 3; ++s)
        for (int f = 0; f < 2; ++f) {
            const double slope = bank.scaled_reg[s][f].fit_std_vs_n(Quantity::F).slope;
            c.check(slope >= -1.15 && slope <= -0.85,
                    fmt("%-5s %s std(f)-vs-n exponent %+.3f (required in [-1.15, -0.85])",
                        tokens[s], f == 0 ? "f1" : "f2", slope));
        }
    return c.finish();
}

bool criterion_5(const StudyBank& bank) {
    Criterion c(5, "irregular-distribution insensitivity and qualitative degradation");
    const char* tokens[3] = {"sphn", "cspmn", "fpmn"};
    const Quantity quantities[3] = {Quantity::F, Quantity::Fx, Quantity::Fy};
    for (int s = 0; s < 3; ++s)
        for (int f = 0; f < 2; ++f)
            for (Quantity q : quantities) {
                const double reg = bank.scaled_reg[s][f].fit_rmse(q).slope;
                const double irr = bank.scaled_irr[s][f].fit_rmse(q).slope;
                c.check(std::abs(reg - irr) <= 0.15,
                        fmt("%-5s %s %-3s |regular %+.3f - irregular %+.3f| = %.3f (<= 0.15)",
                            tokens[s], f == 0 ? "f1" : "f2", quantity_name(q), reg, irr,
                            std::abs(reg - irr)));
            }

    const struct {
        const char* name;
        const StudyResult* reg;
        const StudyResult* irr;
    } fixed[] = {{"cspm", &bank.cspm_f1, &bank.cspm_f1_irr},
                 {"fpm", &bank.fpm_f1, &bank.fpm_f1_irr},
                 {"msph", &bank.msph_f1, &bank.msph_f1_irr}};
    for (const auto& item : fixed) {
        const double reg = item.reg->fit_rmse(Quantity::F).slope;
        const double irr = item.irr->fit_rmse(Quantity::F).slope;
        c.check(irr - reg >= 0.05,
                fmt("%-5s f1 irregular %+.3f vs regular %+.3f: %.3f shallower (>= 0.05)",
                    item.name, irr, reg, irr - reg));
    }

    std::size_t fallback_rows = 0;
    double worst_pivot = 1.0;
    for (const auto& row : bank.msph_f1_irr.rows) {
        if (row.fallback_count > 0) ++fallback_rows;
        worst_pivot = std::min(worst_pivot, row.min_pivot_ratio);
    }
    c.check(fallback_rows > 0 || worst_pivot < 1e-9,
            fmt("msph on jittered sets: %zu of %zu ladder rows with fallbacks, worst pivot "
                "ratio %.2g",
                fallback_rows, bank.msph_f1_irr.rows.size(), worst_pivot));
    return c.finish();
}

bool criterion_6() {
    Criterion c(6, "exactness properties on 20 seeded sets");
    const std::size_t sizes[5] = {100, 144, 196, 256, 400};
    double worst_const = 0.0, worst_linear = 0.0, worst_quad = 0.0;
    double worst_translation = 0.0, worst_rotation = 0.0;
    std::size_t quad_checked = 0, quad_skipped = 0;

    for (int set = 0; set < 20; ++set) {
        const std::size_t n = sizes[set % 5];
        const auto p = generate_irregular(n, 0.45, 100 + static_cast<std::uint64_t>(set));
        const auto cfg = SchemeConfig::fixed_n(SchemeVariant::Standard);
        const double h = smoothing_length_for(n, cfg);
        const auto nl = build_neighbor_list(p, cfg.support_radius(h));
        const auto kernel = cfg.kernel;

        // constants through the Shepard-normalized estimate
        const std::vector<double> constant(n, 3.25);
        const auto cspm = estimate_cspm(constant, p, nl, kernel, h);
        for (std::size_t a = 0; a < n; ++a)
            worst_const = std::max(worst_const, std::abs(cspm.f[a] - 3.25));

        // linear fields through the first-order simultaneous solve
        std::vector<double> linear(n);
        for (std::size_t a = 0; a < n; ++a) linear[a] = 1.75 * p.x[a] - 0.6 * p.y[a] + 0.2;
        const auto fpm = estimate_fpm(linear, p, nl, kernel, h);
        for (std::size_t a = 0; a < n; ++a) {
            worst_linear = std::max(worst_linear, std::abs(fpm.f[a] - linear[a]));
            worst_linear = std::max(worst_linear, std::abs(fpm.fx[a] - 1.75));
            worst_linear = std::max(worst_linear, std::abs(fpm.fy[a] + 0.6));
        }

        // quadratics through the second-order solve, interior particles
        std::vector<double> quad(n);
        for (std::size_t a = 0; a < n; ++a)
            quad[a] = 1.5 * p.x[a] * p.x[a] - 0.8 * p.x[a] * p.y[a] + 2.3 * p.y[a] * p.y[a] +
                      0.7 * p.x[a] + 0.1;
        const auto msph = estimate_msph(quad, p, nl, kernel, h);
        const double margin = cfg.support_radius(h);
        for (std::size_t a = 0; a < n; ++a) {
            if (!(p.x[a] > margin && 1.0 - p.x[a] > margin && p.y[a] > margin &&
                  1.0 - p.y[a] > margin))
                continue;
            if (msph.fallback[a]) {
                ++quad_skipped;
                continue;
            }
            ++quad_checked;
            worst_quad = std::max(worst_quad, std::abs(msph.f[a] - quad[a]));
            worst_quad =
                std::max(worst_quad, std::abs(msph.fx[a] - (3.0 * p.x[a] - 0.8 * p.y[a] + 0.7)));
            worst_quad =
                std::max(worst_quad, std::abs(msph.fy[a] - (-0.8 * p.x[a] + 4.6 * p.y[a])));
            worst_quad = std::max(worst_quad, std::abs(msph.fxx[a] - 3.0));
            worst_quad = std::max(worst_quad, std::abs(msph.fxy[a] + 0.8));
            worst_quad = std::max(worst_quad, std::abs(msph.fyy[a] - 4.6));
        }

        // translation identity through the discrete moments
        const auto rep = discrete_moments(p, nl, kernel, h);
        std::vector<double> coord(n), shifted(n), ones(n, 1.0);
        for (std::size_t a = 0; a < n; ++a) {
            coord[a] = p.x[a];
            shifted[a] = p.x[a] + 0.37;
        }
        const auto e0 = estimate_standard(coord, p, nl, kernel, h);
        const auto e1 = estimate_standard(shifted, p, nl, kernel, h);
        for (std::size_t a = 0; a < n; ++a)
            worst_translation =
                std::max(worst_translation, std::abs(e1.f[a] - (e0.f[a] + 0.37 * rep.m0[a])));

        // rotation identity: constant-corrected linear gradients factor
        // through the gradient-moment matrix
        const double g1 = 2.0, g2 = -3.0;
        std::vector<double> lin2(n);
        for (std::size_t a = 0; a < n; ++a) lin2[a] = g1 * p.x[a] + g2 * p.y[a];
        const auto ge = estimate_standard(lin2, p, nl, kernel, h);
        const auto oe = estimate_standard(ones, p, nl, kernel, h);
        for (std::size_t a = 0; a < n; ++a) {
            const double va = lin2[a];
            worst_rotation = std::max(worst_rotation, std::abs((ge.fx[a] - va * oe.fx[a]) -
                                                               (g1 * rep.g11[a] +
                                                                g2 * rep.g21[a])));
            worst_rotation = std::max(worst_rotation, std::abs((ge.fy[a] - va * oe.fy[a]) -
                                                               (g1 * rep.g12[a] +
                                                                g2 * rep.g22[a])));
        }
    }
    c.check(worst_const <= 1e-10,
            fmt("shepard/cspm constants: worst defect %.2g (<= 1e-10)", worst_const));
    c.check(worst_linear <= 1e-10,
            fmt("fpm linear fields incl. boundary: worst defect %.2g (<= 1e-10)", worst_linear));
    c.check(worst_quad <= 1e-8 && quad_checked > 0,
            fmt("msph quadratics on %zu interior particles (%zu fallback skipped): worst "
                "defect %.2g (<= 1e-8)",
                quad_checked, quad_skipped, worst_quad));
    c.check(worst_translation <= 1e-12,
            fmt("translation identity: worst defect %.2g (<= 1e-12)", worst_translation));
    c.check(worst_rotation <= 1e-12,
            fmt("rotation identity: worst defect %.2g (<= 1e-12)", worst_rotation));
    return c.finish();
}

bool criterion_7() {
    Criterion c(7, "oracle equivalence with the O(N^2) double loop");
    const struct {
        SchemeConfig cfg;
        const char* name;
    } cases[] = {
        {SchemeConfig::fixed_n(SchemeVariant::Standard), "sph"},
        {SchemeConfig::fixed_n(SchemeVariant::CSPM), "cspm"},
        {SchemeConfig::fixed_n(SchemeVariant::FPM), "fpm"},
        {SchemeConfig::fixed_n(SchemeVariant::MSPH), "msph"},
        {SchemeConfig::scaled_n(SchemeVariant::Standard), "sphn"},
        {SchemeConfig::scaled_n(SchemeVariant::CSPM), "cspmn"},
        {SchemeConfig::scaled_n(SchemeVariant::FPM), "fpmn"},
    };
    for (const std::size_t n : {std::size_t{100}, std::size_t{400}}) {
        for (const bool jittered : {false, true}) {
            const auto p = jittered ? generate_irregular(n, 0.45, 2000 + n) : generate_regular(n);
            const auto field = sample_field(p, FieldId::F2);
            double worst = 0.0;
            for (const auto& item : cases) {
                const double h = smoothing_length_for(n, item.cfg);
                const auto nl = build_neighbor_list(p, item.cfg.support_radius(h));
                const auto got = estimate(item.cfg, field, p, nl, h);
                SchemeEstimate want;
                switch (item.cfg.variant) {
                    case SchemeVariant::Standard:
                        want = testing::brute_standard(field, p, item.cfg.kernel, h);
                        break;
                    case SchemeVariant::CSPM:
                        want = testing::brute_cspm(field, p, item.cfg.kernel, h);
                        break;
                    case SchemeVariant::FPM:
                        want = testing::brute_fpm(field, p, item.cfg.kernel, h);
                        break;
                    case SchemeVariant::MSPH:
                        want = testing::brute_msph(field, p, item.cfg.kernel, h);
                        break;
                }
                worst = std::max(worst, max_abs_diff(got.f, want.f));
                worst = std::max(worst, max_abs_diff(got.fx, want.fx));
                worst = std::max(worst, max_abs_diff(got.fy, want.fy));
                if (item.cfg.variant == SchemeVariant::MSPH) {
                    worst = std::max(worst, max_abs_diff(got.fxx, want.fxx));
                    worst = std::max(worst, max_abs_diff(got.fxy, want.fxy));
                    worst = std::max(worst, max_abs_diff(got.fyy, want.fyy));
                }
            }
            c.check(worst <= 1e-13,
                    fmt("N=%zu %s: worst |difference| over all schemes and quantities %.2g "
                        "(<= 1e-13)",
                        n, jittered ? "jittered" : "regular", worst));
        }
    }
    return c.finish();
}

bool criterion_8() {
    Criterion c(8, "kernel suite: normalization, derivatives, scaling, variance term");
    const auto kernels = {SmoothingKernel::cubic_spline(), SmoothingKernel::wendland_c4()};

    double worst_norm = 0.0;
    for (const auto& k : kernels)
        for (const double h : {0.11, 0.342, 1.0})
            worst_norm = std::max(worst_norm, std::abs(continuous_moment(k, 0, h) - 1.0));
    c.check(worst_norm <= 1e-6,
            fmt("normalization quadrature: worst |moment0 - 1| %.2g (<= 1e-6)", worst_norm));

    rng_state = 0xacce97edULL;
    double worst_fd = 0.0;
    for (const auto& k : kernels) {
        for (int i = 0; i < 100; ++i) {
            const double h = 0.1 + 1.9 * urand();
            const double q = 0.95 * k.support_factor() * urand();
            const double phi = 2.0 * pi * urand();
            const double dx = q * h * std::cos(phi), dy = q * h * std::sin(phi);
            const double e = 1e-5 * h;
            const auto d = kernel_derivatives(k, dx, dy, h);
            const auto w = [&](double x, double y) {
                return kernel_value(k, std::sqrt(x * x + y * y), h);
            };
            // a central difference of w cannot resolve below eps*w/e^order,
            // so "relative" is anchored to the local value per length power
            const double local = std::max(w(dx, dy), 1e-9 * kernel_value(k, 0.0, h));
            const double ref1 = local / h;
            const double ref2 = ref1 / h;
            const double fd_x = (w(dx + e, dy) - w(dx - e, dy)) / (2 * e);
            const double fd_y = (w(dx, dy + e) - w(dx, dy - e)) / (2 * e);
            const double fd_xx = (w(dx + e, dy) - 2 * w(dx, dy) + w(dx - e, dy)) / (e * e);
            const double fd_yy = (w(dx, dy + e) - 2 * w(dx, dy) + w(dx, dy - e)) / (e * e);
            const double fd_xy = (w(dx + e, dy + e) - w(dx + e, dy - e) - w(dx - e, dy + e) +
                                  w(dx - e, dy - e)) /
                                 (4 * e * e);
            const auto rel = [](double fd, double an, double floor_scale) {
                return std::abs(fd - an) / std::max(std::abs(an), floor_scale);
            };
            worst_fd = std::max({worst_fd, rel(fd_x, d.wx, ref1), rel(fd_y, d.wy, ref1),
                                 rel(fd_xx, d.wxx, ref2), rel(fd_yy, d.wyy, ref2),
                                 rel(fd_xy, d.wxy, ref2)});
        }
    }
    c.check(worst_fd <= 1e-4,
            fmt("derivative finite-difference check at 200 seeded points: worst relative "
                "deviation %.2g (<= 1e-4)",
                worst_fd));

    double worst_scaling = 0.0;
    for (const auto& k : kernels) {
        worst_scaling = std::max(worst_scaling, scaling_relation_defect(k, 0.7, 0.3));
        worst_scaling = std::max(worst_scaling, scaling_relation_defect(k, 0.5, 2.0));
        worst_scaling = std::max(worst_scaling, scaling_relation_defect(k, 1.9, 0.11));
        for (int i = 0; i < 100; ++i)
            worst_scaling = std::max(
                worst_scaling, scaling_relation_defect(k, 2.2 * urand(), 0.05 + 3.0 * urand()));
    }
    c.check(worst_scaling <= 1e-12,
            fmt("scaling relation: worst defect %.2g (<= 1e-12)", worst_scaling));

    const auto p = generate_regular(10000);
    const auto wendland = SmoothingKernel::wendland_c4();
    const double hs[3] = {0.342, 0.237, 0.171};
    double sigma[3];
    for (int i = 0; i < 3; ++i) {
        const auto nl = build_neighbor_list(p, hs[i]);
        sigma[i] = discrete_moments(p, nl, wendland, hs[i]).interior_mean_sigma2;
    }
    double worst_sigma = 0.0;
    for (int i = 1; i < 3; ++i) {
        const double expected = (hs[i] / hs[0]) * (hs[i] / hs[0]);
        worst_sigma = std::max(worst_sigma, std::abs(sigma[i] / sigma[0] / expected - 1.0));
    }
    c.check(worst_sigma <= 0.05,
            fmt("sigma^2 proportional to h^2: worst ratio deviation %.2g (<= 5%%)", worst_sigma));
    return c.finish();
}

bool criterion_9(const StudyBank& bank) {
    Criterion c(9, "squared-metric slope doubling for the second-order scheme");
    const auto demo = msph_mse_vs_rmse_demo(bank.msph_f1);
    c.check(std::abs(demo.mse_slope - 2.0 * demo.rmse_slope) <= 1e-12,
            fmt("mse slope %+.4f = 2 x rmse slope %+.4f (identity to 1e-12)", demo.mse_slope,
                demo.rmse_slope));
    c.check(std::abs(demo.mse_slope - (-3.52)) <= 0.4,
            fmt("doubled slope %+.3f within +-0.4 of -3.52", demo.mse_slope));
    return c.finish();
}

}  // namespace

int main() {
    std::printf("sphlab acceptance suite\n\n");
    int failures = 0;

    failures += criterion_1() ? 0 : 1;

    std::fprintf(stderr, "running convergence studies (this is the long part)...\n");
    const StudyBank bank = run_all_studies();

    failures += criterion_2(bank) ? 0 : 1;
    failures += criterion_3(bank) ? 0 : 1;
    failures += criterion_4(bank) ? 0 : 1;
    failures += criterion_5(bank) ? 0 : 1;
    failures += criterion_6() ? 0 : 1;
    failures += criterion_7() ? 0 : 1;
    failures += criterion_8() ? 0 : 1;
    failures += criterion_9(bank) ? 0 : 1;

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
