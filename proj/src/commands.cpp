#include "hhdkit/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hhdkit/field_spec.hpp"

namespace hhdkit {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double strictness_threshold(const CommonOptions& opts) {
    // strictly_orthogonal in a report always implies the diagnostic norm is
    // at most 1e-8; --tol can only tighten that
    return std::min(opts.tol, 1e-8);
}

SolverOptions solver_options(const CommonOptions& opts) {
    SolverOptions s;
    s.tolerance = std::min(opts.tol, 1e-10);
    s.seed = opts.seed;
    return s;
}

CommandResult decompose_linear(const RealMatrix& a, const nlohmann::json& echo,
                               const CommonOptions& opts) {
    CommandResult out;
    out.report.command = "decompose";
    out.report.input_echo = echo;
    RiccatiSolve solve = solve_riccati(a, solver_options(opts));
    if (solve.ok()) {
        out.report.linear = *solve.hhd;
        out.report.diagnostics = solve.report;
    } else {
        out.report.linear = symmetric_split(a);
        out.report.diagnostics = diagnose(*out.report.linear);
        out.report.failure_reason =
            "riccati solver found no strictly orthogonal decomposition (" +
            (solve.message.empty() ? solve.route : solve.message) + "); symmetric split reported";
    }
    out.report.strictly_orthogonal =
        out.report.diagnostics->orthogonality_norm <= strictness_threshold(opts);
    out.exit_code = kExitOk;
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SpecError("cannot open " + path.string() + " for writing");
    f << contents;
    if (!f) throw SpecError("failed writing " + path.string());
}

}  // namespace

CommandResult cmd_decompose(const nlohmann::json& doc, const CommonOptions& opts) {
    FieldSpec spec = parse_field_spec(doc);
    switch (spec.kind) {
        case FieldKind::Linear:
            return decompose_linear(*spec.matrix, doc, opts);
        case FieldKind::Vdp: {
            RealMatrix a(2, 2);
            a << 0.0, 1.0, -1.0, *spec.mu;
            return decompose_linear(a, doc, opts);
        }
        case FieldKind::PlanarPoly: {
            CommandResult out;
            out.report.command = "decompose";
            out.report.input_echo = doc;
            out.report.planar = complex_potential(*spec.f_terms, *spec.g_terms);
            out.report.defect_norm =
                strict_orthogonality_defect(*out.report.planar).max_abs_coeff();
            out.report.strictly_orthogonal = *out.report.defect_norm <= strictness_threshold(opts);
            out.exit_code = kExitOk;
            return out;
        }
        case FieldKind::QuadHomogeneous: {
            CommandResult out;
            out.report.command = "decompose";
            out.report.input_echo = doc;
            QuadHomField q = quad_from_spec(spec);
            Outcome<PlanarHhd> solved = solve_quadratic(q);
            if (!solved.ok()) {
                out.report.strictly_orthogonal = false;
                out.report.failure_reason = solved.error;
                out.exit_code = kExitNoDecomposition;
                return out;
            }
            out.report.planar = *solved;
            out.report.defect_norm =
                strict_orthogonality_defect(*out.report.planar).max_abs_coeff();
            out.report.strictly_orthogonal = *out.report.defect_norm <= strictness_threshold(opts);
            out.exit_code = kExitOk;
            return out;
        }
    }
    throw SpecError("unhandled field kind");
}

CommandResult cmd_sde(const nlohmann::json& doc, const CommonOptions& opts) {
    FieldSpec spec = parse_field_spec(doc, {"d_matrix", "p_matrix"});
    if (spec.kind != FieldKind::Linear) {
        throw SpecError("sde command requires kind 'linear'");
    }
    const RealMatrix& a = *spec.matrix;
    const Eigen::Index n = a.rows();

    CommandResult out;
    out.report.command = "sde";
    out.report.input_echo = doc;

    RealMatrix dmat = doc.contains("d_matrix") ? matrix_from_json(doc["d_matrix"])
                                               : RealMatrix(RealMatrix::Identity(n, n));
    if (dmat.rows() != n) throw SpecError("d_matrix dimension does not match the field");

    LinearHhd hhd;
    if (doc.contains("p_matrix")) {
        RealMatrix p = matrix_from_json(doc["p_matrix"]);
        if (p.rows() != n) throw SpecError("p_matrix dimension does not match the field");
        if (!is_symmetric(p, kDefaultTol)) throw SpecError("p_matrix must be symmetric");
        hhd = LinearHhd{p, a + p, a};
    } else {
        RiccatiSolve solve = solve_riccati(a, solver_options(opts));
        hhd = solve.ok() ? *solve.hhd : symmetric_split(a);
    }
    out.report.linear = hhd;
    out.report.diagnostics = diagnose(hhd);
    out.report.strictly_orthogonal =
        out.report.diagnostics->orthogonality_norm <= strictness_threshold(opts);

    const bool d_is_identity = max_abs(RealMatrix(dmat - RealMatrix::Identity(n, n))) <= 1e-12;
    if (d_is_identity && out.report.strictly_orthogonal) {
        Outcome<SdeDecomposition> sde = hhd_to_sde(hhd);
        if (sde.ok()) {
            out.report.sde = *sde;
            out.exit_code = kExitOk;
            return out;
        }
        out.report.failure_reason = "no SDE decomposition: " + sde.error;
        out.exit_code = kExitNoDecomposition;
        return out;
    }

    Outcome<RealMatrix> q = equivalence_condition(dmat, hhd);
    if (!q.ok()) {
        out.report.failure_reason =
            "no SDE decomposition satisfies the correspondence P = DU, H = -QU: " + q.error;
        out.exit_code = kExitNoDecomposition;
        return out;
    }
    SdeDecomposition sde;
    sde.d = dmat;
    sde.q = *q;
    sde.u = dmat.inverse() * hhd.p;
    sde.f = a;
    if (auto why = validate_sde(sde, 1e-8); !why.empty()) {
        out.report.failure_reason = "candidate SDE decomposition rejected: " + why;
        out.exit_code = kExitNoDecomposition;
        return out;
    }
    out.report.sde = sde;
    out.exit_code = kExitOk;
    return out;
}

VdpArtifacts run_vdp_case_study(double mu, const GridSpec& grid,
                                const std::vector<double>& levels) {
    if (grid.nx < 1 || grid.ny < 1 || !(grid.xmax > grid.xmin) || !(grid.ymax > grid.ymin)) {
        throw SpecError("casestudy-vdp: empty grid");
    }
    VdpArtifacts art{make_vdp_case_study(mu, grid), {}, {}, {}, {}};
    art.level_sets = sample_level_sets(art.study.w, levels, grid);

    const int samples = std::max(2 * grid.nx, 128);
    if (grid.xmax > art.study.c0) {
        for (int i = 1; i <= samples; ++i) {
            const double x = art.study.c0 + (grid.xmax - art.study.c0) * i / samples;
            art.gamma_points.push_back({x, gamma_curve(mu, x)});
        }
    }
    if (mu != 0.0 && grid.xmax > 1.0) {
        for (int i = 1; i <= samples; ++i) {
            const double x = 1.0 + (grid.xmax - 1.0) * i / samples;
            art.nullcline_points.push_back({x, y_nullcline(mu, x)});
        }
    }

    art.wdot_values.reserve(static_cast<size_t>(grid.nx + 1) * (grid.ny + 1));
    auto field = [mu](const Eigen::Vector2d& p) { return vdp_field(mu, p); };
    for (int j = 0; j <= grid.ny; ++j) {
        const double y = grid.ymin + (grid.ymax - grid.ymin) * j / grid.ny;
        for (int i = 0; i <= grid.nx; ++i) {
            const double x = grid.xmin + (grid.xmax - grid.xmin) * i / grid.nx;
            art.wdot_values.push_back(
                orbital_derivative_field(art.study.w, field, Eigen::Vector2d{x, y}));
        }
    }
    return art;
}

void write_vdp_files(const VdpArtifacts& art, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::string csv = "level,polyline,point,x,y\n";
    for (const auto& lc : art.level_sets) {
        for (size_t li = 0; li < lc.lines.size(); ++li) {
            const auto& pts = lc.lines[li].points;
            for (size_t pi = 0; pi < pts.size(); ++pi) {
                csv += fmt(lc.level) + "," + std::to_string(li) + "," + std::to_string(pi) + "," +
                       fmt(pts[pi].x) + "," + fmt(pts[pi].y) + "\n";
            }
        }
    }
    write_file(dir / "levelsets.csv", csv);

    csv = "x,gamma\n";
    for (const auto& p : art.gamma_points) csv += fmt(p.x) + "," + fmt(p.y) + "\n";
    write_file(dir / "gamma.csv", csv);

    csv = "x,y\n";
    for (const auto& p : art.nullcline_points) csv += fmt(p.x) + "," + fmt(p.y) + "\n";
    write_file(dir / "nullcline.csv", csv);

    const GridSpec& g = art.study.grid;
    csv = "x,y,wdot\n";
    size_t idx = 0;
    for (int j = 0; j <= g.ny; ++j) {
        const double y = g.ymin + (g.ymax - g.ymin) * j / g.ny;
        for (int i = 0; i <= g.nx; ++i, ++idx) {
            const double x = g.xmin + (g.xmax - g.xmin) * i / g.nx;
            csv += fmt(x) + "," + fmt(y) + "," + fmt(art.wdot_values[idx]) + "\n";
        }
    }
    write_file(dir / "wdot_sign.csv", csv);

    // convenience overlay; the CSVs are the testable artifacts
    const double width = 640.0, height = 640.0;
    auto sx = [&](double x) { return (x - g.xmin) / (g.xmax - g.xmin) * width; };
    auto sy = [&](double y) { return (g.ymax - y) / (g.ymax - g.ymin) * height; };
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt3(width) +
                      " " + fmt3(height) + "\">\n";
    auto emit_polyline = [&](const std::vector<Point2>& pts, const char* style) {
        if (pts.size() < 2) return;
        svg += "<polyline fill=\"none\" ";
        svg += style;
        svg += " points=\"";
        for (const auto& p : pts) svg += fmt3(sx(p.x)) + "," + fmt3(sy(p.y)) + " ";
        svg += "\"/>\n";
    };
    for (const auto& lc : art.level_sets) {
        for (const auto& line : lc.lines) {
            emit_polyline(line.points, "stroke=\"#cc2222\" stroke-dasharray=\"6,4\"");
        }
    }
    emit_polyline(art.gamma_points, "stroke=\"#2244cc\"");
    emit_polyline(art.nullcline_points, "stroke=\"#2244cc\" stroke-dasharray=\"3,3\"");
    svg += "</svg>\n";
    write_file(dir / "overlay.svg", svg);

    nlohmann::json summary;
    summary["command"] = "casestudy-vdp";
    summary["mu"] = art.study.mu;
    summary["c0"] = art.study.c0;
    summary["p"] = matrix_to_json(art.study.p);
    summary["grid"] = {art.study.grid.xmin, art.study.grid.xmax, art.study.grid.ymin,
                       art.study.grid.ymax, art.study.grid.nx, art.study.grid.ny};
    nlohmann::json lv = nlohmann::json::array();
    for (const auto& lc : art.level_sets) lv.push_back(lc.level);
    summary["levels"] = lv;
    summary["files"] = {"levelsets.csv", "gamma.csv", "nullcline.csv", "wdot_sign.csv",
                        "overlay.svg"};
    write_file(dir / "report.json", summary.dump(2) + "\n");
}

}  // namespace hhdkit
