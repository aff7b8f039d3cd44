#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhdkit/commands.hpp"
#include "hhdkit/field_spec.hpp"

namespace {

using hhdkit::SpecError;

nlohmann::json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open input file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError("input is not valid JSON: " + std::string(e.what()));
    }
    return doc;
}

double default_tol() {
    if (const char* env = std::getenv("HHD_KIT_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw SpecError("HHD_KIT_TOL is not a number");
        }
    }
    return 1e-9;
}

hhdkit::RealMatrix parse_seed(const std::string& text, Eigen::Index n) {
    // scalar s means s * I; anything else must be a JSON array of rows
    try {
        size_t pos = 0;
        const double s = std::stod(text, &pos);
        if (pos == text.size()) {
            return hhdkit::RealMatrix(s * hhdkit::RealMatrix::Identity(n, n));
        }
    } catch (const std::exception&) {
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw SpecError("--seed must be a scalar or a JSON matrix");
    }
    return hhdkit::matrix_from_json(j);
}

std::vector<double> parse_levels(const std::string& text) {
    std::vector<double> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        levels.push_back(std::stod(item));
    }
    return levels;
}

hhdkit::GridSpec parse_grid(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (vals.size() != 6) throw SpecError("--grid needs xmin,xmax,ymin,ymax,nx,ny");
    return {vals[0], vals[1], vals[2], vals[3], static_cast<int>(vals[4]),
            static_cast<int>(vals[5])};
}

void write_report(const hhdkit::DecompositionReport& report, const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream f(dir / "report.json", std::ios::binary);
    if (!f) throw SpecError("cannot write report.json under '" + out_dir + "'");
    f << report.to_json().dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz-Hodge decompositions of linear and planar polynomial vector fields"};
    app.require_subcommand(1);

    std::string input_path, output_dir = ".", seed_text, levels_text = "-0.5,-1,-2";
    std::string grid_text = "-4,4,-4,4,160,160";
    double tol = 0.0;
    bool tol_given = false;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        auto* opt = cmd->add_option("--input", input_path, "input field JSON");
        if (needs_input) opt->required();
        cmd->add_option("--output-dir", output_dir, "directory for report.json and data files");
        cmd->add_option("--tol", tol, "tolerance override")->each([&](const std::string&) {
            tol_given = true;
        });
    };

    auto* decompose = app.add_subcommand("decompose", "compute a (strictly orthogonal) HHD");
    add_common(decompose, true);
    decompose->add_option("--seed", seed_text,
                          "Riccati exploration seed: scalar s for s*I or a JSON matrix");

    auto* sde = app.add_subcommand("sde", "express a linear HHD as F = -(D + Q) U");
    add_common(sde, true);

    auto* casestudy = app.add_subcommand("casestudy-vdp", "Van der Pol level-set case study");
    add_common(casestudy, true);
    casestudy->add_option("--levels", levels_text, "comma-separated level values");
    casestudy->add_option("--grid", grid_text, "xmin,xmax,ymin,ymax,nx,ny");

    CLI11_PARSE(app, argc, argv);

    try {
        hhdkit::CommonOptions opts;
        opts.tol = tol_given ? tol : default_tol();

        if (decompose->parsed()) {
            nlohmann::json doc = load_input(input_path);
            if (!seed_text.empty()) {
                hhdkit::FieldSpec spec = hhdkit::parse_field_spec(doc);
                if (spec.kind != hhdkit::FieldKind::Linear) {
                    throw SpecError("--seed applies to linear fields only");
                }
                opts.seed = parse_seed(seed_text, spec.matrix->rows());
            }
            hhdkit::CommandResult res = hhdkit::cmd_decompose(doc, opts);
            write_report(res.report, output_dir);
            if (res.report.failure_reason) std::cerr << *res.report.failure_reason << "\n";
            return res.exit_code;
        }
        if (sde->parsed()) {
            nlohmann::json doc = load_input(input_path);
            hhdkit::CommandResult res = hhdkit::cmd_sde(doc, opts);
            write_report(res.report, output_dir);
            if (res.report.failure_reason) std::cerr << *res.report.failure_reason << "\n";
            return res.exit_code;
        }
        if (casestudy->parsed()) {
            nlohmann::json doc = load_input(input_path);
            hhdkit::FieldSpec spec = hhdkit::parse_field_spec(doc);
            if (spec.kind != hhdkit::FieldKind::Vdp) {
                throw SpecError("casestudy-vdp needs an input with kind 'vdp'");
            }
            hhdkit::VdpArtifacts art = hhdkit::run_vdp_case_study(
                *spec.mu, parse_grid(grid_text), parse_levels(levels_text));
            hhdkit::write_vdp_files(art, output_dir);
            return hhdkit::kExitOk;
        }
    } catch (const SpecError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return hhdkit::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hhdkit::kExitInputError;
    }
    return hhdkit::kExitInputError;
}
