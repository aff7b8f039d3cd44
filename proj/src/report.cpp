#include "hhdkit/report.hpp"

#include "hhdkit/field_spec.hpp"

namespace hhdkit {

namespace {

bool same(const RealMatrix& a, const RealMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

nlohmann::json linear_to_json(const LinearHhd& d) {
    return {{"p", matrix_to_json(d.p)}, {"h", matrix_to_json(d.h)}, {"a", matrix_to_json(d.a)}};
}

LinearHhd linear_from_json(const nlohmann::json& j) {
    return {matrix_from_json(j.at("p")), matrix_from_json(j.at("h")), matrix_from_json(j.at("a"))};
}

nlohmann::json planar_to_json(const PlanarHhd& d) {
    return {{"v", poly_to_json(d.v)},
            {"h", poly_to_json(d.h)},
            {"w", zpoly_to_json(d.w)},
            {"f", poly_to_json(d.f)},
            {"g", poly_to_json(d.g)}};
}

PlanarHhd planar_from_json(const nlohmann::json& j) {
    PlanarHhd d;
    d.v = poly_from_json(j.at("v"));
    d.h = poly_from_json(j.at("h"));
    d.w = zpoly_from_json(j.at("w"));
    d.f = poly_from_json(j.at("f"));
    d.g = poly_from_json(j.at("g"));
    return d;
}

nlohmann::json sde_to_json(const SdeDecomposition& s) {
    return {{"d", matrix_to_json(s.d)},
            {"q", matrix_to_json(s.q)},
            {"u", matrix_to_json(s.u)},
            {"f", matrix_to_json(s.f)}};
}

SdeDecomposition sde_from_json(const nlohmann::json& j) {
    return {matrix_from_json(j.at("d")), matrix_from_json(j.at("q")),
            matrix_from_json(j.at("u")), matrix_from_json(j.at("f"))};
}

nlohmann::json riccati_to_json(const RiccatiReport& r) {
    return {{"residual_norm", r.residual_norm},
            {"trace_gap", r.trace_gap},
            {"orthogonality_norm", r.orthogonality_norm},
            {"iterations", r.iterations}};
}

RiccatiReport riccati_from_json(const nlohmann::json& j) {
    RiccatiReport r;
    r.residual_norm = j.at("residual_norm").get<double>();
    r.trace_gap = j.at("trace_gap").get<double>();
    r.orthogonality_norm = j.at("orthogonality_norm").get<double>();
    r.iterations = j.at("iterations").get<int>();
    return r;
}

}  // namespace

nlohmann::json DecompositionReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["input"] = input_echo;
    j["strictly_orthogonal"] = strictly_orthogonal;
    if (failure_reason) j["failure_reason"] = *failure_reason;
    if (linear) j["linear"] = linear_to_json(*linear);
    if (diagnostics) j["diagnostics"] = riccati_to_json(*diagnostics);
    if (planar) j["planar"] = planar_to_json(*planar);
    if (defect_norm) j["defect_norm"] = *defect_norm;
    if (sde) j["sde"] = sde_to_json(*sde);
    return j;
}

DecompositionReport DecompositionReport::from_json(const nlohmann::json& j) {
    DecompositionReport r;
    r.command = j.at("command").get<std::string>();
    r.input_echo = j.at("input");
    r.strictly_orthogonal = j.at("strictly_orthogonal").get<bool>();
    if (j.contains("failure_reason")) r.failure_reason = j["failure_reason"].get<std::string>();
    if (j.contains("linear")) r.linear = linear_from_json(j["linear"]);
    if (j.contains("diagnostics")) r.diagnostics = riccati_from_json(j["diagnostics"]);
    if (j.contains("planar")) r.planar = planar_from_json(j["planar"]);
    if (j.contains("defect_norm")) r.defect_norm = j["defect_norm"].get<double>();
    if (j.contains("sde")) r.sde = sde_from_json(j["sde"]);
    return r;
}

bool operator==(const DecompositionReport& a, const DecompositionReport& b) {
    if (a.command != b.command || a.input_echo != b.input_echo ||
        a.strictly_orthogonal != b.strictly_orthogonal ||
        a.failure_reason != b.failure_reason || a.defect_norm != b.defect_norm) {
        return false;
    }
    if (a.linear.has_value() != b.linear.has_value()) return false;
    if (a.linear && !(same(a.linear->p, b.linear->p) && same(a.linear->h, b.linear->h) &&
                      same(a.linear->a, b.linear->a))) {
        return false;
    }
    if (a.diagnostics.has_value() != b.diagnostics.has_value()) return false;
    if (a.diagnostics) {
        const auto& x = *a.diagnostics;
        const auto& y = *b.diagnostics;
        if (x.residual_norm != y.residual_norm || x.trace_gap != y.trace_gap ||
            x.orthogonality_norm != y.orthogonality_norm || x.iterations != y.iterations) {
            return false;
        }
    }
    if (a.planar.has_value() != b.planar.has_value()) return false;
    if (a.planar && !(a.planar->v == b.planar->v && a.planar->h == b.planar->h &&
                      a.planar->w == b.planar->w && a.planar->f == b.planar->f &&
                      a.planar->g == b.planar->g)) {
        return false;
    }
    if (a.sde.has_value() != b.sde.has_value()) return false;
    if (a.sde && !(same(a.sde->d, b.sde->d) && same(a.sde->q, b.sde->q) &&
                   same(a.sde->u, b.sde->u) && same(a.sde->f, b.sde->f))) {
        return false;
    }
    return true;
}

}  // namespace hhdkit
