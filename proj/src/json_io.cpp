#include "entfid/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace entfid {

using nlohmann::json;

namespace {

double number_from_json(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite value for ") + what);
    return v;
}

cplx entry_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("matrix entry must be a [re, im] pair");
    return cplx(number_from_json(j[0], "matrix entry"), number_from_json(j[1], "matrix entry"));
}

int dim_from_json(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
    if (!j[key].is_number_integer()) throw ParseError(std::string(key) + " must be an integer");
    const int v = j[key].get<int>();
    if (v <= 0) throw ParseError(std::string(key) + " must be positive");
    return v;
}

}  // namespace

Channel channel_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("channel file must hold a JSON object");
    const int dim_in = dim_from_json(j, "dim_in");
    const int dim_out = dim_from_json(j, "dim_out");
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
        throw ParseError("kraus must be a non-empty array of operators");

    std::vector<ComplexMatrix> kraus;
    for (const auto& op : j["kraus"]) {
        if (!op.is_array() || static_cast<int>(op.size()) != dim_out)
            throw ParseError("each Kraus operator needs dim_out rows");
        ComplexMatrix k(dim_out, dim_in);
        for (int r = 0; r < dim_out; ++r) {
            const auto& row = op[r];
            if (!row.is_array() || static_cast<int>(row.size()) != dim_in)
                throw ParseError("ragged Kraus row: expected dim_in entries");
            for (int c = 0; c < dim_in; ++c) k(r, c) = entry_from_json(row[c]);
        }
        kraus.push_back(std::move(k));
    }
    try {
        return Channel(dim_in, dim_out, std::move(kraus));
    } catch (const DimensionMismatch& e) {
        throw ParseError(e.what());
    }
}

Channel channel_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return channel_from_json(j);
}

Channel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open channel file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return channel_from_json_text(ss.str());
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json ket_to_json(const BipartiteKet& k) {
    json amp = json::array();
    for (const auto& v : k.amp) amp.push_back({v.real(), v.imag()});
    return json{{"dim_a", k.dim_a}, {"dim_b", k.dim_b}, {"amp", std::move(amp)}};
}

json channel_to_json(const Channel& c) {
    json kraus = json::array();
    for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
    return json{{"dim_in", c.dim_in()}, {"dim_out", c.dim_out()}, {"kraus", std::move(kraus)}};
}

json validation_report_to_json(const ValidationReport& r) {
    return json{{"tp_residual", r.tp_residual},
                {"unital_residual", r.unital_residual},
                {"choi_min_eigenvalue", r.choi_min_eigenvalue},
                {"tolerance", r.tolerance},
                {"trace_preserving", r.trace_preserving},
                {"completely_positive", r.completely_positive},
                {"unital", r.unital},
                {"valid", r.valid}};
}

json fidelity_report_to_json(const FidelityReport& r) {
    json out{{"o_value", r.o_value},
             {"top_eigenvalue", r.top_eigenvalue},
             {"degeneracy", r.degeneracy},
             {"input_kind", r.input_kind == InputKind::unique_pure ? "unique_pure"
                                                                   : "degenerate_family"},
             {"optimal_input", matrix_to_json(r.optimal_input)},
             {"kraus_norms", r.kraus_norms},
             // O is the overlap with the maximally entangled state, i.e. the
             // squared-fidelity convention
             {"convention", "overlap_squared_fidelity"}};
    if (r.separable_witness) out["separable_witness"] = ket_to_json(*r.separable_witness);
    return out;
}

json entanglement_report_to_json(const EntanglementReport& r) {
    const char* method = r.method == EntanglementMethod::pure_unique ? "pure_unique"
                         : r.method == EntanglementMethod::pencil_product_state
                             ? "pencil_product_state"
                             : "numeric_min";
    json out{{"e_value", r.e_value},
             {"minimizer", ket_to_json(r.minimizer)},
             {"method", method},
             // mixed-state entanglement of formation is reduced to the pure
             // minimum over the support subspace
             {"assumption", "pure_state_minimum_over_support"}};
    if (r.method == EntanglementMethod::numeric_min) {
        out["seed"] = r.seed;
        out["restarts"] = r.restarts;
        out["iters"] = r.iters;
    }
    return out;
}

}  // namespace entfid
