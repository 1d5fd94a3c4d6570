#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "entfid/entanglement.hpp"
#include "entfid/families.hpp"
#include "entfid/fidelity.hpp"
#include "entfid/json_io.hpp"
#include "entfid/sampling.hpp"

namespace {

using namespace entfid;

constexpr uint64_t kDefaultSeed = 20240817ULL;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Evaluate f(0..n-1) on a small thread pool; callers gather results by index
// so output order never depends on scheduling.
template <typename F>
void parallel_for(int n, F&& f) {
    const int workers =
        std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    for (auto& t : pool) t.join();
}

struct Source {
    Channel channel;
    std::optional<ClosedForm> closed_form;
    std::string label;
};

Source load_source(const std::string& src) {
    if (is_family_spec(src)) {
        FamilyChannel fc = parse_family_spec(src);
        return Source{std::move(fc.channel), fc.closed_form, fc.spec};
    }
    return Source{load_channel(src), std::nullopt, src};
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, bool as_json) {
    const Channel c = load_channel(path);
    const ValidationReport r = validate_channel(c);
    if (as_json) {
        std::cout << validation_report_to_json(r).dump(2) << "\n";
    } else {
        std::cout << "channel: " << path << " (dim_in=" << c.dim_in()
                  << ", dim_out=" << c.dim_out() << ", kraus=" << c.kraus().size() << ")\n";
        std::cout << "tp_residual:        " << num(r.tp_residual) << "\n";
        std::cout << "unital_residual:    " << num(r.unital_residual) << "\n";
        std::cout << "choi_min_eigenvalue: " << num(r.choi_min_eigenvalue) << "\n";
        std::cout << (r.valid ? "valid: yes" : "valid: NO (not trace preserving)") << "\n";
    }
    return r.valid ? 0 : 1;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeOpts {
    std::string source;
    bool as_json = false;
    bool with_oracle = false;
    uint64_t seed = kDefaultSeed;
    double tol = 0.0;  // 0: per-quantity defaults
    int restarts = 64;
    int iters = 500;
    int oracle_restarts = 6;
    int oracle_iters = 20000;
};

int cmd_analyze(const AnalyzeOpts& opt) {
    const Source src = load_source(opt.source);
    ensure_valid(src.channel);

    FidelityReport fid = max_fidelity(src.channel);
    const EntanglementReport ent =
        input_entanglement(src.channel, fid, opt.restarts, opt.iters, opt.seed);
    if (ent.e_value == 0.0) fid.separable_witness = ent.minimizer;

    std::optional<double> oracle;
    if (opt.with_oracle)
        oracle = oracle_max_fidelity(src.channel, opt.oracle_restarts, opt.oracle_iters, opt.seed);

    const double tol_o = opt.tol > 0.0 ? opt.tol : 1e-9;
    const double tol_e = opt.tol > 0.0 ? opt.tol : 1e-7;
    bool gate_ok = true;
    if (src.closed_form && src.closed_form->o_value)
        gate_ok = gate_ok && std::abs(fid.o_value - *src.closed_form->o_value) <= tol_o;
    if (src.closed_form && src.closed_form->e_value)
        gate_ok = gate_ok && std::abs(ent.e_value - *src.closed_form->e_value) <= tol_e;
    if (oracle) gate_ok = gate_ok && std::abs(*oracle - fid.o_value) <= 1e-6;

    if (opt.as_json) {
        nlohmann::json out{{"channel", src.label},
                           {"fidelity", fidelity_report_to_json(fid)},
                           {"entanglement", entanglement_report_to_json(ent)},
                           {"gate_ok", gate_ok}};
        if (src.closed_form) {
            nlohmann::json cf;
            if (src.closed_form->o_value) cf["o_value"] = *src.closed_form->o_value;
            if (src.closed_form->e_value) cf["e_value"] = *src.closed_form->e_value;
            out["closed_form"] = cf;
        }
        if (oracle) out["oracle"] = {{"value", *oracle}, {"gap", *oracle - fid.o_value}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "channel: " << src.label << "\n";
        std::cout << "O (max entangled-state overlap): " << num(fid.o_value) << "\n";
        std::cout << "top Choi eigenvalue: " << num(fid.top_eigenvalue)
                  << "   degeneracy: " << fid.degeneracy << "   input: "
                  << (fid.input_kind == InputKind::unique_pure ? "unique pure"
                                                               : "degenerate family")
                  << "\n";
        std::cout << "E (input entanglement, bits): " << num(ent.e_value) << "\n";
        if (fid.separable_witness) {
            std::cout << "separable witness: [";
            for (size_t i = 0; i < fid.separable_witness->amp.size(); ++i) {
                const auto& v = fid.separable_witness->amp[i];
                std::cout << (i ? ", " : "") << num(v.real()) << (v.imag() < 0 ? "-" : "+")
                          << num(std::abs(v.imag())) << "i";
            }
            std::cout << "]\n";
        }
        if (src.closed_form) {
            if (src.closed_form->o_value)
                std::cout << "closed-form O: " << num(*src.closed_form->o_value)
                          << "  |diff| = " << num(std::abs(fid.o_value - *src.closed_form->o_value))
                          << "\n";
            if (src.closed_form->e_value)
                std::cout << "closed-form E: " << num(*src.closed_form->e_value)
                          << "  |diff| = " << num(std::abs(ent.e_value - *src.closed_form->e_value))
                          << "\n";
        }
        if (oracle)
            std::cout << "oracle O: " << num(*oracle) << "  gap = " << num(*oracle - fid.o_value)
                      << "\n";
        if (!gate_ok) std::cout << "GATE FAILED: computed values exceed tolerance\n";
    }
    return gate_ok ? 0 : 1;
}

// ------------------------------------------------------------------- sweep

struct SweepOpts {
    std::string base_spec;
    std::string param;
    double from = 0.0;
    double to = 1.0;
    int points = 21;
    std::string out_path;
    uint64_t seed = kDefaultSeed;
    bool skip_entanglement = false;
    double tol = 0.0;
};

struct SweepRow {
    double param = 0.0;
    std::optional<double> o_closed, e_closed;
    double o_computed = 0.0, e_computed = 0.0;
    int degeneracy = 1;
    bool has_e = false;
};

std::string rebuild_spec(const std::string& base, const std::string& param, double value) {
    const auto colon = base.find(':');
    if (colon == std::string::npos) throw ParseError("sweep needs a family spec");
    const std::string id = base.substr(0, colon);
    const std::string body = base.substr(colon + 1);
    if (id == "pauli") throw OutOfRange("sweep does not support the pauli family");

    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string item;
    bool replaced = false;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq != std::string::npos && item.substr(0, eq) == param) {
            item = param + "=" + num(value);
            replaced = true;
        }
        parts.push_back(item);
    }
    if (!replaced) throw ParseError("swept parameter '" + param + "' not present in spec");
    std::string out = id + ":";
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out;
}

int cmd_sweep(const SweepOpts& opt) {
    if (opt.points < 2) throw OutOfRange("sweep needs at least 2 points");
    // endpoints are exact grid points so that discontinuity parameters like
    // c = 0 are hit without rounding
    std::vector<double> grid(opt.points);
    for (int i = 0; i < opt.points; ++i)
        grid[i] = opt.from + (opt.to - opt.from) * static_cast<double>(i) / (opt.points - 1);
    if (opt.points >= 2) grid.back() = opt.to;

    std::vector<SweepRow> rows(opt.points);
    std::vector<std::string> errors(opt.points);
    parallel_for(opt.points, [&](int i) {
        try {
            const FamilyChannel fc = parse_family_spec(rebuild_spec(opt.base_spec, opt.param, grid[i]));
            SweepRow row;
            row.param = grid[i];
            row.o_closed = fc.closed_form.o_value;
            row.e_closed = fc.closed_form.e_value;
            const FidelityReport fid = max_fidelity(fc.channel);
            row.o_computed = fid.o_value;
            row.degeneracy = fid.degeneracy;
            if (!opt.skip_entanglement) {
                row.e_computed =
                    input_entanglement(fc.channel, fid, 64, 500, mix_seed(opt.seed, i)).e_value;
                row.has_e = true;
            }
            rows[i] = row;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw OutOfRange("sweep point failed: " + e);

    std::ostringstream csv;
    csv << "param,O_closed,O_computed,E_closed,E_computed,degeneracy\n";
    for (const auto& row : rows) {
        csv << num(row.param) << ",";
        csv << (row.o_closed ? num(*row.o_closed) : "") << "," << num(row.o_computed) << ",";
        csv << (row.e_closed && row.has_e ? num(*row.e_closed) : "") << ","
            << (row.has_e ? num(row.e_computed) : "") << "," << row.degeneracy << "\n";
    }
    if (opt.out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + opt.out_path);
        out << csv.str();
    }

    // regression gate on closed forms
    const double tol_o = opt.tol > 0.0 ? opt.tol : 1e-9;
    const double tol_e = opt.tol > 0.0 ? opt.tol : 1e-7;
    for (const auto& row : rows) {
        if (row.o_closed && std::abs(row.o_computed - *row.o_closed) > tol_o) {
            std::cerr << "closed-form O mismatch at param=" << num(row.param) << "\n";
            return 1;
        }
        if (row.has_e && row.e_closed && std::abs(row.e_computed - *row.e_closed) > tol_e) {
            std::cerr << "closed-form E mismatch at param=" << num(row.param) << "\n";
            return 1;
        }
    }
    return 0;
}

// -------------------------------------------------------------------- mult

struct MultOpts {
    std::vector<std::string> specs;
    int random_pairs = 0;
    std::string dims = "2,2";
    bool suite = false;
    uint64_t seed = kDefaultSeed;
    double tol = 1e-8;
};

std::pair<int, int> parse_dims(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("--dims needs the form d1,d2");
    try {
        const int d1 = std::stoi(text.substr(0, comma));
        const int d2 = std::stoi(text.substr(comma + 1));
        if (d1 < 2 || d2 < 2 || d1 > 4 || d2 > 4)
            throw OutOfRange("--dims components must lie in [2, 4]");
        return {d1, d2};
    } catch (const std::invalid_argument&) {
        throw ParseError("--dims needs two integers, got " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("--dims needs two integers, got " + text);
    }
}

int cmd_multiplicativity(const MultOpts& opt) {
    struct Pair {
        std::string label;
        Channel a, b;
    };
    std::vector<Pair> pairs;

    if (opt.specs.size() == 2) {
        Source a = load_source(opt.specs[0]);
        Source b = load_source(opt.specs[1]);
        pairs.push_back({a.label + " x " + b.label, std::move(a.channel), std::move(b.channel)});
    } else if (!opt.specs.empty()) {
        throw ParseError("multiplicativity takes exactly two channel specs (or none)");
    }
    if (opt.suite) {
        const auto specs = family_suite_specs();
        for (size_t i = 0; i < specs.size(); ++i)
            for (size_t j = i; j < specs.size(); ++j) {
                FamilyChannel a = parse_family_spec(specs[i]);
                FamilyChannel b = parse_family_spec(specs[j]);
                pairs.push_back(
                    {specs[i] + " x " + specs[j], std::move(a.channel), std::move(b.channel)});
            }
    }
    const auto [d1, d2] = parse_dims(opt.dims);
    for (int k = 0; k < opt.random_pairs; ++k) {
        Rng rng(mix_seed(opt.seed, 0xa0000 + static_cast<uint64_t>(k)));
        Channel a = random_channel(rng, d1, d1);
        Channel b = random_channel(rng, d2, d2);
        pairs.push_back({"random[" + std::to_string(k) + "] dims " + std::to_string(d1) + "," +
                             std::to_string(d2),
                         std::move(a), std::move(b)});
    }
    if (pairs.empty()) throw ParseError("nothing to check: give two specs, --random or --suite");

    std::vector<MultiplicativityReport> reports(pairs.size());
    parallel_for(static_cast<int>(pairs.size()),
                 [&](int i) { reports[i] = check_multiplicativity(pairs[i].a, pairs[i].b); });

    bool all_ok = true;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const auto& r = reports[i];
        const bool ok = std::abs(r.gap) <= opt.tol;
        all_ok = all_ok && ok;
        std::cout << (ok ? "ok   " : "FAIL ") << pairs[i].label << "  lhs=" << num(r.lhs)
                  << " rhs=" << num(r.rhs) << " gap=" << num(r.gap) << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entfid — one-shot entanglement fidelity of quantum channels"};
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    bool validate_json = false;
    auto* validate = app.add_subcommand("validate", "check a channel JSON file");
    validate->add_option("file", validate_path, "channel JSON file")->required();
    validate->add_flag("--json", validate_json, "machine-readable output");

    // analyze
    AnalyzeOpts an;
    auto* analyze = app.add_subcommand("analyze", "compute O, E and optimal inputs");
    analyze->add_option("source", an.source, "channel JSON file or family spec")->required();
    analyze->add_flag("--json", an.as_json, "machine-readable output");
    analyze->add_flag("--oracle", an.with_oracle, "run the hill-climbing cross-check");
    analyze->add_option("--seed", an.seed, "random seed");
    analyze->add_option("--tol", an.tol, "override closed-form comparison tolerance");
    analyze->add_option("--restarts", an.restarts, "entanglement minimizer restarts");
    analyze->add_option("--iters", an.iters, "entanglement minimizer iterations");

    // sweep
    SweepOpts sw;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    sweep->add_option("spec", sw.base_spec, "family spec with fixed parameters")->required();
    sweep->add_option("--param", sw.param, "swept parameter name")->required();
    sweep->add_option("--from", sw.from, "range start")->required();
    sweep->add_option("--to", sw.to, "range stop")->required();
    sweep->add_option("--points", sw.points, "number of grid points")->required();
    sweep->add_option("--out", sw.out_path, "output CSV path (default: stdout)");
    sweep->add_option("--seed", sw.seed, "random seed");
    sweep->add_option("--tol", sw.tol, "override closed-form comparison tolerance");
    sweep->add_flag("--skip-entanglement", sw.skip_entanglement, "leave E columns empty");

    // multiplicativity
    MultOpts mu;
    auto* mult = app.add_subcommand("multiplicativity", "check O(N1 x N2) = O(N1) O(N2)");
    mult->add_option("specs", mu.specs, "two channel specs")->expected(0, 2);
    mult->add_option("--random", mu.random_pairs, "number of random channel pairs");
    mult->add_option("--dims", mu.dims, "dimensions of the two random channels, e.g. 2,3");
    mult->add_flag("--suite", mu.suite, "run the built-in family cross-pair suite");
    mult->add_option("--seed", mu.seed, "random seed");
    mult->add_option("--tol", mu.tol, "gap tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_path, validate_json);
        if (analyze->parsed()) return cmd_analyze(an);
        if (sweep->parsed()) return cmd_sweep(sw);
        if (mult->parsed()) return cmd_multiplicativity(mu);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
