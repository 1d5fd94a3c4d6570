#include "entfid/families.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace entfid {

namespace {

ComplexMatrix mat2(cplx a00, cplx a01, cplx a10, cplx a11) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a00;
    m(0, 1) = a01;
    m(1, 0) = a10;
    m(1, 1) = a11;
    return m;
}

std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw OutOfRange(std::string(name) + " must lie in [0, 1], got " + fmt_param(v));
}

}  // namespace

FamilyChannel amplitude_damping(double p) {
    require_unit_interval(p, "damping probability p");
    std::vector<ComplexMatrix> kraus{
        mat2(1.0, 0.0, 0.0, std::sqrt(1.0 - p)),
        mat2(0.0, std::sqrt(p), 0.0, 0.0),
    };
    FamilyChannel fc{Channel(2, 2, std::move(kraus)),
                     ClosedForm{1.0 - p / 2.0, binary_entropy(1.0 / (2.0 - p))},
                     "ad:p=" + fmt_param(p)};
    return fc;
}

PcubedParams canonical_pcubed_params(double b, double c) {
    PcubedParams out;
    out.sign_canonicalized = b < 0.0 || c < 0.0;
    out.b = std::abs(b);
    out.c = std::abs(c);
    if (out.b > 1.0 || out.c > 1.0) throw OutOfRange("pcubed overlaps must lie in [-1, 1]");
    return out;
}

FamilyChannel pcubed_channel(double b_in, double c_in) {
    const PcubedParams prm = canonical_pcubed_params(b_in, c_in);
    const double b = prm.b, c = prm.c;

    FamilyChannel fc{Channel(2, 2, {ComplexMatrix::identity(2)}), ClosedForm{},
                     "pcubed:b=" + fmt_param(b) + ",c=" + fmt_param(c)};
    if (b == 1.0 && c == 1.0) {
        fc.closed_form = ClosedForm{1.0, 1.0};  // perfect channel
        return fc;
    }

    const double bc = b * c;
    std::vector<ComplexMatrix> kraus{
        mat2(std::sqrt((1 + b) * (1 + c) / (2 * (1 + bc))), 0.0, 0.0,
             std::sqrt((1 - b) * (1 + c) / (2 * (1 - bc)))),
        mat2(0.0, std::sqrt((1 + b) * (1 - c) / (2 * (1 - bc))),
             std::sqrt((1 - b) * (1 - c) / (2 * (1 + bc))), 0.0),
    };
    fc.channel = Channel(2, 2, std::move(kraus));

    const double o = (1 + c) * (1 - b * b * c) / (2 * (1 - b * b * c * c));
    const double e = (b == 1.0 || c == 0.0)
                         ? 0.0
                         : binary_entropy((1 + b) * (1 - bc) / (2 * (1 - b * b * c)));
    fc.closed_form = ClosedForm{o, e};
    return fc;
}

Channel pcubed_channel_from_isometry(double b_in, double c_in) {
    const PcubedParams prm = canonical_pcubed_params(b_in, c_in);
    const double b = prm.b, c = prm.c;
    if (b == 1.0 && c == 1.0) return Channel(2, 2, {ComplexMatrix::identity(2)});
    const double a = b * c;

    // paired nonorthogonal kets with prescribed overlap t
    auto pair_kets = [](double t) {
        std::array<std::array<double, 2>, 2> k{};
        for (int i = 0; i < 2; ++i) {
            k[i][0] = std::sqrt((1 + t) / 2);
            k[i][1] = (i == 0 ? 1.0 : -1.0) * std::sqrt((1 - t) / 2);
        }
        return k;
    };
    const auto alpha = pair_kets(a);
    const auto beta = pair_kets(b);
    const auto gamma = pair_kets(c);

    // dual basis of {alpha_i}: rows of the inverse of T, T(r, i) = alpha_i[r]
    const double t00 = alpha[0][0], t01 = alpha[1][0];
    const double t10 = alpha[0][1], t11 = alpha[1][1];
    const double tdet = t00 * t11 - t01 * t10;
    const double inv[2][2] = {{t11 / tdet, -t01 / tdet}, {-t10 / tdet, t00 / tdet}};

    // V = sum_i (beta_i (x) gamma_i) <alpha^i| ; Kraus K_e = (I (x) <e|_C) V
    std::vector<ComplexMatrix> kraus(2, ComplexMatrix(2, 2));
    for (int e = 0; e < 2; ++e)
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) {
                double v = 0.0;
                for (int i = 0; i < 2; ++i) v += beta[i][r] * gamma[i][e] * inv[i][s];
                kraus[e](r, s) = v;
            }
    return Channel(2, 2, std::move(kraus));
}

std::pair<double, double> pcubed_to_uv(double b_in, double c_in) {
    const PcubedParams prm = canonical_pcubed_params(b_in, c_in);
    const double b = prm.b, c = prm.c;
    if (b * c == 1.0) throw OutOfRange("pcubed_to_uv is undefined at |bc| = 1");
    const double denom = 1.0 - b * b * c * c;
    const double sin2v = (1.0 - c * c) / denom;
    const double cos2u = (1.0 - b * b) / denom;
    return {std::acos(std::sqrt(cos2u)), std::asin(std::sqrt(sin2v))};
}

FamilyChannel uv_channel(double u, double v) {
    if (!(u >= 0.0 && u <= 2.0 * 3.14159265358979323846))
        throw OutOfRange("u must lie in [0, 2*pi]");
    if (!(v >= 0.0 && v < 3.14159265358979323846 + 1e-12))
        throw OutOfRange("v must lie in [0, pi)");
    const double k00 = std::cos((v - u) / 2), k11 = std::cos((v + u) / 2);
    const double k01 = std::sin((v + u) / 2), k10 = std::sin((v - u) / 2);
    std::vector<ComplexMatrix> kraus{
        mat2(k00, 0.0, 0.0, k11),
        mat2(0.0, k01, k10, 0.0),
    };
    FamilyChannel fc{Channel(2, 2, std::move(kraus)), ClosedForm{},
                     "uv:u=" + fmt_param(u) + ",v=" + fmt_param(v)};

    // Closed forms straight from the trigonometric Kraus norms.
    const double e0 = k00 * k00 + k11 * k11;
    const double e1 = 2.0 - e0;
    fc.closed_form.o_value = std::max(e0, e1) / 2.0;
    if (std::abs(e0 - e1) <= 1e-12) {
        fc.closed_form.e_value = 0.0;  // degenerate top: qubit product input exists
    } else if (e0 > e1) {
        fc.closed_form.e_value = binary_entropy(k00 * k00 / e0);
    } else {
        fc.closed_form.e_value = binary_entropy(k01 * k01 / e1);
    }
    return fc;
}

SimulationDecomposition pcubed_simulation(double b, double c, double c_prime) {
    canonical_pcubed_params(b, c);
    if (!(c > 0.0)) throw OutOfRange("pcubed_simulation needs c > 0");
    if (!(c_prime >= 0.0 && c_prime <= c))
        throw OutOfRange("pcubed_simulation needs 0 <= c' <= c");

    const Channel fine = pcubed_channel(b, c).channel;
    const Channel coarse = pcubed_channel(b, c_prime).channel;
    // The pre-processing channel is the same construction with output
    // overlap b*c and environment overlap c'/c.
    const Channel mid = pcubed_channel(b * c, c_prime / c).channel;
    Channel composed = compose_channels(fine, mid);
    const double residual = max_abs_diff(choi(composed).matrix(), choi(coarse).matrix());
    return SimulationDecomposition{coarse, mid, std::move(composed), residual};
}

DegradabilityClass classify_degradability(double b, double c) {
    const PcubedParams prm = canonical_pcubed_params(b, c);
    DegradabilityClass out;
    if (prm.b == 0.0 && prm.c == 0.0) {
        out.kind = Degradability::degradable;
        out.boundary = true;
        return out;
    }
    if (prm.c == 0.0) {
        out.kind = Degradability::anti_degradable;  // |b/c| = infinity
        return out;
    }
    const double ratio = prm.b / prm.c;
    out.kind = ratio < 1.0 ? Degradability::degradable : Degradability::anti_degradable;
    out.boundary = ratio == 1.0;
    return out;
}

PauliParams canonical_pauli_params(const std::array<double, 4>& p_in) {
    double sum = 0.0;
    for (double v : p_in) {
        if (v < -1e-15) throw OutOfRange("Pauli probabilities must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw OutOfRange("Pauli probabilities must sum to 1");

    PauliParams prm;
    prm.p = p_in;
    for (double& v : prm.p) v = std::max(v, 0.0);
    int imax = 0;
    for (int i = 1; i < 4; ++i)
        if (prm.p[i] > prm.p[imax]) imax = i;
    if (imax != 0) {
        // conjugating the input by sigma_imax swaps weight imax with the
        // identity and the remaining two with each other
        std::swap(prm.p[0], prm.p[imax]);
        const int j = imax == 1 ? 2 : 1;
        const int k = imax == 3 ? 2 : 3;
        std::swap(prm.p[j], prm.p[k]);
    }
    return prm;
}

FamilyChannel pauli_channel(const std::array<double, 4>& p_in) {
    const PauliParams prm = canonical_pauli_params(p_in);
    const auto& p = prm.p;

    const ComplexMatrix sigma[4] = {
        ComplexMatrix::identity(2),
        mat2(0.0, 1.0, 1.0, 0.0),
        mat2(0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0),
        mat2(1.0, 0.0, 0.0, -1.0),
    };
    std::vector<ComplexMatrix> kraus;
    for (int i = 0; i < 4; ++i) kraus.push_back(std::sqrt(p[i]) * sigma[i]);

    double second = 0.0;
    for (int i = 1; i < 4; ++i) second = std::max(second, p[i]);
    FamilyChannel fc{Channel(2, 2, std::move(kraus)),
                     ClosedForm{p[0], p[0] - second <= 1e-12 ? 0.0 : 1.0},
                     "pauli:" + fmt_param(p[0]) + "," + fmt_param(p[1]) + "," + fmt_param(p[2]) +
                         "," + fmt_param(p[3])};
    return fc;
}

bool pauli_anti_degradable(const std::array<double, 4>& p_in) {
    const auto p = canonical_pauli_params(p_in).p;
    const double lhs = p[1] + p[2] + p[3] + std::sqrt(p[1] * p[2]) + std::sqrt(p[1] * p[3]) +
                       std::sqrt(p[2] * p[3]);
    return lhs >= 0.5;
}

FamilyChannel qutrit_m(double lambda) {
    require_unit_interval(lambda, "lambda");
    ComplexMatrix k0 = std::sqrt(lambda) * ComplexMatrix::identity(3);
    ComplexMatrix k1(3, 3), k2(3, 3);
    k1(0, 1) = std::sqrt(1.0 - lambda);
    k1(1, 0) = std::sqrt(1.0 - lambda);
    k2(1, 2) = std::sqrt(1.0 - lambda);

    FamilyChannel fc{Channel(3, 3, {std::move(k0), std::move(k1), std::move(k2)}), ClosedForm{},
                     "qutritM:lambda=" + fmt_param(lambda)};
    fc.closed_form.o_value = std::max(3.0 * lambda, 2.0 * (1.0 - lambda)) / 3.0;
    if (lambda > 0.4) fc.closed_form.e_value = std::log2(3.0);  // unique maximally entangled input
    return fc;
}

FamilyChannel qutrit_p(double z) {
    require_unit_interval(z, "z");
    ComplexMatrix l0(3, 3), l1(3, 3), l2(3, 3), l3(3, 3);
    const double w0 = std::sqrt((z + 2.0) / 4.0);
    const double w12 = std::sqrt((1.0 - z) / 2.0);
    const double w3 = std::sqrt(z / 4.0);
    l0(0, 1) = w0;
    l0(1, 0) = w0;
    l1(1, 2) = w12;
    l1(2, 1) = w12;
    l2(0, 2) = w12;
    l2(2, 0) = w12;
    l3(0, 0) = w3;
    l3(1, 1) = w3;
    l3(2, 2) = -2.0 * w3;

    FamilyChannel fc{Channel(3, 3, {std::move(l0), std::move(l1), std::move(l2), std::move(l3)}),
                     ClosedForm{}, "qutritP:z=" + fmt_param(z)};
    fc.closed_form.o_value = (z + 2.0) / 6.0;
    // no closed form for the input entanglement; it is always computed
    return fc;
}

// -------------------------------------------------------------------------
// Family spec parsing
// -------------------------------------------------------------------------

namespace {

double parse_number(const std::string& text) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw ParseError("trailing characters in number: " + text);
        if (!std::isfinite(v)) throw ParseError("non-finite number: " + text);
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("not a number: " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range: " + text);
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

// key=value,key=value with an exact expected key set
std::vector<double> parse_kv(const std::string& body, const std::vector<std::string>& keys) {
    std::string expected;
    for (const auto& k : keys) expected += (expected.empty() ? "" : ",") + k;
    const auto parts = split(body, ',');
    if (parts.size() != keys.size()) throw ParseError("expected parameters: " + expected);
    std::vector<double> values(keys.size());
    std::vector<bool> seen(keys.size(), false);
    for (const auto& part : parts) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value, got: " + part);
        const std::string key = part.substr(0, eq);
        bool matched = false;
        for (size_t i = 0; i < keys.size(); ++i) {
            if (keys[i] == key) {
                if (seen[i]) throw ParseError("duplicate parameter: " + key);
                values[i] = parse_number(part.substr(eq + 1));
                seen[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unknown parameter: " + key);
    }
    return values;
}

}  // namespace

bool is_family_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    const std::string id = spec.substr(0, colon);
    return id == "ad" || id == "pcubed" || id == "uv" || id == "pauli" || id == "qutritM" ||
           id == "qutritP";
}

FamilyChannel parse_family_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("family spec needs the form family:params");
    const std::string id = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);

    if (id == "ad") return amplitude_damping(parse_kv(body, {"p"})[0]);
    if (id == "pcubed") {
        const auto v = parse_kv(body, {"b", "c"});
        return pcubed_channel(v[0], v[1]);
    }
    if (id == "uv") {
        const auto v = parse_kv(body, {"u", "v"});
        return uv_channel(v[0], v[1]);
    }
    if (id == "pauli") {
        const auto parts = split(body, ',');
        if (parts.size() != 4) throw ParseError("pauli spec needs four probabilities");
        std::array<double, 4> p{};
        for (int i = 0; i < 4; ++i) p[i] = parse_number(parts[i]);
        return pauli_channel(p);
    }
    if (id == "qutritM") return qutrit_m(parse_kv(body, {"lambda"})[0]);
    if (id == "qutritP") return qutrit_p(parse_kv(body, {"z"})[0]);
    throw ParseError("unknown channel family: " + id);
}

std::vector<std::string> family_suite_specs() {
    return {
        "ad:p=0.5",       "ad:p=0.1",          "pcubed:b=0.3,c=0.7", "pcubed:b=0.5,c=0",
        "uv:u=1.0,v=0.5", "pauli:0.5,0.2,0.2,0.1", "qutritM:lambda=0.6", "qutritP:z=0.4",
    };
}

}  // namespace entfid
