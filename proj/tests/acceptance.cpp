// Acceptance suite: every reproduction target runs at its stated tolerance
// and prints one pass/fail line. The process exits with the number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "entfid/entanglement.hpp"
#include "entfid/families.hpp"
#include "entfid/fidelity.hpp"
#include "entfid/sampling.hpp"
#include "test_helpers.hpp"

using namespace entfid;
using entfid::testing::ket_distance_up_to_phase;

namespace {

struct Check {
    int failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
    void close(double got, double want, double tol, const std::string& what) {
        expect(std::abs(got - want) <= tol,
               what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    }
};

constexpr uint64_t kSeed = 0xacce97ULL;

double pcubed_o(double b, double c) {
    return (1 + c) * (1 - b * b * c) / (2 * (1 - b * b * c * c));
}

double pcubed_e(double b, double c) {
    if (b == 1.0 || c == 0.0) return 0.0;
    return binary_entropy((1 + b) * (1 - b * c) / (2 * (1 - b * b * c)));
}

std::array<double, 4> random_simplex(Rng& rng) {
    std::array<double, 4> p{};
    double sum = 0.0;
    for (auto& v : p) sum += v = -std::log(1.0 - rng.uniform());
    for (auto& v : p) v /= sum;
    // renormalize exactly
    const double s2 = p[0] + p[1] + p[2] + p[3];
    p[3] += 1.0 - s2;
    return p;
}

// ------------------------------------------------------------ criterion 1

void criterion_amplitude_damping(Check& ck) {
    for (int i = 0; i <= 20; ++i) {
        const double p = i / 20.0;
        const Channel c = amplitude_damping(p).channel;
        const FidelityReport fid = max_fidelity(c);
        ck.close(fid.o_value, 1.0 - p / 2.0, 1e-9, "O at p=" + std::to_string(p));
        const EntanglementReport ent = input_entanglement(c, fid);
        ck.close(ent.e_value, binary_entropy(1.0 / (2.0 - p)), 1e-7,
                 "E at p=" + std::to_string(p));
        if (p == 1.0) {
            ck.expect(ent.e_value == 0.0, "E(p=1) must be exactly zero");
            ck.expect(schmidt_coefficients(ent.minimizer)[1] <= 1e-7,
                      "p=1 witness must be a product state");
        }
    }
}

// ------------------------------------------------------------ criterion 2

void criterion_extremal_qubit(Check& ck) {
    for (int bi = 0; bi <= 20; ++bi) {
        for (int ci = 0; ci <= 20; ++ci) {
            const double b = bi / 20.0, c = ci / 20.0;
            if (b == 1.0 && c == 1.0) continue;  // bc = 1
            const Channel ch = pcubed_channel(b, c).channel;
            const FidelityReport fid = max_fidelity(ch);
            ck.close(fid.o_value, pcubed_o(b, c), 1e-9,
                     "O at b=" + std::to_string(b) + " c=" + std::to_string(c));

            const EntanglementReport ent = input_entanglement(ch, fid);
            if (b != 1.0 && c != 0.0) {
                ck.close(ent.e_value, pcubed_e(b, c), 1e-7,
                         "E at b=" + std::to_string(b) + " c=" + std::to_string(c));
            } else {
                ck.expect(ent.e_value == 0.0, "E must vanish at b=1 or c=0");
                ck.expect(schmidt_coefficients(ent.minimizer)[1] <= 1e-7,
                          "separable witness must be product at b=1 or c=0");
            }

            if (ci == 0) {
                // closed-form product states at c = 0: reference factor
                // psi+/- = (sqrt(1+b)|0> +/- sqrt(1-b)|1>)/sqrt(2), input
                // factor |+/->
                Subspace top{2, 2, fid.top_eigenspace};
                const PencilProducts prods = product_states_in_pencil(top);
                const double r0 = std::sqrt((1 + b) / 2.0), r1 = std::sqrt((1 - b) / 2.0);
                const double s = 1.0 / std::sqrt(2.0);
                BipartiteKet plus{2, 2, {r0 * s, r0 * s, r1 * s, r1 * s}};
                BipartiteKet minus{2, 2, {r0 * s, -r0 * s, -r1 * s, r1 * s}};
                if (!prods.degenerate) {
                    // generic pencil: the two roots are exactly those states
                    for (const auto& got : prods.states) {
                        const double d = std::min(ket_distance_up_to_phase(got, plus),
                                                  ket_distance_up_to_phase(got, minus));
                        ck.expect(d <= 1e-8, "c=0 witness form at b=" + std::to_string(b));
                    }
                } else {
                    // b = 1: every vector of the span is product and the
                    // witness is no longer unique; the closed-form pair must
                    // still be optimal separable inputs of this channel
                    for (const auto& want : {plus, minus}) {
                        cplx c0 = dot(top.basis[0], want), c1 = dot(top.basis[1], want);
                        double resid2 = 0.0;
                        for (size_t i = 0; i < want.amp.size(); ++i)
                            resid2 += std::norm(want.amp[i] - c0 * top.basis[0].amp[i] -
                                                c1 * top.basis[1].amp[i]);
                        ck.expect(std::sqrt(resid2) <= 1e-8,
                                  "closed-form witness must lie in the optimal subspace at b=1");
                        ck.expect(schmidt_coefficients(want)[1] <= 1e-8,
                                  "closed-form witness must be product at b=1");
                    }
                }
            }
        }
    }

    // discontinuity at c = 0 for b = 0.5
    const double at_zero = input_entanglement(pcubed_channel(0.5, 0.0).channel).e_value;
    const double near_zero = input_entanglement(pcubed_channel(0.5, 1e-3).channel).e_value;
    ck.expect(at_zero == 0.0, "E(b=0.5, c=0) must be zero");
    ck.expect(near_zero > 0.9 * binary_entropy(0.75),
              "E(b=0.5, c=1e-3) must exceed 0.9*h(0.75)");
}

// ------------------------------------------------------------ criterion 3

void criterion_pauli(Check& ck) {
    Rng rng(mix_seed(kSeed, 3));
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = random_simplex(rng);
        double p0 = 0.0, second = 0.0;
        for (double v : p) {
            if (v > p0) {
                second = p0;
                p0 = v;
            } else if (v > second) {
                second = v;
            }
        }
        const Channel c = pauli_channel(p).channel;
        const FidelityReport fid = max_fidelity(c);
        ck.close(fid.o_value, p0, 1e-10, "Pauli O at sample " + std::to_string(rep));
        if (p0 - second > 1e-6) {
            const EntanglementReport ent = input_entanglement(c, fid);
            ck.close(ent.e_value, 1.0, 1e-7, "Pauli E at strict sample " + std::to_string(rep));
        }
    }

    // constructed exact ties
    for (int rep = 0; rep < 20; ++rep) {
        const int tie = 1 + rep % 3;
        const double t = 0.26 + 0.24 * rng.uniform();
        const double rest = 1.0 - 2.0 * t;
        // keep the two free weights non-negative and below the tied pair
        const double slack = 0.9 * std::min(2.0 * t - 0.5, rest / 2.0);
        const double delta = slack * rng.uniform();
        std::array<double, 4> p{};
        p[0] = t;
        p[tie] = t;
        int free_slot = 0;
        for (int i = 1; i < 4; ++i)
            if (i != tie) p[i] = free_slot++ == 0 ? rest / 2 + delta : rest / 2 - delta;

        const EntanglementReport ent = input_entanglement(pauli_channel(p).channel);
        ck.expect(ent.e_value == 0.0, "tied Pauli case must have zero entanglement");
        ck.expect(pauli_anti_degradable(p), "tied Pauli case must be anti-degradable");
    }
}

// ------------------------------------------------------------ criterion 4

void criterion_qutrit(Check& ck) {
    const BipartiteKet phi3 = maximally_entangled_ket(3);
    for (int i = 0; i < 21; ++i) {
        const double lambda = 0.4 + 0.6 * (i + 1) / 22.0;  // interior of (2/5, 1)
        const Channel c = qutrit_m(lambda).channel;
        const FidelityReport fid = max_fidelity(c);
        ck.close(fid.o_value, lambda, 1e-9, "O(M) at lambda=" + std::to_string(lambda));
        ck.expect(fid.degeneracy == 1, "M input must be unique");
        ck.expect(max_abs_diff(fid.optimal_input, outer(phi3)) <= 1e-8,
                  "M optimal input must be the maximally entangled ket");
        const EntanglementReport ent = input_entanglement(c, fid);
        ck.close(ent.e_value, std::log2(3.0), 1e-7, "E(M) at lambda=" + std::to_string(lambda));
    }

    for (int i = 0; i <= 20; ++i) {
        const double z = i / 20.0;
        ck.close(max_fidelity(qutrit_p(z).channel).o_value, (z + 2.0) / 6.0, 1e-9,
                 "O(P) at z=" + std::to_string(z));
    }

    // completely entangled optimal subspace at z = 0: the 64-restart
    // minimizer sits at one bit; frozen regression floor 0.999
    const FidelityReport fid0 = max_fidelity(qutrit_p(0.0).channel);
    const EntanglementReport e0 =
        min_entanglement_over_subspace(Subspace{3, 3, fid0.top_eigenspace}, 64, 500,
                                       mix_seed(kSeed, 4));
    ck.expect(e0.e_value >= 0.5, "z=0 subspace minimum must stay above 0.5 bits");
    ck.expect(e0.e_value >= 0.999, "z=0 subspace minimum regression floor (observed 1.0)");
}

// ------------------------------------------------------------ criterion 5

void criterion_multiplicativity(Check& ck) {
    Rng rng(mix_seed(kSeed, 5));
    for (int rep = 0; rep < 30; ++rep) {
        const Channel a = random_channel(rng, 2, 2);
        const Channel b = random_channel(rng, 2, 2);
        const MultiplicativityReport r = check_multiplicativity(a, b);
        ck.expect(std::abs(r.gap) <= 1e-8, "qubit pair gap at rep " + std::to_string(rep));
    }
    for (int rep = 0; rep < 10; ++rep) {
        const Channel a = random_channel(rng, 2, 2);
        const Channel b = random_channel(rng, 3, 3);
        const MultiplicativityReport r = check_multiplicativity(a, b);
        ck.expect(std::abs(r.gap) <= 1e-8, "qubit x qutrit gap at rep " + std::to_string(rep));
    }
    const auto specs = family_suite_specs();
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i; j < specs.size(); ++j) {
            const MultiplicativityReport r = check_multiplicativity(
                parse_family_spec(specs[i]).channel, parse_family_spec(specs[j]).channel);
            ck.expect(std::abs(r.gap) <= 1e-8, specs[i] + " x " + specs[j]);
        }
}

// ------------------------------------------------------------ criterion 6

void criterion_oracle(Check& ck) {
    int idx = 0;
    auto probe = [&](const Channel& c, const std::string& what) {
        const double expected = max_fidelity(c).o_value;
        const double got = oracle_max_fidelity(c, 5, 50000, mix_seed(kSeed, 600 + idx++));
        ck.expect(std::abs(got - expected) <= 1e-6, "oracle gap on " + what);
        ck.expect(got <= expected + 1e-9, "oracle overshoot on " + what);
    };

    for (int i = 0; i <= 20; ++i) probe(amplitude_damping(i / 20.0).channel, "ad");
    for (int bi = 0; bi <= 20; ++bi)
        for (int ci = 0; ci <= 20; ++ci) {
            if (bi == 20 && ci == 20) continue;
            probe(pcubed_channel(bi / 20.0, ci / 20.0).channel, "pcubed");
        }
    Rng rng(mix_seed(kSeed, 6));
    for (int rep = 0; rep < 100; ++rep) probe(pauli_channel(random_simplex(rng)).channel, "pauli");
    for (int i = 0; i < 21; ++i) probe(qutrit_m(0.4 + 0.6 * (i + 1) / 22.0).channel, "qutritM");
    for (int i = 0; i <= 20; ++i) probe(qutrit_p(i / 20.0).channel, "qutritP");
    for (int rep = 0; rep < 50; ++rep) {
        const int d = rep % 2 == 0 ? 2 : 3;
        probe(random_channel(rng, d, d), "random d=" + std::to_string(d));
    }
}

// ------------------------------------------------------------ criterion 7

void criterion_structural(Check& ck) {
    Rng rng(mix_seed(kSeed, 7));
    for (int rep = 0; rep < 50; ++rep) {
        const int d = rep % 2 == 0 ? 2 : 3;
        const Channel c = random_channel(rng, d, d);
        const StandardKraus sk = standard_kraus(c);

        const Channel rebuilt(d, d, sk.kraus);
        ck.expect(max_abs_diff(choi(rebuilt).matrix(), choi(c).matrix()) <= 1e-8,
                  "round-trip Choi error");

        for (size_t i = 0; i < sk.kraus.size(); ++i)
            for (size_t j = i + 1; j < sk.kraus.size(); ++j) {
                const cplx ip = (sk.kraus[i].adjoint() * sk.kraus[j]).trace();
                ck.expect(std::abs(ip) <= 1e-8 * std::sqrt(sk.norms[i] * sk.norms[j]),
                          "standard Kraus orthogonality");
            }

        const ComplexMatrix relabeled = swap_factors(choi(dual_channel(c)).matrix(), d, d);
        ck.expect(max_abs_diff(choi(c).matrix(), relabeled.conjugate()) <= 1e-9,
                  "dual Choi conjugation identity");

        const ComplexMatrix tr_b = partial_trace(choi(c).matrix(), d, d, Subsystem::A);
        ck.expect(max_abs_diff(tr_b, ComplexMatrix::identity(d)) <= 1e-9,
                  "partial trace of Choi");
    }
}

// ------------------------------------------------------------ criterion 8

void criterion_simulation(Check& ck) {
    Rng rng(mix_seed(kSeed, 8));
    for (int rep = 0; rep < 20; ++rep) {
        const double b = rng.uniform();
        const double c = 0.05 + 0.95 * rng.uniform();
        const double cp = c * rng.uniform();
        const SimulationDecomposition dec = pcubed_simulation(b, c, cp);
        ck.expect(dec.choi_residual <= 1e-8,
                  "composition Choi residual at rep " + std::to_string(rep));
        const double o_fine = max_fidelity(pcubed_channel(b, c).channel).o_value;
        const double o_coarse = max_fidelity(dec.coarse).o_value;
        ck.expect(o_coarse <= o_fine + 1e-12, "fidelity must not grow with extra noise");
    }
}

// ------------------------------------------------------------ criterion 9

void criterion_lemma2_sampling(Check& ck) {
    Rng rng(mix_seed(kSeed, 9));
    for (int ch = 0; ch < 10; ++ch) {
        const int d = ch < 5 ? 2 : 3;
        const Channel c = random_channel(rng, d, d);
        const FidelityReport fid = max_fidelity(c);
        for (int rep = 0; rep < 200; ++rep) {
            const ComplexMatrix rho = random_density(rng, d * d);
            const double fef = fully_entangled_fraction(apply_extended(c, rho), 3, 120,
                                                        mix_seed(kSeed, 900 + ch * 200 + rep));
            ck.expect(fef <= fid.o_value + 1e-6, "sampled output fraction exceeds the optimum");
        }
        const double at_opt = fully_entangled_fraction(apply_extended(c, fid.optimal_input), 6,
                                                       200, mix_seed(kSeed, 950 + ch));
        ck.expect(at_opt >= fid.o_value - 1e-6, "optimal input must achieve the optimum");
        ck.expect(at_opt <= fid.o_value + 1e-6, "optimal input must not exceed the optimum");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"1. amplitude damping: O = 1 - p/2, E = h(1/(2-p)), product witness at p = 1",
         criterion_amplitude_damping},
        {"2. extremal qubit grid: closed forms, c = 0 witnesses, discontinuity",
         criterion_extremal_qubit},
        {"3. Pauli channels: O = p0, E in {0, 1}, tied cases anti-degradable", criterion_pauli},
        {"4. qutrit channels: O(M) = lambda, O(P) = (z+2)/6, z = 0 entangled floor",
         criterion_qutrit},
        {"5. multiplicativity over random pairs and the family suite", criterion_multiplicativity},
        {"6. oracle equivalence on every family grid point and random channels", criterion_oracle},
        {"7. structural invariants over random channels", criterion_structural},
        {"8. composition simulation and noise monotonicity", criterion_simulation},
        {"9. fully entangled fraction sampling bound", criterion_lemma2_sampling},
    };

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check ck;
        const auto start = std::chrono::steady_clock::now();
        try {
            fn(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("unexpected exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (ck.failures == 0) {
            std::printf("[PASS] %s (%lld ms)\n", name.c_str(), static_cast<long long>(ms));
        } else {
            ++failed;
            std::printf("[FAIL] %s (%d checks failed; first: %s)\n", name.c_str(), ck.failures,
                        ck.first_failure.c_str());
        }
    }
    return failed;
}
