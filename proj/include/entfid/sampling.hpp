#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "entfid/linalg.hpp"

namespace entfid {

class Channel;

/// Deterministic random source. Uniforms and normals are generated from the
/// raw mt19937_64 stream directly (Box-Muller), so sequences are identical
/// across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal();
    cplx cnormal() { return cplx(normal(), normal()); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Derive an independent stream seed from a base seed and an index, so that
/// concurrent per-point evaluations stay deterministic.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

std::vector<cplx> random_unit_vector(Rng& rng, int dim);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, int dim);

/// Random density as a normalized mixture of Gaussian pure states.
/// mixture = 0 picks dim^2 components (generically full rank).
ComplexMatrix random_density(Rng& rng, int dim, int mixture = 0);

/// Random CPTP map sampled from a Haar isometry into output (x) environment;
/// kraus_count = 0 picks dim_in * dim_out environment dimensions.
Channel random_channel(Rng& rng, int dim_in, int dim_out, int kraus_count = 0);

}  // namespace entfid
