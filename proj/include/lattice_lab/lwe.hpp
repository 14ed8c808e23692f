#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/enumeration.hpp"

namespace lattice_lab {

/// Regev-style bit encryption at deliberately small, breakable sizes.
struct LweParams {
    std::size_t n = 8;       // secret dimension
    std::uint64_t q = 257;   // odd prime modulus, below 2^31
    std::size_t m = 32;      // number of samples
    std::uint64_t eta = 1;   // errors uniform in [-eta, eta]

    /// Throws ParameterError unless q is an odd prime < 2^31, n, m >= 1 and
    /// 4 m eta < q, which makes every decryption correct.
    void validate() const;

    bool operator==(const LweParams&) const = default;
};

using ZqVector = std::vector<std::uint64_t>;
using ZqMatrix = std::vector<ZqVector>;

struct LwePublicKey {
    LweParams params;
    ZqMatrix a;   // m x n
    ZqVector b;   // A s + e mod q

    bool operator==(const LwePublicKey&) const = default;
};

struct LweKeyPair {
    LwePublicKey pub;
    ZqVector secret;                 // s in Z_q^n
    std::vector<std::int64_t> error; // e, kept so tests can check b - A s = e

    bool operator==(const LweKeyPair&) const = default;
};

struct LweCiphertext {
    ZqVector c1;       // A^T r mod q
    std::uint64_t c2;  // <b, r> + bit * floor(q/2) mod q

    bool operator==(const LweCiphertext&) const = default;
};

LweKeyPair lwe_keygen(const LweParams& params, std::uint64_t seed);

/// r is drawn from the seeded stream, one bit per sample.
LweCiphertext lwe_encrypt(const LwePublicKey& pub, int bit, std::uint64_t seed);

/// Same as lwe_encrypt with the selection vector r in {0,1}^m given explicitly.
LweCiphertext lwe_encrypt_with(const LwePublicKey& pub, int bit, const std::vector<std::uint8_t>& r);

int lwe_decrypt(const LweParams& params, const ZqVector& secret, const LweCiphertext& ct);

/// Canonical representative of v mod q in [0, q).
std::uint64_t mod_q(std::int64_t v, std::uint64_t q);

struct LweAttackResult {
    bool success = false;
    SvpStatus status = SvpStatus::ok;
    std::vector<std::int64_t> error;  // e', filled when the candidate has the expected shape
    ZqVector secret;                  // s', filled on success
    IntVector candidate;              // shortest vector found in the embedding lattice
    Integer norm_sq;
    std::uint64_t nodes = 0;
};

/// Kannan embedding with factor 1: the lattice generated by the m + n + 1
/// rows (q e_i | 0), (A^T_j | 0) and (b | 1), i.e. the q-ary lattice of
/// [[A^T, 0], [b, 1]] in dimension m + 1. A shortest vector of the form
/// +/-(e' | 1) with |e'|_inf <= eta yields s' from A s' = b - e' (mod q).
/// Requires n + m + 1 <= 32.
LweAttackResult lwe_embedding_attack(const LwePublicKey& pub, const Budget& budget = {});

/// Basis of the embedding lattice used by the attack (rows of length m + 1).
Basis lwe_embedding_basis(const LwePublicKey& pub);

/// Checks b - A s' = e' (mod q) and |e'|_inf <= eta.
bool lwe_verify_solution(const LwePublicKey& pub, const ZqVector& secret, const std::vector<std::int64_t>& error);

} // namespace lattice_lab
