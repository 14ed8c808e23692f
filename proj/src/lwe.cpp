#include "lattice_lab/lwe.hpp"

#include <cstdlib>
#include <optional>

#include "lattice_lab/error.hpp"
#include "lattice_lab/prng.hpp"

namespace lattice_lab {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;
constexpr std::size_t kMaxAttackDimension = 32;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) { return (a * b) % q; }

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q)
{
    // Fermat; q is prime.
    std::uint64_t result = 1, base = a % q, e = q - 2;
    while (e) {
        if (e & 1)
            result = mul_mod(result, base, q);
        base = mul_mod(base, base, q);
        e >>= 1;
    }
    return result;
}

std::int64_t centered(std::uint64_t v, std::uint64_t q)
{
    // (-q/2, q/2] for odd q is [-(q-1)/2, (q-1)/2].
    const auto s = static_cast<std::int64_t>(v % q);
    return s > static_cast<std::int64_t>(q / 2) ? s - static_cast<std::int64_t>(q) : s;
}

// Reduced row echelon form over Z_q in place; returns pivot columns.
std::vector<std::size_t> rref_mod(ZqMatrix& a, std::size_t pivot_cols, std::uint64_t q)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[row]);
        const std::uint64_t inv = inv_mod(a[row][col], q);
        for (auto& v : a[row])
            v = mul_mod(v, inv, q);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0)
                continue;
            const std::uint64_t f = a[r][col];
            for (std::size_t c = 0; c < a[r].size(); ++c)
                a[r][c] = (a[r][c] + q - mul_mod(f, a[row][c], q)) % q;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Some s with A s = rhs (mod q), free variables set to zero.
std::optional<ZqVector> solve_mod(const ZqMatrix& a, const ZqVector& rhs, std::uint64_t q)
{
    const std::size_t rows = a.size();
    const std::size_t n = rows ? a[0].size() : 0;
    ZqMatrix aug(rows, ZqVector(n + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j] % q;
        aug[i][n] = rhs[i] % q;
    }
    const auto pivots = rref_mod(aug, n, q);
    for (std::size_t i = pivots.size(); i < rows; ++i)
        if (aug[i][n] != 0)
            return std::nullopt;
    ZqVector s(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        s[pivots[i]] = aug[i][n];
    return s;
}

void check_public(const LwePublicKey& pub)
{
    pub.params.validate();
    const auto& p = pub.params;
    if (pub.a.size() != p.m || pub.b.size() != p.m)
        throw ParameterError("public key shape does not match m");
    for (const auto& row : pub.a) {
        if (row.size() != p.n)
            throw ParameterError("public key shape does not match n");
        for (auto v : row)
            if (v >= p.q)
                throw ParameterError("public key entries must lie in [0, q)");
    }
    for (auto v : pub.b)
        if (v >= p.q)
            throw ParameterError("public key entries must lie in [0, q)");
}

} // namespace

void LweParams::validate() const
{
    if (n < 1 || m < 1)
        throw ParameterError("LWE dimensions n and m must be positive");
    if (q < 3 || q >= kMaxModulus || mpz_probab_prime_p(Integer(static_cast<unsigned long>(q)).get_mpz_t(), 40) == 0)
        throw ParameterError("q must be an odd prime below 2^31, got " + std::to_string(q));
    // m * eta < q / 4
    const Integer lhs = Integer(static_cast<unsigned long>(m)) * static_cast<unsigned long>(eta) * 4;
    if (lhs >= static_cast<unsigned long>(q))
        throw ParameterError("m * eta must be below q / 4 for correct decryption");
}

std::uint64_t mod_q(std::int64_t v, std::uint64_t q)
{
    const auto sq = static_cast<std::int64_t>(q);
    std::int64_t r = v % sq;
    if (r < 0)
        r += sq;
    return static_cast<std::uint64_t>(r);
}

LweKeyPair lwe_keygen(const LweParams& params, std::uint64_t seed)
{
    params.validate();
    SplitMix64 rng(seed);
    LweKeyPair kp;
    kp.pub.params = params;
    kp.pub.a.assign(params.m, ZqVector(params.n));
    for (auto& row : kp.pub.a)
        for (auto& v : row)
            v = rng.below(params.q);
    kp.secret.resize(params.n);
    for (auto& v : kp.secret)
        v = rng.below(params.q);
    kp.error.resize(params.m);
    for (auto& v : kp.error)
        v = static_cast<std::int64_t>(rng.below(2 * params.eta + 1)) - static_cast<std::int64_t>(params.eta);

    kp.pub.b.resize(params.m);
    for (std::size_t i = 0; i < params.m; ++i) {
        std::uint64_t acc = mod_q(kp.error[i], params.q);
        for (std::size_t j = 0; j < params.n; ++j)
            acc = (acc + mul_mod(kp.pub.a[i][j], kp.secret[j], params.q)) % params.q;
        kp.pub.b[i] = acc;
    }
    return kp;
}

LweCiphertext lwe_encrypt_with(const LwePublicKey& pub, int bit, const std::vector<std::uint8_t>& r)
{
    if (bit != 0 && bit != 1)
        throw ParameterError("plaintext must be a single bit, got " + std::to_string(bit));
    check_public(pub);
    const auto& p = pub.params;
    if (r.size() != p.m)
        throw ParameterError("selection vector must have length m");

    LweCiphertext ct{ZqVector(p.n, 0), 0};
    for (std::size_t i = 0; i < p.m; ++i) {
        if (!r[i])
            continue;
        for (std::size_t j = 0; j < p.n; ++j)
            ct.c1[j] = (ct.c1[j] + pub.a[i][j]) % p.q;
        ct.c2 = (ct.c2 + pub.b[i]) % p.q;
    }
    if (bit)
        ct.c2 = (ct.c2 + p.q / 2) % p.q;
    return ct;
}

LweCiphertext lwe_encrypt(const LwePublicKey& pub, int bit, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> r(pub.params.m);
    for (auto& v : r)
        v = static_cast<std::uint8_t>(rng.next() & 1);
    return lwe_encrypt_with(pub, bit, r);
}

int lwe_decrypt(const LweParams& params, const ZqVector& secret, const LweCiphertext& ct)
{
    params.validate();
    if (ct.c1.size() != params.n || secret.size() != params.n)
        throw ParameterError("ciphertext or secret length does not match n");
    const std::uint64_t q = params.q;
    std::uint64_t inner = 0;
    for (std::size_t j = 0; j < params.n; ++j)
        inner = (inner + mul_mod(secret[j] % q, ct.c1[j] % q, q)) % q;
    const std::uint64_t d = (ct.c2 % q + q - inner) % q;
    const std::int64_t to_zero = std::llabs(centered(d, q));
    const std::int64_t to_half = std::llabs(centered((d + q - q / 2) % q, q));
    return to_half < to_zero ? 1 : 0;
}

Basis lwe_embedding_basis(const LwePublicKey& pub)
{
    check_public(pub);
    const auto& p = pub.params;
    const std::size_t dim = p.m + 1;

    // Generators modulo q: the columns of A (as rows) and (b | 1).
    ZqMatrix gens(p.n + 1, ZqVector(dim, 0));
    for (std::size_t j = 0; j < p.n; ++j)
        for (std::size_t i = 0; i < p.m; ++i)
            gens[j][i] = pub.a[i][j];
    for (std::size_t i = 0; i < p.m; ++i)
        gens[p.n][i] = pub.b[i];
    gens[p.n][p.m] = 1;

    const auto pivots = rref_mod(gens, dim, p.q);

    // Echelon basis of the q-ary lattice: RREF rows at pivot columns,
    // q e_c at the others.
    std::vector<IntVector> rows;
    rows.reserve(dim);
    std::size_t next_pivot = 0;
    for (std::size_t c = 0; c < dim; ++c) {
        IntVector row(dim, Integer(0));
        if (next_pivot < pivots.size() && pivots[next_pivot] == c) {
            for (std::size_t k = 0; k < dim; ++k)
                row[k] = static_cast<unsigned long>(gens[next_pivot][k]);
            ++next_pivot;
        } else {
            row[c] = static_cast<unsigned long>(p.q);
        }
        rows.push_back(std::move(row));
    }
    return Basis(std::move(rows));
}

bool lwe_verify_solution(const LwePublicKey& pub, const ZqVector& secret, const std::vector<std::int64_t>& error)
{
    const auto& p = pub.params;
    if (secret.size() != p.n || error.size() != p.m)
        return false;
    for (std::size_t i = 0; i < p.m; ++i) {
        if (static_cast<std::uint64_t>(std::llabs(error[i])) > p.eta)
            return false;
        std::uint64_t as = 0;
        for (std::size_t j = 0; j < p.n; ++j)
            as = (as + mul_mod(pub.a[i][j], secret[j] % p.q, p.q)) % p.q;
        if ((pub.b[i] + p.q - as) % p.q != mod_q(error[i], p.q))
            return false;
    }
    return true;
}

LweAttackResult lwe_embedding_attack(const LwePublicKey& pub, const Budget& budget)
{
    const auto& p = pub.params;
    if (p.n + p.m + 1 > kMaxAttackDimension)
        throw ParameterError("embedding attack needs n + m + 1 <= 32, got " + std::to_string(p.n + p.m + 1));

    const Basis basis = lwe_embedding_basis(pub);
    const SvpResult svp = enumerate_svp(basis, budget);

    LweAttackResult out;
    out.status = svp.status;
    out.candidate = svp.vector;
    out.norm_sq = svp.norm_sq;
    out.nodes = svp.nodes;
    if (svp.status != SvpStatus::ok)
        return out;

    const Integer& tail = svp.vector[p.m];
    if (abs(tail) != 1)
        return out;
    const int sign = tail > 0 ? 1 : -1;
    std::vector<std::int64_t> error(p.m);
    for (std::size_t i = 0; i < p.m; ++i) {
        const Integer v = sign * svp.vector[i];
        if (abs(v) > static_cast<unsigned long>(p.eta))
            return out;
        error[i] = v.get_si();
    }
    out.error = error;

    ZqVector rhs(p.m);
    for (std::size_t i = 0; i < p.m; ++i)
        rhs[i] = (pub.b[i] + p.q - mod_q(error[i], p.q)) % p.q;
    auto secret = solve_mod(pub.a, rhs, p.q);
    if (!secret)
        return out;
    out.secret = std::move(*secret);
    out.success = lwe_verify_solution(pub, out.secret, out.error);
    return out;
}

} // namespace lattice_lab
