#include "lattice_lab/basis.hpp"

#include <istream>
#include <iterator>
#include <sstream>

#include "lattice_lab/error.hpp"
#include "lattice_lab/gram_schmidt.hpp"
#include "lattice_lab/prng.hpp"

namespace lattice_lab {

namespace {

void check_shape(std::size_t rows, std::size_t cols)
{
    if (rows < Basis::kMinRows || rows > Basis::kMaxRows)
        throw ParameterError("basis must have between 2 and 128 rows, got " + std::to_string(rows));
    if (cols < rows)
        throw ParameterError("basis needs at least as many columns as rows");
}

Integer from_u64(std::uint64_t v)
{
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

std::uint64_t low_bits(std::uint64_t v, unsigned bits)
{
    return bits >= 64 ? v : (v & ((std::uint64_t{1} << bits) - 1));
}

} // namespace

Basis::Basis(std::size_t rows, std::size_t cols) : cols_(cols)
{
    check_shape(rows, cols);
    rows_.assign(rows, IntVector(cols, Integer(0)));
}

Basis::Basis(std::vector<IntVector> rows) : rows_(std::move(rows)), cols_(rows_.empty() ? 0 : rows_[0].size())
{
    check_shape(rows_.size(), cols_);
    for (const auto& r : rows_)
        if (r.size() != cols_)
            throw ParameterError("basis rows have different lengths");
}

Basis Basis::identity(std::size_t n)
{
    Basis b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        b(i, i) = 1;
    return b;
}

Integer Basis::row_norm_sq(std::size_t i) const
{
    return dot(rows_[i], rows_[i]);
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b)
{
    Integer acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), b[k].get_mpz_t());
    return acc;
}

std::string_view to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::uniform:
        return "uniform";
    case FamilyKind::qary:
        return "qary";
    case FamilyKind::circulant:
        return "circulant";
    }
    return "?";
}

FamilyKind family_kind_from_string(std::string_view name)
{
    if (name == "uniform")
        return FamilyKind::uniform;
    if (name == "qary")
        return FamilyKind::qary;
    if (name == "circulant")
        return FamilyKind::circulant;
    throw ParameterError("unknown lattice family '" + std::string(name) + "'");
}

void LatticeFamily::validate() const
{
    if (bits < 4 || bits > 64)
        throw ParameterError("bits must be in [4, 64], got " + std::to_string(bits));
    if (q < 3 || mpz_probab_prime_p(from_u64(q).get_mpz_t(), 40) == 0)
        throw ParameterError("q must be a prime >= 3, got " + std::to_string(q));
}

Basis gen_basis(const LatticeFamily& family, std::size_t n, std::uint64_t seed)
{
    family.validate();
    if (n < Basis::kMinRows || n > Basis::kMaxRows)
        throw ParameterError("dimension must be in [2, 128], got " + std::to_string(n));

    SplitMix64 rng(seed);

    if (family.kind == FamilyKind::qary) {
        if (n % 2 != 0)
            throw ParameterError("qary family needs an even dimension, got " + std::to_string(n));
        const std::size_t h = n / 2;
        Basis b(n, n);
        for (std::size_t i = 0; i < h; ++i)
            b(i, i) = from_u64(family.q);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < h; ++j)
                b(h + i, j) = from_u64(rng.below(family.q));
            b(h + i, h + i) = 1;
        }
        return b;
    }

    for (int attempt = 0; attempt <= kGenerationRetries; ++attempt) {
        Basis b(n, n);
        if (family.kind == FamilyKind::uniform) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    b(i, j) = from_u64(low_bits(rng.next(), family.bits));
        } else {
            for (std::size_t j = 0; j < n; ++j)
                b(0, j) = from_u64(low_bits(rng.next(), family.bits));
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    b(i, j) = b(i - 1, (j + n - 1) % n);
        }
        if (is_full_rank(b))
            return b;
    }
    throw GenerationError("no full-rank " + std::string(to_string(family.kind)) + " basis of dimension " +
                          std::to_string(n) + " after " + std::to_string(kGenerationRetries) + " retries");
}

namespace {

// Splits `line` on single spaces; rejects empty fields (double, leading or
// trailing spaces) and any other whitespace.
std::vector<std::string_view> split_fields(std::string_view line, std::size_t lineno)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t sp = line.find(' ', start);
        std::string_view field = line.substr(start, sp == std::string_view::npos ? std::string_view::npos : sp - start);
        if (field.empty())
            throw ParseError("unexpected space", lineno);
        out.push_back(field);
        if (sp == std::string_view::npos)
            break;
        start = sp + 1;
    }
    return out;
}

Integer parse_integer(std::string_view tok, std::size_t lineno)
{
    std::string_view digits = tok;
    if (!digits.empty() && digits.front() == '-')
        digits.remove_prefix(1);
    if (digits.empty())
        throw ParseError("expected an integer, got '" + std::string(tok) + "'", lineno);
    for (char c : digits)
        if (c < '0' || c > '9')
            throw ParseError("expected an integer, got '" + std::string(tok) + "'", lineno);
    return Integer(std::string(tok), 10);
}

std::size_t parse_count(std::string_view tok, std::size_t lineno)
{
    if (tok.empty() || tok.size() > 6)
        throw ParseError("bad header count '" + std::string(tok) + "'", lineno);
    std::size_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9')
            throw ParseError("bad header count '" + std::string(tok) + "'", lineno);
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

} // namespace

Basis parse_basis(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty())
        throw ParseError("missing header", 1);

    const auto header = split_fields(lines[0], 1);
    if (header.size() != 2)
        throw ParseError("header must be \"n m\"", 1);
    const std::size_t n = parse_count(header[0], 1);
    const std::size_t m = parse_count(header[1], 1);
    if (n < Basis::kMinRows || n > Basis::kMaxRows)
        throw ParseError("row count must be in [2, 128]", 1);
    if (m < n)
        throw ParseError("column count must be at least the row count", 1);

    if (lines.size() < n + 1)
        throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1),
                         lines.size() + 1);
    if (lines.size() > n + 1)
        throw ParseError("unexpected content after " + std::to_string(n) + " rows", n + 2);

    std::vector<IntVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lineno = i + 2;
        if (lines[i + 1].empty())
            throw ParseError("empty row", lineno);
        const auto fields = split_fields(lines[i + 1], lineno);
        if (fields.size() != m)
            throw ParseError("expected " + std::to_string(m) + " entries, found " + std::to_string(fields.size()),
                             lineno);
        IntVector row;
        row.reserve(m);
        for (auto f : fields)
            row.push_back(parse_integer(f, lineno));
        rows.push_back(std::move(row));
    }
    return Basis(std::move(rows));
}

Basis read_basis(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_basis(text);
}

std::string format_basis(const Basis& basis)
{
    std::ostringstream out;
    out << basis.rows() << ' ' << basis.cols() << '\n';
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            if (j)
                out << ' ';
            out << basis(i, j);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace lattice_lab
