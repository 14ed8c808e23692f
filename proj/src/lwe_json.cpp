#include "lattice_lab/lwe_json.hpp"

#include <charconv>

#include "lattice_lab/error.hpp"

namespace lattice_lab {

using nlohmann::json;

namespace {

template <class T>
std::string dec(T v)
{
    return std::to_string(v);
}

template <class Vec>
json dec_array(const Vec& values)
{
    json out = json::array();
    for (const auto& v : values)
        out.push_back(dec(v));
    return out;
}

const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        throw ParseError(std::string("missing field \"") + name + "\"", 0);
    return j.at(name);
}

template <class T>
T parse_number(const json& j, const char* name)
{
    if (!j.is_string())
        throw ParseError(std::string("field \"") + name + "\" must be a decimal string", 0);
    const auto& s = j.get_ref<const std::string&>();
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("field \"") + name + "\" is not a valid integer: '" + s + "'", 0);
    return v;
}

template <class T>
std::vector<T> parse_array(const json& j, const char* name)
{
    if (!j.is_array())
        throw ParseError(std::string("field \"") + name + "\" must be an array", 0);
    std::vector<T> out;
    out.reserve(j.size());
    for (const auto& v : j)
        out.push_back(parse_number<T>(v, name));
    return out;
}

void check_range(const std::vector<std::uint64_t>& v, std::size_t size, std::uint64_t q, const char* name)
{
    if (v.size() != size)
        throw ParseError(std::string("field \"") + name + "\" has length " + std::to_string(v.size()) +
                             ", expected " + std::to_string(size),
                         0);
    for (auto x : v)
        if (x >= q)
            throw ParseError(std::string("field \"") + name + "\" has an entry outside [0, q)", 0);
}

} // namespace

json to_json(const LweParams& p)
{
    return json{{"n", dec(p.n)}, {"q", dec(p.q)}, {"m", dec(p.m)}, {"eta", dec(p.eta)}};
}

json to_json(const LwePublicKey& pub)
{
    json j = to_json(pub.params);
    json a = json::array();
    for (const auto& row : pub.a)
        a.push_back(dec_array(row));
    j["A"] = std::move(a);
    j["b"] = dec_array(pub.b);
    return j;
}

json to_json(const LweKeyPair& kp)
{
    json j = to_json(kp.pub);
    j["s"] = dec_array(kp.secret);
    j["e"] = dec_array(kp.error);
    return j;
}

json to_json(const LweCiphertext& ct, const LweParams& params)
{
    return json{{"n", dec(params.n)}, {"q", dec(params.q)}, {"c1", dec_array(ct.c1)}, {"c2", dec(ct.c2)}};
}

json to_json(const LweAttackResult& r)
{
    json candidate = json::array();
    for (const auto& v : r.candidate)
        candidate.push_back(v.get_str());
    return json{{"success", r.success},
                {"status", std::string(to_string(r.status))},
                {"norm_sq", r.norm_sq.get_str()},
                {"nodes", dec(r.nodes)},
                {"candidate", std::move(candidate)},
                {"e", dec_array(r.error)},
                {"s", dec_array(r.secret)}};
}

LweParams lwe_params_from_json(const json& j)
{
    LweParams p;
    p.n = parse_number<std::size_t>(field(j, "n"), "n");
    p.q = parse_number<std::uint64_t>(field(j, "q"), "q");
    p.m = parse_number<std::size_t>(field(j, "m"), "m");
    p.eta = parse_number<std::uint64_t>(field(j, "eta"), "eta");
    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw ParseError(e.what(), 0);
    }
    return p;
}

LwePublicKey lwe_public_from_json(const json& j)
{
    LwePublicKey pub;
    pub.params = lwe_params_from_json(j);
    const json& a = field(j, "A");
    if (!a.is_array())
        throw ParseError("field \"A\" must be an array of rows", 0);
    for (const auto& row : a)
        pub.a.push_back(parse_array<std::uint64_t>(row, "A"));
    pub.b = parse_array<std::uint64_t>(field(j, "b"), "b");
    if (pub.a.size() != pub.params.m)
        throw ParseError("field \"A\" must have m rows", 0);
    for (const auto& row : pub.a)
        check_range(row, pub.params.n, pub.params.q, "A");
    check_range(pub.b, pub.params.m, pub.params.q, "b");
    return pub;
}

LweKeyPair lwe_keypair_from_json(const json& j)
{
    LweKeyPair kp;
    kp.pub = lwe_public_from_json(j);
    kp.secret = parse_array<std::uint64_t>(field(j, "s"), "s");
    kp.error = parse_array<std::int64_t>(field(j, "e"), "e");
    check_range(kp.secret, kp.pub.params.n, kp.pub.params.q, "s");
    if (kp.error.size() != kp.pub.params.m)
        throw ParseError("field \"e\" must have m entries", 0);
    return kp;
}

LweCiphertext lwe_ciphertext_from_json(const json& j)
{
    LweCiphertext ct;
    ct.c1 = parse_array<std::uint64_t>(field(j, "c1"), "c1");
    ct.c2 = parse_number<std::uint64_t>(field(j, "c2"), "c2");
    const auto n = parse_number<std::size_t>(field(j, "n"), "n");
    const auto q = parse_number<std::uint64_t>(field(j, "q"), "q");
    check_range(ct.c1, n, q, "c1");
    if (ct.c2 >= q)
        throw ParseError("field \"c2\" must lie in [0, q)", 0);
    return ct;
}

} // namespace lattice_lab
