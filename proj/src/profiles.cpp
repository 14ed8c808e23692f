#include "lattice_lab/profiles.hpp"

#include <algorithm>

#include "lattice_lab/error.hpp"

namespace lattice_lab {

using nlohmann::json;

std::string_view to_string(TriState value)
{
    switch (value) {
    case TriState::yes:
        return "yes";
    case TriState::no:
        return "no";
    case TriState::unknown:
        return "unknown";
    }
    return "?";
}

TriState tristate_from_string(std::string_view text)
{
    if (text == "yes")
        return TriState::yes;
    if (text == "no")
        return TriState::no;
    if (text == "unknown")
        return TriState::unknown;
    throw ParameterError("expected yes, no or unknown, got '" + std::string(text) + "'");
}

ProfileRegistry ProfileRegistry::builtin()
{
    ProfileRegistry registry;

    SecurityProfile rsa;
    rsa.scheme = "RSA-2048";
    rsa.classical = TriState::yes;
    rsa.quantum = TriState::no;
    rsa.reduction_backed = TriState::no;
    rsa.notes.classical = "No known polynomial-time classical algorithm";
    rsa.notes.quantum = "Shor";
    rsa.notes.reduction_backed = "No worst-case to average-case reduction for factoring";
    rsa.references = {"shor1997"};
    registry.add(std::move(rsa));

    SecurityProfile kem;
    kem.scheme = "ML-KEM-768";
    kem.classical = TriState::yes;
    // No known quantum polynomial-time attack, so quantum = yes.
    kem.quantum = TriState::yes;
    kem.reduction_backed = TriState::yes;
    kem.notes.classical = "No known polynomial-time classical algorithm";
    kem.notes.quantum = "No known attack";
    kem.notes.reduction_backed = "Module-LWE";
    kem.references = {"regev2009"};
    registry.add(std::move(kem));

    return registry;
}

void ProfileRegistry::add(SecurityProfile profile)
{
    auto it = std::lower_bound(profiles_.begin(), profiles_.end(), profile.scheme,
                               [](const SecurityProfile& p, const std::string& name) { return p.scheme < name; });
    if (it != profiles_.end() && it->scheme == profile.scheme)
        throw ParameterError("duplicate scheme '" + profile.scheme + "'");
    profiles_.insert(it, std::move(profile));
}

const SecurityProfile& ProfileRegistry::profile_of(std::string_view scheme) const
{
    for (const auto& p : profiles_)
        if (p.scheme == scheme)
            return p;
    std::string available;
    for (const auto& p : profiles_) {
        if (!available.empty())
            available += ", ";
        available += p.scheme;
    }
    throw NotFoundError("unknown scheme '" + std::string(scheme) + "'; available: " +
                        (available.empty() ? std::string("(none)") : available));
}

std::vector<std::string> ProfileRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& p : profiles_)
        out.push_back(p.scheme);
    return out;
}

std::vector<std::string> validate_profile(const SecurityProfile& profile)
{
    std::vector<std::string> violations;
    auto legal = [](TriState v) { return v == TriState::yes || v == TriState::no || v == TriState::unknown; };

    if (profile.scheme.empty())
        violations.push_back("scheme name is empty");
    if (!legal(profile.classical))
        violations.push_back("classical is not yes/no/unknown");
    if (!legal(profile.quantum))
        violations.push_back("quantum is not yes/no/unknown");
    if (profile.reduction_backed != TriState::yes && profile.reduction_backed != TriState::no)
        violations.push_back("reduction_backed must be yes or no");

    if (profile.classical != TriState::unknown && profile.notes.classical.empty())
        violations.push_back("classical indicator has no note");
    if (profile.quantum != TriState::unknown && profile.notes.quantum.empty())
        violations.push_back("quantum indicator has no note");
    if (profile.reduction_backed != TriState::unknown && profile.notes.reduction_backed.empty())
        violations.push_back("reduction_backed indicator has no note");
    return violations;
}

json to_json(const SecurityProfile& p)
{
    return json{
        {"scheme", p.scheme},
        {"classical", std::string(to_string(p.classical))},
        {"quantum", std::string(to_string(p.quantum))},
        {"reduction_backed", std::string(to_string(p.reduction_backed))},
        {"notes",
         {{"classical", p.notes.classical},
          {"quantum", p.notes.quantum},
          {"reduction_backed", p.notes.reduction_backed}}},
        {"references", p.references},
    };
}

namespace {

const std::string& string_field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name) || !j.at(name).is_string())
        throw ParseError(std::string("profile field \"") + name + "\" missing or not a string", 0);
    return j.at(name).get_ref<const std::string&>();
}

TriState tristate_field(const json& j, const char* name)
{
    try {
        return tristate_from_string(string_field(j, name));
    } catch (const ParameterError& e) {
        throw ParseError(std::string("profile field \"") + name + "\": " + e.what(), 0);
    }
}

} // namespace

SecurityProfile profile_from_json(const json& j)
{
    SecurityProfile p;
    p.scheme = string_field(j, "scheme");
    p.classical = tristate_field(j, "classical");
    p.quantum = tristate_field(j, "quantum");
    p.reduction_backed = tristate_field(j, "reduction_backed");
    if (!j.contains("notes"))
        throw ParseError("profile field \"notes\" missing", 0);
    const json& notes = j.at("notes");
    p.notes.classical = string_field(notes, "classical");
    p.notes.quantum = string_field(notes, "quantum");
    p.notes.reduction_backed = string_field(notes, "reduction_backed");
    if (!j.contains("references") || !j.at("references").is_array())
        throw ParseError("profile field \"references\" missing or not an array", 0);
    for (const auto& r : j.at("references")) {
        if (!r.is_string())
            throw ParseError("references must be strings", 0);
        p.references.push_back(r.get<std::string>());
    }
    return p;
}

std::string export_profiles(const ProfileRegistry& registry)
{
    json out = json::array();
    for (const auto& p : registry.profiles())
        out.push_back(to_json(p));
    return out.dump(2);
}

ProfileRegistry parse_profiles(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    if (!j.is_array())
        throw ParseError("profile registry must be a JSON array", 0);
    ProfileRegistry registry;
    for (const auto& item : j) {
        try {
            registry.add(profile_from_json(item));
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), 0);
        }
    }
    return registry;
}

} // namespace lattice_lab
