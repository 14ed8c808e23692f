#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lattice_lab {

enum class TriState { yes, no, unknown };

std::string_view to_string(TriState value);
/// Accepts "yes", "no" and "unknown"; throws ParameterError otherwise.
TriState tristate_from_string(std::string_view text);

/// Interpretive security profile (S_c, S_q, S_r) of one scheme: resistance
/// to known classical and quantum polynomial-time attacks, and whether the
/// construction rests on reduction-based hardness arguments. It classifies;
/// it does not certify security.
struct SecurityProfile {
    std::string scheme;
    TriState classical = TriState::unknown;
    TriState quantum = TriState::unknown;
    /// Binary in a valid profile; `unknown` is representable only so the
    /// validator can report it.
    TriState reduction_backed = TriState::no;

    struct Notes {
        std::string classical;
        std::string quantum;
        std::string reduction_backed;
        bool operator==(const Notes&) const = default;
    } notes;

    std::vector<std::string> references;

    bool operator==(const SecurityProfile&) const = default;
};

/// Profiles keyed by scheme name, kept sorted by name.
class ProfileRegistry {
public:
    ProfileRegistry() = default;

    /// The RSA-2048 and ML-KEM-768 worked examples.
    static ProfileRegistry builtin();

    /// Throws ParameterError on a duplicate scheme name.
    void add(SecurityProfile profile);

    /// Throws NotFoundError listing the available names.
    const SecurityProfile& profile_of(std::string_view scheme) const;

    const std::vector<SecurityProfile>& profiles() const noexcept { return profiles_; }
    std::vector<std::string> names() const;

    bool operator==(const ProfileRegistry&) const = default;

private:
    std::vector<SecurityProfile> profiles_;
};

/// Structural checks only: legal tri-states, binary reduction_backed,
/// non-empty scheme name, and a note for every indicator that is not
/// unknown. Returns one message per violation; empty means valid.
std::vector<std::string> validate_profile(const SecurityProfile& profile);

nlohmann::json to_json(const SecurityProfile& profile);
SecurityProfile profile_from_json(const nlohmann::json& j);

/// Canonical JSON array sorted by scheme, keys in sorted order, 2-space
/// indent, no trailing newline. An empty registry exports as "[]".
std::string export_profiles(const ProfileRegistry& registry);
/// Throws ParseError on malformed input.
ProfileRegistry parse_profiles(std::string_view text);

} // namespace lattice_lab
