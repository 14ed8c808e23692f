#pragma once

#include <json.hpp>

#include "lattice_lab/lwe.hpp"

namespace lattice_lab {

// JSON forms of the toy-LWE objects. Every integer is a decimal string.
//
//   key:        {"n","q","m","eta","A":[[...]],"b":[...],"s":[...],"e":[...]}
//               ("s" and "e" are absent in a public-only key)
//   ciphertext: {"n","q","c1":[...],"c2"}
//   attack:     {"success","status","norm_sq","nodes","candidate":[...],"e":[...],"s":[...]}

nlohmann::json to_json(const LweParams& params);
nlohmann::json to_json(const LwePublicKey& pub);
nlohmann::json to_json(const LweKeyPair& kp);
nlohmann::json to_json(const LweCiphertext& ct, const LweParams& params);
nlohmann::json to_json(const LweAttackResult& result);

/// Throws ParseError (line 0) on missing fields, malformed numbers, invalid
/// parameters, or vectors of the wrong length or outside [0, q).
LweParams lwe_params_from_json(const nlohmann::json& j);
LwePublicKey lwe_public_from_json(const nlohmann::json& j);
LweKeyPair lwe_keypair_from_json(const nlohmann::json& j);
LweCiphertext lwe_ciphertext_from_json(const nlohmann::json& j);

} // namespace lattice_lab
