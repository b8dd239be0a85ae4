#pragma once
//
// Registry tying an assumption and profile to a concrete smooth family:
// parameter generation, sender-side parameter validation and the
// amplifier settings used for the residuosity families.
//

#include <variant>

#include "otframe/ddh.hpp"
#include "otframe/residuosity.hpp"
#include "otframe/sph.hpp"

namespace otframe {

struct FamilyParams {
  Profile profile = Profile::toy;
  std::variant<DdhParams, DnrParams, DqrParams> lambda;

  Assumption assumption() const;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct AmplifierSettings {
  std::size_t out_bits;
  std::size_t sigma;
};

AmplifierSettings amplifier_settings(Profile profile);

// Guessing bound registered for the base residuosity families.
Ratio registered_epsilon(Assumption assumption);

FamilyParams family_pg(Assumption assumption, Profile profile, Rng& rng);

// The smooth family used by the protocol: DDH directly, DNR/DQR amplified.
FamilyPtr make_family(const FamilyParams& params);
// The un-amplified base family.
FamilyPtr make_base_family(const FamilyParams& params);

// Checks a received parameter set: group/modulus structure, generator
// validity and profile sizes. Primality is tested where the structure
// allows it (the Schnorr group); an RSA-like modulus cannot be checked for
// being a product of two primes without its factors.
bool params_acceptable(const FamilyParams& params, Rng& rng);

// Flat integer view used by the wire encoding: DDH (p, q, g), DNR/DQR (N, g).
std::vector<BigUint> params_values(const FamilyParams& params);
FamilyParams params_from_values(Assumption assumption, Profile profile,
                                const std::vector<BigUint>& values);

}  // namespace otframe
