#include "otframe/family.hpp"

namespace otframe {

Assumption FamilyParams::assumption() const {
  switch (lambda.index()) {
    case 0: return Assumption::ddh;
    case 1: return Assumption::dnr;
    default: return Assumption::dqr;
  }
}

AmplifierSettings amplifier_settings(Profile profile) {
  if (profile == Profile::production) return {128, 40};
  return {8, 3};
}

Ratio registered_epsilon(Assumption assumption) {
  switch (assumption) {
    case Assumption::dnr: return {1, 2};
    // With hk uniform over Z_N and N odd, the keys sharing one pk split
    // unevenly between the two possible hash values; 3/5 is the worst case.
    case Assumption::dqr: return {3, 5};
    case Assumption::ddh: break;
  }
  throw ParameterError("registered_epsilon: the DDH family is not amplified");
}

FamilyParams family_pg(Assumption assumption, Profile profile, Rng& rng) {
  switch (assumption) {
    case Assumption::ddh: return {profile, ddh_pg(profile, rng)};
    case Assumption::dnr: return {profile, dnr_pg(profile, rng)};
    case Assumption::dqr: return {profile, dqr_pg(profile, rng)};
  }
  throw ParameterError("family_pg: unknown assumption");
}

FamilyPtr make_base_family(const FamilyParams& params) {
  return std::visit(
      [](const auto& lambda) -> FamilyPtr {
        using T = std::decay_t<decltype(lambda)>;
        if constexpr (std::is_same_v<T, DdhParams>)
          return std::make_shared<const DdhFamily>(lambda);
        else if constexpr (std::is_same_v<T, DnrParams>)
          return std::make_shared<const DnrFamily>(lambda);
        else
          return std::make_shared<const DqrFamily>(lambda);
      },
      params.lambda);
}

FamilyPtr make_family(const FamilyParams& params) {
  FamilyPtr base = make_base_family(params);
  if (params.assumption() == Assumption::ddh) return base;
  const AmplifierSettings s = amplifier_settings(params.profile);
  return amplify_uphdh_to_sphdh(base, registered_epsilon(params.assumption()), s.out_bits,
                                s.sigma);
}

bool params_acceptable(const FamilyParams& params, Rng& rng) {
  const bool prod = params.profile == Profile::production;
  if (const auto* d = std::get_if<DdhParams>(&params.lambda)) {
    if (prod && (bit_length(d->group.p) < 2048 || bit_length(d->group.q) < 256)) return false;
    return is_valid_group(d->group, rng);
  }
  if (const auto* d = std::get_if<DnrParams>(&params.lambda)) {
    if (d->profile != params.profile) return false;
    if (d->n < 15 || d->n % 2 == 0) return false;
    if (prod && bit_length(d->n) < 2 * kProductionPrimeBits) return false;
    const BigUint n2 = d->n * d->n;
    return d->g > 1 && d->g < n2 && gcd(d->g, d->n) == 1;
  }
  const auto& d = std::get<DqrParams>(params.lambda);
  if (d.profile != params.profile) return false;
  if (d.n < 15 || d.n % 2 == 0) return false;
  if (prod && bit_length(d.n) < 2 * kProductionPrimeBits) return false;
  return d.g > 1 && d.g < d.n && gcd(d.g, d.n) == 1 && jacobi(d.g, d.n) == 1;
}

std::vector<BigUint> params_values(const FamilyParams& params) {
  return std::visit(
      [](const auto& lambda) -> std::vector<BigUint> {
        using T = std::decay_t<decltype(lambda)>;
        if constexpr (std::is_same_v<T, DdhParams>)
          return {lambda.group.p, lambda.group.q, lambda.group.g};
        else
          return {lambda.n, lambda.g};
      },
      params.lambda);
}

FamilyParams params_from_values(Assumption assumption, Profile profile,
                                const std::vector<BigUint>& values) {
  switch (assumption) {
    case Assumption::ddh:
      if (values.size() != 3) throw DecodeError("ddh parameters: expected 3 integers");
      return {profile, DdhParams{{values[0], values[1], values[2]}}};
    case Assumption::dnr:
      if (values.size() != 2) throw DecodeError("dnr parameters: expected 2 integers");
      return {profile, DnrParams{profile, values[0], values[1]}};
    case Assumption::dqr:
      if (values.size() != 2) throw DecodeError("dqr parameters: expected 2 integers");
      return {profile, DqrParams{profile, values[0], values[1]}};
  }
  throw DecodeError("unknown assumption tag");
}

}  // namespace otframe
