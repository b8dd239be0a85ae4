#include <gtest/gtest.h>

#include "oracles.hpp"
#include "otframe/family.hpp"
#include "otframe/residuosity.hpp"

using namespace otframe;

namespace {

DnrParams toy_dnr() {
  Rng rng(21);
  return dnr_pg(Profile::toy, rng);
}

DqrParams toy_dqr() {
  Rng rng(22);
  return dqr_pg(Profile::toy, rng);
}

// Every (pk, hash) pair over the whole key space for instance x.
std::vector<std::pair<oracle::u64, oracle::u64>> key_table(const ExpShape& shape,
                                                           oracle::u64 x) {
  std::vector<std::pair<oracle::u64, oracle::u64>> out;
  const oracle::u64 m = shape.modulus.get_ui(), g = shape.g.get_ui();
  for (oracle::u64 hk = 0; hk < shape.key_space.get_ui(); ++hk)
    out.emplace_back(oracle::slow_pow(g, hk, m), oracle::slow_pow(x, hk, m));
  return out;
}

}  // namespace

TEST(DnrParams, ToyGenerator) {
  DnrParams p = toy_dnr();
  EXPECT_EQ(p.n, 15);
  EXPECT_EQ(gcd(p.g, 225), 1);
  EXPECT_NE(p.g, 1);
  // g is an N-th power, so its order divides phi(N) = 8.
  EXPECT_EQ(8 % oracle::order(p.g.get_ui(), 225), 0u);
  Rng rng(1);
  EXPECT_THROW(dnr_pg("medium", rng), ParameterError);
}

TEST(DnrParams, GeneratorMatchesUnreducedExponent) {
  auto m = make_modulus(3, 5, ModulusForm::dnr);
  for (unsigned long a : {2ul, 7ul, 11ul, 101ul, 224ul}) {
    // N^{1 + 2 * 4} = 15^9 without any reduction of the exponent
    BigUint e;
    mpz_pow_ui(e.get_mpz_t(), BigUint(15).get_mpz_t(), 9);
    EXPECT_EQ(dnr_generator(m, a), pow_mod(a, e, 225)) << a;
  }
}

TEST(DqrParams, ToyGenerator) {
  DqrParams p = toy_dqr();
  EXPECT_EQ(p.n, 77);
  EXPECT_EQ(gcd(p.g, 77), 1);
  EXPECT_EQ(oracle::jacobi_by_factors(p.g.get_ui(), 77), 1);
  for (unsigned long a : {2ul, 3ul, 10ul, 76ul})
    EXPECT_EQ(dqr_generator(77, a), oracle::slow_pow(a, 2 * 128, 77));
}

TEST(ResParams, ProductionSizes) {
  Rng rng(23);
  DqrParams q = dqr_pg(Profile::production, rng);
  EXPECT_EQ(bit_length(q.n), 2048u);
  EXPECT_EQ(jacobi(q.g, q.n), 1);
  DnrParams n = dnr_pg(Profile::production, rng);
  EXPECT_EQ(bit_length(n.n), 2048u);
  EXPECT_EQ(gcd(n.g, n.n), 1);
}

TEST(DnrInstance, WorkedExamples) {
  DnrParams p = toy_dnr();
  const oracle::u64 g = p.g.get_ui();
  auto proj = dnr_make_instance(p, 2, 0);
  EXPECT_EQ(proj.x, oracle::slow_pow(g, 2, 225));
  EXPECT_EQ(proj.kind, InstanceKind::projective);
  auto smooth = dnr_make_instance(p, 2, 4);
  EXPECT_EQ(smooth.x, oracle::slow_pow(g, 2, 225) * 61 % 225);
  EXPECT_EQ(smooth.kind, InstanceKind::smooth);
  Rng rng(2);
  EXPECT_THROW(dnr_is(p, 3, rng), ParameterError);
}

TEST(DnrDistinguisher, Examples) {
  DnrParams p = toy_dnr();
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    auto a = dnr_is(p, 0, rng);
    auto b = dnr_is(p, 1, rng);
    EXPECT_EQ(dnr_di(p, a.x, a.w), InstanceKind::projective);
    EXPECT_EQ(dnr_di(p, b.x, b.w), InstanceKind::smooth);
  }
  auto proj = dnr_make_instance(p, 2, 0);
  EXPECT_THROW(dnr_di(p, proj.x, {2, 4}), InvalidWitness);
  EXPECT_THROW(dnr_di(p, proj.x, {2, 5}), InvalidWitness);
}

TEST(DqrInstance, WorkedExamples) {
  DqrParams p = toy_dqr();
  const oracle::u64 g3 = oracle::slow_pow(p.g.get_ui(), 3, 77);
  auto proj = dqr_make_instance(p, 3, 0);
  EXPECT_EQ(proj.x, g3);
  EXPECT_EQ(proj.w.r, 3);
  auto smooth = dqr_make_instance(p, 3, 1);
  EXPECT_EQ(smooth.x, 77 - g3);
  EXPECT_EQ(dqr_di(p, g3, 3), InstanceKind::projective);
  EXPECT_EQ(dqr_di(p, 77 - g3, 3), InstanceKind::smooth);
  EXPECT_THROW(dqr_di(p, (g3 + 1) % 77, 3), InvalidWitness);
  Rng rng(4);
  EXPECT_THROW(dqr_is(p, 2, rng), ParameterError);
}

TEST(DqrDistinguisher, TotalOnSampledPairs) {
  DqrParams p = toy_dqr();
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const int delta = static_cast<int>(rng.below(2));
    auto s = dqr_is(p, delta, rng);
    EXPECT_EQ(dqr_di(p, s.x, s.w.r), delta ? InstanceKind::smooth : InstanceKind::projective);
  }
}

TEST(ExpKeys, WorkedExamples) {
  DqrParams q = toy_dqr();
  EXPECT_EQ(exp_kg_with(q.shape(), 0).pk, 1);
  EXPECT_EQ(exp_kg_with(q.shape(), 3).pk, oracle::slow_pow(q.g.get_ui(), 3, 77));
  DnrParams n = toy_dnr();
  EXPECT_EQ(exp_kg_with(n.shape(), 3).pk, oracle::slow_pow(n.g.get_ui(), 3, 225));
  EXPECT_EQ(exp_hash(n.shape(), 16, 3), 46);
  EXPECT_EQ(exp_hash(q.shape(), 4, 3), 64);
}

TEST(ExpKeys, ProjectionIdentity) {
  Rng rng(6);
  DnrParams n = toy_dnr();
  DqrParams q = toy_dqr();
  for (int t = 0; t < 1000; ++t) {
    auto a = dnr_is(n, 0, rng);
    auto ka = exp_kg(n.shape(), rng);
    EXPECT_EQ(exp_hash(n.shape(), a.x, ka.hk), exp_phash(n.shape(), ka.pk, a.w.r));
    auto b = dqr_is(q, 0, rng);
    auto kb = exp_kg(q.shape(), rng);
    EXPECT_EQ(exp_hash(q.shape(), b.x, kb.hk), exp_phash(q.shape(), kb.pk, b.w.r));
  }
}

TEST(ExpKeys, KindsAreSeparated) {
  DnrParams n = toy_dnr();
  DqrParams q = toy_dqr();
  for (unsigned long r : {1ul, 2ul, 4ul, 7ul, 8ul, 11ul, 13ul, 14ul})
    for (unsigned long v : {1ul, 2ul, 4ul, 7ul})
      EXPECT_NE(dnr_make_instance(n, r, 0).x, dnr_make_instance(n, r, v).x);
  for (unsigned long r = 0; r < 77; ++r)
    EXPECT_NE(dqr_make_instance(q, r, 0).x, dqr_make_instance(q, r, 1).x);
}

// The registered guessing bound holds on every smooth instance.
TEST(ExpKeys, RegisteredEpsilonBoundsGuessing) {
  DnrParams n = toy_dnr();
  const Ratio eps_n = registered_epsilon(Assumption::dnr);
  for (unsigned long r : {1ul, 2ul, 4ul, 7ul})
    for (unsigned long v : {1ul, 2ul, 4ul, 8ul}) {
      auto s = dnr_make_instance(n, r, v);
      const double p = oracle::max_guess_probability(key_table(n.shape(), s.x.get_ui()));
      EXPECT_LE(p * eps_n.den, eps_n.num + 1e-9);
    }
  DqrParams q = toy_dqr();
  const Ratio eps_q = registered_epsilon(Assumption::dqr);
  for (unsigned long r = 0; r < 77; ++r) {
    auto s = dqr_make_instance(q, r, 1);
    const double p = oracle::max_guess_probability(key_table(q.shape(), s.x.get_ui()));
    EXPECT_LE(p * eps_q.den, eps_q.num + 1e-9);
  }
}

TEST(ExpKeys, LibraryTableMatchesOracle) {
  DqrParams q = toy_dqr();
  DqrFamily fam(q);
  auto s = dqr_make_instance(q, 5, 1);
  auto table = key_table(q.shape(), s.x.get_ui());
  for (oracle::u64 hk = 0; hk < 77; ++hk) {
    auto k = exp_kg_with(q.shape(), hk);
    EXPECT_EQ(k.pk, table[hk].first);
    EXPECT_EQ(exp_hash(q.shape(), s.x, hk), table[hk].second);
  }
  EXPECT_EQ(fam.hash_bytes(), 1u);
  EXPECT_FALSE(fam.accepts(Instance{{2}}));  // Jacobi symbol -1
  EXPECT_FALSE(fam.accepts(Instance{{7}}));  // not a unit
}

TEST(ExpKeys, ProductionSizeCheckInDistinguisher) {
  DqrParams q = toy_dqr();
  q.profile = Profile::production;
  EXPECT_THROW(dqr_di(q, pow_mod(q.g, 3, 77), 3), InvalidWitness);
}
