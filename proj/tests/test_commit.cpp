#include <gtest/gtest.h>

#include <set>

#include "otframe/commit.hpp"

using namespace otframe;

namespace {

const CommitKey kToy{{23, 11, 2}, 8};

}  // namespace

TEST(Pedersen, WorkedExamples) {
  Commitment c = pedersen_commit(kToy, 2, 5);
  EXPECT_EQ(c.parts, std::vector<BigUint>{18});
  EXPECT_EQ(pedersen_commit(kToy, 0, 0).parts, std::vector<BigUint>{1});
  EXPECT_THROW(pedersen_commit(kToy, 11, 0), ParameterError);
  EXPECT_THROW(pedersen_commit(kToy, 0, 11), ParameterError);
  EXPECT_TRUE(pedersen_verify(kToy, c, {2, 5}));
  EXPECT_FALSE(pedersen_verify(kToy, c, {3, 5}));
  EXPECT_TRUE(pedersen_verify(kToy, {CommitScheme::hiding, {1}}, {0, 0}));
}

TEST(ElGamal, WorkedExamples) {
  Commitment c = elgamal_commit(kToy, 2, 5);
  EXPECT_EQ(c.parts, (std::vector<BigUint>{9, 18}));
  EXPECT_EQ(elgamal_commit(kToy, 0, 0).parts, (std::vector<BigUint>{1, 1}));
  EXPECT_TRUE(elgamal_verify(kToy, c, {2, 5}));
  EXPECT_FALSE(elgamal_verify(kToy, c, {2, 6}));
  EXPECT_TRUE(elgamal_verify(kToy, {CommitScheme::binding, {1, 1}}, {0, 0}));
  EXPECT_THROW(elgamal_commit(kToy, 12, 0), ParameterError);
}

TEST(ElGamal, PerfectlyBindingAtToyScale) {
  const Commitment target = elgamal_commit(kToy, 2, 5);
  int matches = 0;
  for (int m = 0; m < 11; ++m)
    for (int r = 0; r < 11; ++r)
      if (elgamal_commit(kToy, m, r) == target) {
        ++matches;
        EXPECT_EQ(m, 2);
        EXPECT_EQ(r, 5);
      }
  EXPECT_EQ(matches, 1);
  // No commitment at all opens to two different messages.
  for (int m = 0; m < 11; ++m)
    for (int r = 0; r < 11; ++r) {
      Commitment c = elgamal_commit(kToy, m, r);
      for (int m2 = 0; m2 < 11; ++m2)
        for (int r2 = 0; r2 < 11; ++r2)
          if (m2 != m) EXPECT_FALSE(elgamal_verify(kToy, c, {m2, r2}));
    }
}

TEST(Pedersen, PerfectlyHidingAtToyScale) {
  for (int e = 0; e < 11; ++e) {
    Commitment c{CommitScheme::hiding, {pow_mod(2, e, 23)}};
    for (int m = 0; m < 11; ++m) {
      int openings = 0;
      for (int r = 0; r < 11; ++r) openings += pedersen_verify(kToy, c, {m, r});
      EXPECT_EQ(openings, 1) << "C = g^" << e << ", m = " << m;
    }
  }
}

TEST(Commit, RoundTripSampled) {
  Rng rng(1);
  const CommitKey& prod = profile_commit_key(Profile::production);
  for (const CommitKey* ck : {&kToy, &profile_commit_key(Profile::toy), &prod}) {
    for (int t = 0; t < 50; ++t) {
      for (auto scheme : {CommitScheme::hiding, CommitScheme::binding}) {
        BigUint m = rng.below(ck->group.q), r = rng.below(ck->group.q);
        Commitment c = commit(*ck, scheme, m, r);
        EXPECT_TRUE(well_formed(*ck, c));
        EXPECT_TRUE(verify(*ck, c, {m, r}));
        EXPECT_FALSE(verify(*ck, c, {(m + 1) % ck->group.q, r}));
      }
    }
  }
}

TEST(CommitKey, DerivedKeys) {
  const CommitKey& toy = profile_commit_key(Profile::toy);
  EXPECT_EQ(toy.group, (SchnorrGroup{23, 11, 2}));
  EXPECT_TRUE(toy.group.contains(toy.h));
  EXPECT_NE(toy.h, 1);
  EXPECT_EQ(derive_commit_key(toy.group), toy);
  const CommitKey& prod = profile_commit_key(Profile::production);
  EXPECT_EQ(bit_length(prod.group.p), 2048u);
  EXPECT_EQ(bit_length(prod.group.q), 256u);
  EXPECT_TRUE(prod.group.contains(prod.h));
  Rng rng(2);
  EXPECT_TRUE(is_valid_group(prod.group, rng));
}

TEST(CommitKey, WellFormedRejectsOutsiders) {
  EXPECT_FALSE(well_formed(kToy, {CommitScheme::hiding, {5}}));      // order 22
  EXPECT_FALSE(well_formed(kToy, {CommitScheme::hiding, {0}}));
  EXPECT_FALSE(well_formed(kToy, {CommitScheme::binding, {9}}));     // arity
  EXPECT_TRUE(well_formed(kToy, {CommitScheme::binding, {9, 18}}));
}

TEST(CoinCommitment, ChunkingAndOpening) {
  const CommitKey& ck = profile_commit_key(Profile::toy);
  EXPECT_EQ(coin_chunk_bits(ck), 3u);
  EXPECT_EQ(coin_chunk_count(ck, 8), 3u);
  CoinBits coin{1, 0, 1, 1, 1, 0, 0, 1};
  auto chunks = coin_to_chunks(ck, coin);
  EXPECT_EQ(chunks, (std::vector<BigUint>{5, 6, 1}));
  EXPECT_EQ(chunks_to_coin(ck, chunks, 8), coin);
  EXPECT_THROW(chunks_to_coin(ck, {5, 6, 4}, 8), ParameterError);

  Rng rng(3);
  for (auto scheme : {CommitScheme::hiding, CommitScheme::binding}) {
    for (int t = 0; t < 100; ++t) {
      CoinBits c(1 + rng.below(40));
      for (auto& b : c) b = rng.next_bit();
      auto cc = commit_coin(ck, scheme, c, rng);
      EXPECT_EQ(open_coin(ck, scheme, cc.commitments, cc.openings, c.size()), c);
      auto bad = cc.openings;
      bad[0].r = (bad[0].r + 1) % ck.group.q;
      EXPECT_FALSE(open_coin(ck, scheme, cc.commitments, bad, c.size()));
    }
  }
}

TEST(CoinCommitment, ProductionFitsOneChunk) {
  const CommitKey& ck = profile_commit_key(Profile::production);
  EXPECT_EQ(coin_chunk_count(ck, 40), 1u);
}
