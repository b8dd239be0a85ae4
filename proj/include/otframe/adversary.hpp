#pragma once
//
// Scripted malicious receivers and the cut-and-choose experiments built on
// them.
//

#include <ostream>
#include <set>

#include "otframe/session.hpp"

namespace otframe {

// A receiver whose vectors at `illegal` carry h + 1 projective entries.
Receiver cheating_receiver(const ProtocolConfig& config, std::vector<std::size_t> choice,
                           std::set<std::size_t> illegal, Rng rng);

// DDH parameters for the experiments: a fixed 96-bit group with a 64-bit
// subgroup order, so a guessed hash value is correct with negligible
// probability (the 11-element toy group would let 1 in 11 guesses through).
const FamilyParams& experiment_params();

// n = 2, h = 1, l = 16, DDH over experiment_params(), the given K.
ProtocolConfig experiment_config(std::size_t k_cut);

struct TrialOutcome {
  SessionStatus status = SessionStatus::completed;
  CoinBits joint;              // empty if the session ended before the coin toss
  bool illegal_chosen = false; // some illegal vector was opened
  bool exact_escape_coin = false;  // the unopened set equals the illegal set
  std::size_t correct = 0;     // receiver outputs equal to the sender's messages
  bool escaped = false;        // no abort and more than h correct messages
};

// One session against an honest sender. Fixed coins are optional; both must
// have length K when given.
TrialOutcome run_trial(const ProtocolConfig& config, const std::set<std::size_t>& illegal,
                       const Rng& rng, std::optional<CoinBits> sender_coin = std::nullopt,
                       std::optional<CoinBits> receiver_coin = std::nullopt);

struct EscapeStats {
  std::size_t k_cut = 0;
  std::size_t d = 0;
  std::size_t trials = 0;
  std::size_t escapes = 0;
  std::size_t illegal_chosen = 0;
  std::size_t detected = 0;        // illegal vector opened and the sender aborted
  std::size_t escape_mismatch = 0; // escape != (unopened set == illegal set)
  double rate() const { return trials ? static_cast<double>(escapes) / trials : 0.0; }
};

// Each trial uses rng.derive(trial) and a fresh uniformly chosen illegal
// set of size d. Trials are spread over `threads` workers (0 = hardware).
EscapeStats escape_experiment(const ProtocolConfig& config, std::size_t d, std::size_t trials,
                              const Rng& rng, unsigned threads = 0);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const EscapeStats& s);

struct EnumerationReport {
  std::size_t k_cut = 0;
  std::size_t d = 0;
  std::size_t coins = 0;     // 2^K joint coins tried
  std::size_t escapes = 0;
  std::size_t mismatches = 0;  // escape != (unopened set == illegal set)
};

// Runs one session for every joint coin r in {0,1}^K (sender coin from
// `rng`, receiver coin set to s xor r) with illegal set {0, .., d-1}.
EnumerationReport enumerate_coins(const ProtocolConfig& config, std::size_t d, const Rng& rng);

struct ExtractionResult {
  SessionStatus status = SessionStatus::completed;
  std::vector<Bytes> recovered;  // all n positions, in order
  std::vector<std::size_t> choice;
  CoinBits joint;
};

// Receiver that fills every unopened slot with a Cheat vector (all entries
// projective) by fixing both coins, then decodes every position. With
// `honest_vectors` the unopened slots keep honest vectors instead.
ExtractionResult cheat_extraction_check(const ProtocolConfig& config,
                                        const std::vector<Bytes>& messages, const Rng& rng,
                                        bool honest_vectors = false);

}  // namespace otframe
