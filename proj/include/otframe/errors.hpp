#pragma once

#include <stdexcept>
#include <string>

namespace otframe {

// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Randomized parameter search ran out of its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value does not fit the requested fixed-width encoding.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// A witness is consistent with neither the projective nor the smooth relation.
class InvalidWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-canonical wire bytes.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Connection-level failure, distinct from a protocol abort.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otframe
