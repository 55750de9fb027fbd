#pragma once

#include <stdexcept>
#include <string>

namespace synsem {

// Bad user input: unreadable files, malformed documents, bad flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The knowledge base could not be reached or answered with a non-success
// status. Retriable; never confused with "no data".
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The knowledge base answered, but the payload is unusable. Permanent.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record about to be persisted violates a data invariant.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace synsem
