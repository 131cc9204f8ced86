#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairmanna {

enum class Errc {
  general_model,           // cardinal classification asked of a general model
  item_in_bundle,          // marginal queried for an item already in the bundle
  too_large,               // enumeration space exceeds the configured cap
  zero_total,              // normalisation with a zero grand-bundle utility
  sign_mismatch,           // normalisation scale factor would flip preferences
  same_agent,              // jealousy queried for a pair (a, a)
  mixed_item_encountered,  // greedy round with two-sided strict marginals
  too_many_items,          // one-item-per-agent assignment with m > n
  bad_parameters,          // malformed construction parameters
  invalid_cover,           // claimed exact cover is not one
  unknown_fixture,         // fixture id not in the catalogue
  rejection_cap_exceeded,  // random generator could not hit the target class
  chain_violation,         // an implication that is a theorem failed: checker bug
  parse_error,             // malformed input file or value
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

  // Round index for mixed_item_encountered, item/agent index for others; -1 if unset.
  long detail_index = -1;

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fairmanna
