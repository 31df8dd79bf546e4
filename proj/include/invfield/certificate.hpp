#pragma once

// Derivation-chain certificates.
//
// A certificate lists, in proof order, how each auxiliary invariant is
// obtained as a quotient of polynomials in labels that are already known:
// the claimed generators plus the targets of earlier steps. Statement-level
// inputs from prior work (the pGL/pSL field descriptions) appear as axiom
// steps; they are checked for invariance and basis shape, not derived.
//
// Verification rebuilds every label from scratch in F[mW + dW*] and checks
// num == target * den exactly.

#include <string>
#include <vector>

#include "invfield/gf.hpp"
#include "invfield/invariants.hpp"
#include "invfield/mpoly.hpp"

namespace invfield {

enum class Theorem { GL, SL, UU, pU3 };
std::string theorem_name(Theorem t);
Theorem parse_theorem(std::string_view s);

struct CertStep {
  Label target;
  bool axiom = false;
  std::string num;  // canonical polynomial text in labels
  std::string den;
  std::string justification;
  std::vector<Label> basis;  // axiom steps only
};

struct Certificate {
  Theorem theorem = Theorem::GL;
  Field field;
  Space space;
  std::string claimed_set;
  std::vector<Label> generators;
  std::string conventions;
  std::vector<CertStep> steps;
};

Certificate build_certificate(Theorem theorem, const Field& field, const Space& space);

struct StepVerdict {
  std::size_t index = 0;
  std::string target;
  bool pass = false;
  std::string detail;
};

struct CertVerdict {
  bool pass = false;
  std::vector<StepVerdict> steps;
  bool generators_match = false;
  bool closed = false;
  std::vector<std::string> missing;  // closure labels never reached
  std::string error;                 // structural failure (bad text, unknown label)
};

CertVerdict verify_certificate(const Certificate& cert);

// Adds the leading monomial (coefficient 1) to the numerator of one step.
Certificate corrupt_step(const Certificate& cert, std::size_t index);
// First non-axiom step, the natural corruption target.
std::size_t first_derived_step(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert, int indent = 2);
Certificate certificate_from_json(std::string_view text);

// Labels occurring in a label-polynomial text, sorted and deduplicated.
std::vector<Label> labels_in(std::string_view text);
// Parses a label-polynomial text over the labels it mentions.
MPoly parse_label_poly(const Field& field, std::string_view text);

}  // namespace invfield
