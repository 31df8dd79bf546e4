#pragma once

// GL(n,q), SL(n,q) and the unipotent upper-triangular group U(n,q), together
// with their action on F[mW + dW*].
//
// Action convention: for every vector copy j, x[j,i] -> sum_t s(t,i) x[j,t];
// for every covector copy k, y[k,i] -> sum_t s^-1(i,t) y[k,t]. With this
// convention action_endo(h*g) = action_endo(h) o action_endo(g).

#include <cstdint>
#include <string>
#include <vector>

#include "invfield/gf.hpp"
#include "invfield/mpoly.hpp"

namespace invfield {

enum class Family { GL, SL, U };

std::string family_name(Family f);
Family parse_family(std::string_view s);

struct GroupSpec {
  Family family = Family::GL;
  int n = 1;
  Field field;
};

class GroupElem {
 public:
  GroupElem(Field field, int n, std::vector<Coef> entries);
  static GroupElem identity(Field field, int n);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  Coef at(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<Coef>& entries() const { return a_; }

  GroupElem operator*(const GroupElem& o) const;
  Coef det() const;
  GroupElem inverse() const;
  bool operator==(const GroupElem& o) const { return n_ == o.n_ && a_ == o.a_; }

  // Row-major, rows separated by ';', entries in the field text format.
  std::string str() const;
  static GroupElem parse(Field field, std::string_view text);

 private:
  Field field_;
  int n_;
  std::vector<Coef> a_;
};

bool is_member(const GroupSpec& spec, const GroupElem& g);

std::uint64_t group_order(const GroupSpec& spec);
std::vector<GroupElem> group_generators(const GroupSpec& spec);
// Breadth-first closure of the generators. Throws cap_exceeded if the
// group order is larger than cap.
std::vector<GroupElem> group_enumerate(const GroupSpec& spec, std::uint64_t cap = 10000);
// Closure size of the generators equals group_order.
bool certify_generators(const GroupSpec& spec, std::uint64_t cap = 10000);

RingEndo action_endo(const GroupElem& g, const Space& space);

}  // namespace invfield
