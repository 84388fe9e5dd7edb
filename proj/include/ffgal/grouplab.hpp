#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "ffgal/common.hpp"

namespace ffgal {

// Permutation of {0..n-1}, n <= 16, image of i stored in bits 4i..4i+3.
class Perm {
 public:
  static constexpr int kMaxDegree = 16;
  Perm() = default;
  static Perm identity(int n);
  static Perm from_images(const std::vector<int>& img);  // 0-based
  int degree() const { return n_; }
  int operator()(int i) const { return static_cast<int>((bits_ >> (4 * i)) & 15u); }
  u64 bits() const { return bits_; }
  bool is_identity() const;
  Perm inverse() const;
  Perm pow(long long k) const;
  int order() const;
  std::vector<int> cycle_type() const;  // descending, fixed points included
  bool is_even() const;
  bool operator==(const Perm& o) const { return bits_ == o.bits_ && n_ == o.n_; }
  bool operator!=(const Perm& o) const { return !(*this == o); }

 private:
  u64 bits_ = 0;
  int n_ = 0;
};

// (a * b)(i) = a(b(i)): apply b first.
Perm operator*(const Perm& a, const Perm& b);

// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" is the identity.
Perm parse_perm(const std::string& text, int n);
std::string to_string(const Perm& g);

struct PermHash {
  size_t operator()(const Perm& g) const { return std::hash<u64>()(g.bits()); }
};

class PermGroup {
 public:
  static constexpr size_t kElementCap = 1000000;
  PermGroup() = default;
  PermGroup(int n, std::vector<Perm> gens);  // closes immediately; TooLarge past the cap
  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elems_; }
  u64 order() const { return elems_.size(); }
  bool contains(const Perm& g) const { return set_.count(g) != 0; }
  bool is_subgroup_of(const PermGroup& G) const;

 private:
  int n_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_set<Perm, PermHash> set_;
};

// Semicolon-separated generators; or a name: S<n>, A<n>, C<n>, D<n> (order 2n), V4, Q8.
PermGroup parse_group(const std::string& text);
PermGroup symmetric_group(int n);
PermGroup alternating_group(int n);
PermGroup cyclic_group(int n);
PermGroup dihedral_group(int n);  // on n points
PermGroup klein_group();          // <(12)(34), (13)(24)> in S_4
PermGroup quaternion_group();     // regular representation in S_8

bool is_transitive(const PermGroup& G);
// Minimal block containing {0, b}, as a sorted point list.
std::vector<int> minimal_block(const PermGroup& G, int b);
bool is_primitive(const PermGroup& G);

bool is_normal(const PermGroup& N, const PermGroup& G);
PermGroup normal_closure(const std::vector<Perm>& S, const PermGroup& G);
PermGroup derived_subgroup(const PermGroup& G);
PermGroup normalizer(const PermGroup& H, const PermGroup& G);
PermGroup sylow_subgroup(const PermGroup& G, u64 p);
// Subgroup generated by all elements of p-power order.
PermGroup p_core(const PermGroup& G, u64 p);
// Action of G on the left cosets of H, points numbered by first appearance.
PermGroup coset_action(const PermGroup& G, const PermGroup& H);

struct AbelianInvariants {
  std::vector<u64> factors;  // d_1 | d_2 | ... | d_k, all > 1
  int min_generators() const { return static_cast<int>(factors.size()); }
};
// Invariants of the abelian quotient G / (N [G, G]) for N normal in G.
AbelianInvariants abelianized_quotient(const PermGroup& G, const PermGroup& N);
// Whether G / N is cyclic, by searching for an element of order [G : N] in the quotient.
bool quotient_is_cyclic(const PermGroup& G, const PermGroup& N);

// max(d((G / p(G))^ab), 1)
int conjecture_rhs(const PermGroup& G, u64 p);

struct CyclicByPWitness {
  int r = 0;
  PermGroup sylow;
  std::vector<Perm> x;         // x_i in N_G(P)
  std::vector<PermGroup> Q;    // Q_i = <x_i> P
};
// Subgroups Q_1..Q_r, r = conjecture_rhs(G, p), each cyclic-by-p, whose conjugates generate G.
CyclicByPWitness verify_gen_by_cyclic_by_p(const PermGroup& G, u64 p);

}  // namespace ffgal
