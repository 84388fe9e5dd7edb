#include <set>

#include "doctest.h"
#include "ffgal/grouplab.hpp"

using namespace ffgal;

namespace {

struct Named {
  std::string name;
  PermGroup G;
};

std::vector<Named> suite() {
  std::vector<Named> out;
  for (int n = 3; n <= 6; ++n) out.push_back({"S" + std::to_string(n), symmetric_group(n)});
  for (int n = 4; n <= 6; ++n) out.push_back({"A" + std::to_string(n), alternating_group(n)});
  out.push_back({"C6", cyclic_group(6)});
  out.push_back({"V4", klein_group()});
  out.push_back({"D4", dihedral_group(4)});
  out.push_back({"Q8", quaternion_group()});
  return out;
}

std::set<std::vector<int>> cycle_types(const PermGroup& G) {
  std::set<std::vector<int>> out;
  for (const Perm& g : G.elements()) out.insert(g.cycle_type());
  return out;
}

}  // namespace

TEST_CASE("permutation text and arithmetic") {
  Perm a = parse_perm("(1 2 3)(4 5)", 5);
  CHECK(to_string(a) == "(1 2 3)(4 5)");
  CHECK(a.order() == 6);
  CHECK(a.cycle_type() == std::vector<int>{3, 2});
  CHECK_FALSE(a.is_even());
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.pow(6).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  Perm b = parse_perm("(1 2)", 5), c = parse_perm("(2 3)", 5);
  // apply c first: 2 -> 3 -> 3, 3 -> 2 -> 1
  CHECK(to_string(b * c) == "(1 2 3)");
  CHECK(to_string(parse_perm("()", 3)) == "()");
  CHECK_THROWS_AS(parse_perm("(1 1)", 3), Error);
  CHECK_THROWS_AS(parse_perm("(1 4)", 3), Error);
  CHECK_THROWS_AS(parse_perm("1 2", 3), Error);
}

TEST_CASE("closure orders") {
  CHECK(symmetric_group(5).order() == 120);
  CHECK(alternating_group(6).order() == 360);
  CHECK(dihedral_group(4).order() == 8);
  CHECK(quaternion_group().order() == 8);
  CHECK(klein_group().order() == 4);
  CHECK(parse_group("(1 2 3 4 5 6 7 8 9);(1 2)").order() == 362880);
  CHECK_THROWS_AS(symmetric_group(10), Error);
  CHECK(parse_group("S4").order() == 24);
  CHECK(parse_group("(1 2);(3 4 5)").order() == 6);
  CHECK_THROWS_AS(parse_group("X5"), Error);
  // Q8 has a unique involution
  int inv = 0;
  PermGroup Q = quaternion_group();
  for (const Perm& g : Q.elements()) inv += g.order() == 2;
  CHECK(inv == 1);
}

TEST_CASE("transitivity and primitivity") {
  CHECK(is_primitive(symmetric_group(4)));
  CHECK(is_transitive(klein_group()));
  CHECK_FALSE(is_primitive(klein_group()));
  CHECK(minimal_block(klein_group(), 1) == std::vector<int>{0, 1});
  CHECK_FALSE(is_primitive(dihedral_group(4)));
  CHECK(is_primitive(dihedral_group(5)));
  CHECK_FALSE(is_primitive(cyclic_group(6)));
  CHECK(is_primitive(cyclic_group(7)));
  for (int n = 3; n <= 7; ++n) CHECK(is_primitive(alternating_group(n)));
  CHECK_FALSE(is_transitive(parse_group("(1 2);(3 4)")));
}

TEST_CASE("p-core values") {
  CHECK(p_core(symmetric_group(5), 3).order() == 60);
  CHECK(p_core(symmetric_group(5), 2).order() == 120);
  CHECK(p_core(symmetric_group(5), 7).order() == 1);
  CHECK(p_core(alternating_group(4), 2).order() == 4);
  CHECK(p_core(alternating_group(4), 3).order() == 12);
  CHECK(p_core(symmetric_group(4), 3).order() == 12);
  CHECK(p_core(cyclic_group(6), 3).order() == 3);
  CHECK(p_core(cyclic_group(6), 2).order() == 2);
  CHECK(p_core(dihedral_group(4), 2).order() == 8);
  CHECK(p_core(quaternion_group(), 3).order() == 1);
  CHECK_THROWS_AS(p_core(cyclic_group(6), 4), Error);
}

TEST_CASE("p-core is normal and holds every element of order p") {
  for (const auto& [name, G] : suite())
    for (u64 p : {2, 3, 5, 7}) {
      CAPTURE(name);
      CAPTURE(p);
      PermGroup N = p_core(G, p);
      CHECK(is_normal(N, G));
      for (const Perm& g : G.elements())
        if (static_cast<u64>(g.order()) == p) CHECK(N.contains(g));
      PermGroup P = sylow_subgroup(G, p);
      u64 pa = 1;
      for (u64 m = G.order(); m % p == 0; m /= p) pa *= p;
      CHECK(P.order() == pa);
      CHECK(P.is_subgroup_of(N));
    }
}

TEST_CASE("abelian invariants") {
  auto triv = [](const PermGroup& G) { return PermGroup(G.degree(), {}); };
  CHECK(abelianized_quotient(cyclic_group(6), triv(cyclic_group(6))).factors == std::vector<u64>{6});
  CHECK(abelianized_quotient(klein_group(), triv(klein_group())).factors == std::vector<u64>{2, 2});
  CHECK(abelianized_quotient(quaternion_group(), triv(quaternion_group())).factors == std::vector<u64>{2, 2});
  CHECK(abelianized_quotient(symmetric_group(5), triv(symmetric_group(5))).factors == std::vector<u64>{2});
  CHECK(abelianized_quotient(alternating_group(5), triv(alternating_group(5))).factors.empty());
  PermGroup G = parse_group("(1 2);(3 4);(5 6 7)");
  CHECK(abelianized_quotient(G, triv(G)).factors == std::vector<u64>{2, 6});
  PermGroup H = parse_group("(1 2);(3 4 5 6);(7 8 9 10)");
  CHECK(abelianized_quotient(H, triv(H)).factors == std::vector<u64>{2, 4, 4});
  CHECK(abelianized_quotient(alternating_group(4), triv(alternating_group(4))).factors == std::vector<u64>{3});
}

TEST_CASE("conjecture right-hand side on the suite") {
  for (const auto& [name, G] : suite())
    for (u64 p : {2, 3, 5, 7}) {
      CAPTURE(name);
      CAPTURE(p);
      int expect = 1;
      if ((name == "V4" || name == "D4" || name == "Q8") && p != 2) expect = 2;
      int rhs = conjecture_rhs(G, p);
      CHECK(rhs == expect);
      if (quotient_is_cyclic(G, p_core(G, p))) CHECK(rhs == 1);
    }
}

TEST_CASE("generation by cyclic-by-p subgroups") {
  for (const auto& [name, G] : suite())
    for (u64 p : {2, 3, 5, 7}) {
      CAPTURE(name);
      CAPTURE(p);
      CyclicByPWitness w = verify_gen_by_cyclic_by_p(G, p);
      CHECK(static_cast<int>(w.Q.size()) == w.r);
      std::vector<Perm> all;
      for (size_t i = 0; i < w.Q.size(); ++i) {
        CHECK(w.sylow.is_subgroup_of(w.Q[i]));
        CHECK(quotient_is_cyclic(w.Q[i], p_core(w.Q[i], p)));
        for (const Perm& g : w.Q[i].generators()) all.push_back(g);
      }
      CHECK(normal_closure(all, G).order() == G.order());
    }
}

TEST_CASE("coset action of A4 on six points") {
  PermGroup A4 = alternating_group(4);
  PermGroup H(4, {parse_perm("(1 2)(3 4)", 4)});
  PermGroup C = coset_action(A4, H);
  CHECK(C.degree() == 6);
  CHECK(C.order() == 12);
  CHECK(is_transitive(C));
  CHECK_FALSE(is_primitive(C));
  std::set<std::vector<int>> expect = {{1, 1, 1, 1, 1, 1}, {2, 2, 1, 1}, {3, 3}};
  CHECK(cycle_types(C) == expect);
}
