#include "ffgal/grouplab.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace ffgal {

namespace {

bool small_prime(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_p_power(u64 k, u64 p) {
  while (k % p == 0) k /= p;
  return k == 1;
}

Perm commutator(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

Perm conj(const Perm& t, const Perm& s) { return t * s * t.inverse(); }

}  // namespace

Perm Perm::identity(int n) {
  if (n < 0 || n > kMaxDegree) fail(Errc::OutOfRange, "permutation degree must lie in 0..16");
  Perm g;
  g.n_ = n;
  for (int i = 0; i < n; ++i) g.bits_ |= static_cast<u64>(i) << (4 * i);
  return g;
}

Perm Perm::from_images(const std::vector<int>& img) {
  const int n = static_cast<int>(img.size());
  if (n > kMaxDegree) fail(Errc::OutOfRange, "permutation degree must lie in 0..16");
  std::vector<bool> seen(n, false);
  Perm g;
  g.n_ = n;
  for (int i = 0; i < n; ++i) {
    if (img[i] < 0 || img[i] >= n || seen[img[i]]) fail(Errc::Parse, "not a permutation");
    seen[img[i]] = true;
    g.bits_ |= static_cast<u64>(img[i]) << (4 * i);
  }
  return g;
}

bool Perm::is_identity() const { return *this == identity(n_); }

Perm Perm::inverse() const {
  Perm g;
  g.n_ = n_;
  for (int i = 0; i < n_; ++i) g.bits_ |= static_cast<u64>(i) << (4 * (*this)(i));
  return g;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) fail(Errc::Precondition, "permutation degrees differ");
  std::vector<int> img(a.degree());
  for (int i = 0; i < a.degree(); ++i) img[i] = a(b(i));
  return Perm::from_images(img);
}

Perm Perm::pow(long long k) const {
  Perm base = k < 0 ? inverse() : *this, r = identity(n_);
  for (unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k); e; e >>= 1) {
    if (e & 1) r = r * base;
    base = base * base;
  }
  return r;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> out;
  std::vector<bool> seen(n_, false);
  for (int i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = (*this)(j)) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

int Perm::order() const {
  int o = 1;
  for (int c : cycle_type()) o = std::lcm(o, c);
  return o;
}

bool Perm::is_even() const {
  int s = 0;
  for (int c : cycle_type()) s += c - 1;
  return s % 2 == 0;
}

Perm parse_perm(const std::string& text, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<bool> used(n, false);
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') fail(Errc::Parse, "expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail(Errc::Parse, "bad point in cycle notation");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > n) fail(Errc::Parse, "point " + std::to_string(v) + " out of range");
      if (used[v - 1]) fail(Errc::Parse, "point " + std::to_string(v) + " repeated");
      used[v - 1] = true;
      cyc.push_back(v - 1);
      skip();
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip();
  }
  return Perm::from_images(img);
}

std::string to_string(const Perm& g) {
  std::string out;
  std::vector<bool> seen(g.degree(), false);
  for (int i = 0; i < g.degree(); ++i) {
    if (seen[i] || g(i) == i) continue;
    out += "(";
    for (int j = i; !seen[j]; j = g(j)) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

PermGroup::PermGroup(int n, std::vector<Perm> gens) : n_(n) {
  for (const Perm& g : gens) {
    if (g.degree() != n) fail(Errc::Precondition, "generator degree differs from group degree");
    if (!g.is_identity()) gens_.push_back(g);
  }
  Perm e = Perm::identity(n);
  elems_.push_back(e);
  set_.insert(e);
  for (size_t k = 0; k < elems_.size(); ++k) {
    for (const Perm& s : gens_) {
      Perm h = elems_[k] * s;
      if (set_.insert(h).second) {
        elems_.push_back(h);
        if (elems_.size() > kElementCap) fail(Errc::TooLarge, "group closure exceeds 10^6 elements");
      }
    }
  }
}

bool PermGroup::is_subgroup_of(const PermGroup& G) const {
  for (const Perm& g : gens_)
    if (!G.contains(g)) return false;
  return true;
}

PermGroup symmetric_group(int n) {
  if (n < 1) fail(Errc::InvalidParams, "S_n needs n >= 1");
  if (n == 1) return PermGroup(1, {});
  std::vector<int> cyc(n), tr(n);
  std::iota(tr.begin(), tr.end(), 0);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  std::swap(tr[0], tr[1]);
  return PermGroup(n, {Perm::from_images(cyc), Perm::from_images(tr)});
}

PermGroup alternating_group(int n) {
  if (n < 1) fail(Errc::InvalidParams, "A_n needs n >= 1");
  std::vector<Perm> gens;
  // 3-cycles (1 2 k)
  for (int k = 2; k < n; ++k) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    img[0] = 1;
    img[1] = k;
    img[k] = 0;
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup(n, gens);
}

PermGroup cyclic_group(int n) {
  if (n < 1) fail(Errc::InvalidParams, "C_n needs n >= 1");
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return PermGroup(n, {Perm::from_images(cyc)});
}

PermGroup dihedral_group(int n) {
  if (n < 3) fail(Errc::InvalidParams, "D_n needs n >= 3");
  std::vector<int> rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return PermGroup(n, {Perm::from_images(rot), Perm::from_images(ref)});
}

PermGroup klein_group() { return PermGroup(4, {parse_perm("(1 2)(3 4)", 4), parse_perm("(1 3)(2 4)", 4)}); }

PermGroup quaternion_group() {
  // points 0..7 are 1, -1, i, -i, j, -j, k, -k; generators are left multiplication by i and j
  return PermGroup(8, {Perm::from_images({2, 3, 1, 0, 6, 7, 5, 4}), Perm::from_images({4, 5, 7, 6, 1, 0, 2, 3})});
}

PermGroup parse_group(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) fail(Errc::Parse, "empty group spec");
  if (t == "V4") return klein_group();
  if (t == "Q8") return quaternion_group();
  if (std::isalpha(static_cast<unsigned char>(t[0]))) {
    const char kind = t[0];
    int n = 0;
    for (size_t i = 1; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail(Errc::Parse, "unknown group name '" + text + "'");
      n = n * 10 + (t[i] - '0');
      if (n > Perm::kMaxDegree) fail(Errc::TooLarge, "degree above 16");
    }
    if (t.size() < 2) fail(Errc::Parse, "unknown group name '" + text + "'");
    switch (kind) {
      case 'S': return symmetric_group(n);
      case 'A': return alternating_group(n);
      case 'C': return cyclic_group(n);
      case 'D': return dihedral_group(n);
      default: fail(Errc::Parse, "unknown group name '" + text + "'");
    }
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  int n = 1;
  for (size_t i = 0; i < text.size();) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = std::min(v * 10 + (text[i++] - '0'), 1000);
    n = std::max(n, v);
  }
  if (n > Perm::kMaxDegree) fail(Errc::TooLarge, "degree above 16");
  std::vector<Perm> gens;
  for (const auto& s : parts) gens.push_back(parse_perm(s, n));
  return PermGroup(n, gens);
}

bool is_transitive(const PermGroup& G) {
  const int n = G.degree();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (const Perm& g : G.generators()) {
      int b = g(a);
      if (!seen[b]) {
        seen[b] = true;
        ++count;
        stack.push_back(b);
      }
    }
  }
  return count == n;
}

std::vector<int> minimal_block(const PermGroup& G, int b) {
  const int n = G.degree();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // Merge classes and propagate: if a ~ c then g(a) ~ g(c) for every generator.
  std::vector<std::pair<int, int>> queue{{0, b}};
  while (!queue.empty()) {
    auto [a, c] = queue.back();
    queue.pop_back();
    int ra = find(a), rc = find(c);
    if (ra == rc) continue;
    parent[rc] = ra;
    for (const Perm& g : G.generators()) queue.push_back({g(a), g(c)});
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (find(i) == find(0)) out.push_back(i);
  return out;
}

bool is_primitive(const PermGroup& G) {
  const int n = G.degree();
  if (!is_transitive(G)) return false;
  for (int b = 1; b < n; ++b)
    if (static_cast<int>(minimal_block(G, b).size()) != n) return false;
  return true;
}

bool is_normal(const PermGroup& N, const PermGroup& G) {
  for (const Perm& t : G.generators())
    for (const Perm& s : N.generators())
      if (!N.contains(conj(t, s))) return false;
  return N.is_subgroup_of(G);
}

PermGroup normal_closure(const std::vector<Perm>& S, const PermGroup& G) {
  std::vector<Perm> gens = S;
  PermGroup H(G.degree(), gens);
  for (bool grew = true; grew;) {
    grew = false;
    for (size_t i = 0; i < gens.size(); ++i)
      for (const Perm& t : G.generators()) {
        Perm c = conj(t, gens[i]);
        if (!H.contains(c)) {
          gens.push_back(c);
          H = PermGroup(G.degree(), gens);
          grew = true;
        }
      }
  }
  return H;
}

PermGroup derived_subgroup(const PermGroup& G) {
  std::vector<Perm> cs;
  for (const Perm& a : G.generators())
    for (const Perm& b : G.generators()) cs.push_back(commutator(a, b));
  return normal_closure(cs, G);
}

PermGroup normalizer(const PermGroup& H, const PermGroup& G) {
  // g normalizes H iff it conjugates each generator of H into H
  std::vector<Perm> gens;
  PermGroup cur(G.degree(), {});
  for (const Perm& g : G.elements()) {
    if (cur.contains(g)) continue;
    bool ok = true;
    for (const Perm& h : H.generators())
      if (!H.contains(conj(g, h))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    gens.push_back(g);
    cur = PermGroup(G.degree(), gens);
  }
  return cur;
}

PermGroup sylow_subgroup(const PermGroup& G, u64 p) {
  if (!small_prime(p)) fail(Errc::NotPrime, "sylow_subgroup needs a prime");
  u64 target = 1;
  for (u64 m = G.order(); m % p == 0; m /= p) target *= p;
  std::vector<Perm> gens;
  PermGroup P(G.degree(), {});
  while (P.order() < target) {
    PermGroup NP = normalizer(P, G);
    bool grew = false;
    for (const Perm& g : NP.elements()) {
      // strip the p'-part of g
      long long o = g.order(), m = o;
      while (m % static_cast<long long>(p) == 0) m /= static_cast<long long>(p);
      Perm gp = g.pow(m);
      if (P.contains(gp)) continue;
      gens.push_back(gp);
      P = PermGroup(G.degree(), gens);
      grew = true;
      break;
    }
    if (!grew) fail(Errc::VerificationFailed, "Sylow growth stalled");
  }
  return P;
}

PermGroup p_core(const PermGroup& G, u64 p) {
  if (!small_prime(p)) fail(Errc::NotPrime, "p_core needs a prime");
  std::vector<Perm> gens;
  PermGroup H(G.degree(), {});
  for (const Perm& g : G.elements()) {
    if (g.is_identity() || !is_p_power(static_cast<u64>(g.order()), p) || H.contains(g)) continue;
    gens.push_back(g);
    H = PermGroup(G.degree(), gens);
  }
  return H;
}

PermGroup coset_action(const PermGroup& G, const PermGroup& H) {
  if (!H.is_subgroup_of(G)) fail(Errc::Precondition, "coset_action needs a subgroup");
  auto key = [&](const Perm& g) {
    u64 best = ~u64{0};
    for (const Perm& h : H.elements()) best = std::min(best, (g * h).bits());
    return best;
  };
  std::map<u64, int> index;
  std::vector<Perm> reps;
  for (const Perm& g : G.elements())
    if (index.emplace(key(g), static_cast<int>(reps.size())).second) reps.push_back(g);
  const int m = static_cast<int>(reps.size());
  if (m > Perm::kMaxDegree) fail(Errc::TooLarge, "more than 16 cosets");
  std::vector<Perm> gens;
  for (const Perm& t : G.generators()) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) img[i] = index.at(key(t * reps[i]));
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup(m, gens);
}

namespace {

// Least k >= 1 with g^k in M.
u64 order_mod(const Perm& g, const PermGroup& M) {
  Perm x = g;
  for (u64 k = 1;; ++k) {
    if (M.contains(x)) return k;
    x = x * g;
  }
}

}  // namespace

AbelianInvariants abelianized_quotient(const PermGroup& G, const PermGroup& N) {
  if (!is_normal(N, G)) fail(Errc::Precondition, "abelianized_quotient needs a normal subgroup");
  std::vector<Perm> gens = N.generators();
  for (const Perm& a : G.generators())
    for (const Perm& b : G.generators()) gens.push_back(commutator(a, b));
  PermGroup M = normal_closure(gens, G);
  const u64 index = G.order() / M.order();
  std::vector<u64> ords;
  ords.reserve(G.order());
  for (const Perm& g : G.elements()) ords.push_back(order_mod(g, M));
  // Per prime l: |A[l^k]| = l^{sum_i min(k, e_i)}, so successive ratios count the e_i >= k.
  std::map<u64, std::vector<int>> exps;
  u64 rest = index;
  for (u64 l = 2; rest > 1; ++l) {
    if (rest % l) continue;
    u64 lpart = 1;
    while (rest % l == 0) {
      rest /= l;
      lpart *= l;
    }
    std::vector<int> ge;  // ge[k-1] = #{i : e_i >= k}
    u64 prev = 1, lk = 1;
    while (prev < lpart) {
      lk *= l;
      u64 cnt = 0;
      for (u64 o : ords)
        if (lk % o == 0) ++cnt;
      cnt /= M.order();
      int r = 0;
      for (u64 t = cnt / prev; t > 1; t /= l) ++r;
      ge.push_back(r);
      prev = cnt;
    }
    std::vector<int>& e = exps[l];
    const int k = ge.empty() ? 0 : ge[0];
    e.assign(k, 0);
    for (size_t j = 0; j < ge.size(); ++j)
      for (int i = 0; i < ge[j]; ++i) ++e[i];
  }
  size_t k = 0;
  for (const auto& [l, e] : exps) k = std::max(k, e.size());
  AbelianInvariants out;
  out.factors.assign(k, 1);
  // largest exponents go to the last factor
  for (const auto& [l, e] : exps)
    for (size_t i = 0; i < e.size(); ++i)
      for (int j = 0; j < e[i]; ++j) out.factors[k - 1 - i] *= l;
  return out;
}

bool quotient_is_cyclic(const PermGroup& G, const PermGroup& N) {
  const u64 index = G.order() / N.order();
  for (const Perm& g : G.elements())
    if (order_mod(g, N) == index) return true;
  return false;
}

int conjecture_rhs(const PermGroup& G, u64 p) {
  PermGroup N = p_core(G, p);
  return std::max(abelianized_quotient(G, N).min_generators(), 1);
}

CyclicByPWitness verify_gen_by_cyclic_by_p(const PermGroup& G, u64 p) {
  CyclicByPWitness w;
  w.r = conjecture_rhs(G, p);
  w.sylow = sylow_subgroup(G, p);
  PermGroup N = p_core(G, p);
  PermGroup NP = normalizer(w.sylow, G);
  // one representative of each coset of p(G) meeting N_G(P); by Frattini every coset does
  std::vector<Perm> reps;
  std::unordered_set<u64> seen;
  for (const Perm& g : NP.elements()) {
    u64 best = ~u64{0};
    for (const Perm& n : N.elements()) best = std::min(best, (g * n).bits());
    if (seen.insert(best).second) reps.push_back(g);
  }
  if (reps.size() * N.order() != G.order()) fail(Errc::VerificationFailed, "N_G(P) misses a coset of p(G)");
  const int r = w.r;
  std::vector<size_t> pick(r, 0);
  for (;;) {
    std::vector<Perm> S = w.sylow.generators();
    for (size_t i : pick) S.push_back(reps[i]);
    if (normal_closure(S, G).order() == G.order()) {
      bool ok = true;
      std::vector<PermGroup> Qs;
      for (size_t i : pick) {
        std::vector<Perm> qg = w.sylow.generators();
        qg.push_back(reps[i]);
        PermGroup Q(G.degree(), qg);
        if (!quotient_is_cyclic(Q, p_core(Q, p))) {
          ok = false;
          break;
        }
        Qs.push_back(Q);
      }
      if (ok) {
        for (size_t i : pick) w.x.push_back(reps[i]);
        w.Q = std::move(Qs);
        return w;
      }
    }
    // next nondecreasing tuple
    int j = r - 1;
    while (j >= 0 && pick[j] + 1 == reps.size()) --j;
    if (j < 0) break;
    ++pick[j];
    for (int t = j + 1; t < r; ++t) pick[t] = pick[j];
  }
  fail(Errc::SearchFailed, "no cyclic-by-p generating family found");
}

}  // namespace ffgal
