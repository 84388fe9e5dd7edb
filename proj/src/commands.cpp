#include "ffgal/commands.hpp"

#include <json.hpp>

#include "ffgal/grouplab.hpp"

namespace ffgal {

namespace {

using nlohmann::ordered_json;

ordered_json cert_json(const Certificate& c) { return ordered_json::parse(to_json(c)); }

std::string dump(const ordered_json& j) { return j.dump(2); }

SearchBudget budget_of(const RunOptions& o) {
  SearchBudget b;
  b.max_candidates = o.budget;
  b.seed = o.seed;
  b.jobs = o.jobs;
  return b;
}

void apply(const RunOptions& o, CertifyInput& in) {
  in.samples = o.samples;
  in.max_k = o.max_k;
  in.seed = o.seed;
  in.jobs = o.jobs;
}

std::vector<int> type_with_ones(int l, int n) {
  std::vector<int> t(1, l);
  t.resize(static_cast<size_t>(n - l + 1), 1);
  return t;
}

bool odd_type(const std::vector<int>& t) {
  int s = 0;
  for (int l : t) s += l - 1;
  return s % 2;
}

// Cycle length l is witnessed by a sample directly, or only as a power of a sampled type.
std::string cycle_witness(const Certificate& c, int l, int n) {
  if (c.histogram.counts.count(type_with_ones(l, n))) return "sampled";
  for (const auto& e : c.evidence)
    if (e.kind == EvidenceKind::SingleCycle && e.data[0] == l) return "power of a sampled type";
  return "";
}

struct SnRow {
  int n;
  u64 p;
  const char *f, *c, *h;
};
const SnRow kSnRows[] = {
    {3, 5, "X^3 + 1", "X + 2", "T^2"},           {6, 5, "X^6 + 1", "X^2 + X", "T^4 + 1"},
    {6, 17, "X^6 + X^2 + X", "1", "T^6 + T + 2"}, {6, 29, "X^6 + X^2 + X", "1", "T^6 + T + 6"},
    {6, 41, "X^6 + X", "1", "T^6 + T + 1"},       {6, 53, "X^6 + X^2 + 13*X", "1", "T^6 + T"},
};

struct AnRow {
  int n;
  u64 p;
  const char *F, *disc;
};
const AnRow kAnRows[] = {
    {6, 5, "X^6 + X^5*T - 2*X^3*T^3 + X*T + T^2", "4*T^18"},
    {8, 7, "X^8 + 3*X^2 + X*T - 2", "4*T^2"},
    {12, 11, "X^12 + 5*X*T^3 - 5*X^2 - 2", "4*T^6"},
};

ordered_json sn_row(const SnRow& r, const RunOptions& opt, bool& ok) {
  FieldPtr K = make_field(r.p, 1);
  RatCover w(parse_poly(K, r.f), parse_poly(K, r.c));
  Poly h = parse_poly(K, r.h, 'T');
  const int m = w.m();
  Poly crit = derivative(w.f) * w.c - w.f * derivative(w.c);
  bool crit_irred = is_irreducible(monic(crit));
  PrimePowerDisc D = is_prime_power_disc(cover_poly(w));
  bool fh_irred = false;
  int fh_deg = 0;
  if (D.ok) {
    Poly fh = monic(compose(D.prime, h));
    fh_irred = is_irreducible(fh);
    fh_deg = fh.deg();
  }
  CertifyInput in = certify_input(w, "S", h);
  apply(opt, in);
  Certificate cert = certify_realization(in);
  Factorization sub = factor(cert.disc);
  bool even = false, odd = false;
  for (const auto& [t, cnt] : cert.histogram.counts) (odd_type(t) ? odd : even) = true;
  bool transposition = cert.histogram.counts.count(type_with_ones(2, r.n)) != 0;
  ordered_json checks = {{"critical_polynomial_irreducible", crit_irred},
                         {"disc_prime_power", D.ok && D.prime.deg() == r.n + m - 1},
                         {"substituted_prime_irreducible", fh_irred && fh_deg == (r.n + m - 1) * h.deg()},
                         {"substituted_disc_one_prime", sub.factors.size() == 1},
                         {"even_and_odd_sampled", even && odd},
                         {"transposition_sampled", transposition},
                         {"certified", cert.verdict == Verdict::Certified}};
  ok = true;
  for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
  return {{"row", std::to_string(r.n) + "," + std::to_string(r.p)},
          {"f", r.f},
          {"c", r.c},
          {"h", r.h},
          {"disc", to_string(D.disc, 'T')},
          {"checks", checks},
          {"ok", ok},
          {"certificate", cert_json(cert)}};
}

ordered_json an_row(const AnRow& r, const RunOptions& opt, bool& ok) {
  FieldPtr K = make_field(r.p, 1);
  CertifyInput in;
  in.F = parse_bipoly(K, r.F);
  in.claim.group = "A";
  in.claim.n = r.n;
  in.claim.branch_primes = {Poly::x(K)};
  in.claim.branch_infinity = true;
  in.expected_disc = parse_poly(K, r.disc, 'T');
  apply(opt, in);
  Certificate cert = certify_realization(in);
  bool no_odd = true;
  for (const auto& [t, cnt] : cert.histogram.counts) no_odd = no_odd && !odd_type(t);
  std::string three = cycle_witness(cert, 3, r.n), long_cycle = cycle_witness(cert, r.n - 1, r.n);
  ordered_json checks = {{"disc_exact", cert.disc == *in.expected_disc},
                         {"inside_An", cert.alt == AltTest::InsideAn},
                         {"no_odd_samples", no_odd},
                         {"three_cycle", !three.empty()},
                         {"long_cycle", !long_cycle.empty()},
                         {"certified", cert.verdict == Verdict::Certified}};
  ok = true;
  for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
  return {{"row", std::to_string(r.n) + "," + std::to_string(r.p)},
          {"F", r.F},
          {"disc", to_string(cert.disc, 'T')},
          {"checks", checks},
          {"three_cycle_witness", three},
          {"long_cycle_witness", long_cycle},
          {"ok", ok},
          {"certificate", cert_json(cert)}};
}

ordered_json family_row(const std::string& spec, const RunOptions& opt, bool char2, bool& ok) {
  FamilyInstance fi = family(parse_family(spec));
  CertifyInput in = certify_input(fi);
  apply(opt, in);
  Certificate cert = certify_realization(in);
  ordered_json checks;
  if (char2) {
    bool t_power = true;
    for (const Factor& f : cert.disc_factorization.factors) t_power = t_power && f.poly == Poly::x(fi.field);
    checks["disc_power_of_T"] = t_power;
    checks["not_failed"] = cert.verdict != Verdict::Failed;
  } else {
    checks["disc_exact"] = fi.expect.disc && cert.disc == *fi.expect.disc;
    checks["certified"] = cert.verdict == Verdict::Certified;
  }
  ok = true;
  for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
  return {{"row", spec},
          {"F", to_string(fi.F)},
          {"disc", to_string(cert.disc, 'T')},
          {"checks", checks},
          {"ok", ok},
          {"certificate", cert_json(cert)}};
}

CommandResult finish(ordered_json j, const std::string& first_bad, const std::string& what) {
  CommandResult r;
  j["ok"] = first_bad.empty();
  j["first_failure"] = first_bad.empty() ? ordered_json(nullptr) : ordered_json(first_bad);
  r.status = first_bad.empty() ? kExitOk : kExitFailed;
  r.json = dump(j);
  r.summary = first_bad.empty() ? what + ": all rows pass" : what + ": row " + first_bad + " failed";
  return r;
}

const char* verdict_summary(const Certificate& c) { return verdict_name(c.verdict); }

}  // namespace

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::HypothesisViolated:
    case Errc::StrategyInapplicable:
    case Errc::DegreeNotDivisible:
    case Errc::DiscNotPrimePower:
    case Errc::InvalidParams:
      return kExitHypothesis;
    case Errc::BudgetExhausted:
    case Errc::SearchFailed:
    case Errc::TooLarge:
      return kExitBudget;
    case Errc::VerificationFailed:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

CommandResult cmd_reproduce(const std::string& table, const RunOptions& opt) {
  ordered_json j;
  j["command"] = "reproduce";
  j["table"] = table;
  j["seed"] = opt.seed;
  j["rows"] = ordered_json::array();
  std::string bad;
  std::vector<std::string> lines;
  auto push = [&](ordered_json row, bool ok) {
    lines.push_back(row["row"].get<std::string>() + ": " + (ok ? "ok" : "FAILED") + " (" +
                    row["certificate"]["verdict"].get<std::string>() + ")");
    if (!ok && bad.empty()) bad = row["row"].get<std::string>();
    j["rows"].push_back(std::move(row));
  };
  bool ok = false;
  if (table == "sn") {
    for (const SnRow& r : kSnRows) {
      ordered_json row = sn_row(r, opt, ok);
      push(std::move(row), ok);
    }
  } else if (table == "an") {
    for (const AnRow& r : kAnRows) {
      ordered_json row = an_row(r, opt, ok);
      push(std::move(row), ok);
    }
  } else if (table == "an_p1") {
    ordered_json row = family_row("a6_p5()", opt, false, ok);
    push(std::move(row), ok);
    j["closed_form_grid"] = ordered_json::array();
    for (u64 p : {7, 11, 13})
      for (long long a = 2; 2 * a <= static_cast<long long>(p) - 1; ++a) {
        if (std::gcd(a, static_cast<long long>(p) + 1) != 1) continue;
        FamilySpec s{"an_p1", {{"p", static_cast<long long>(p)}, {"a", a}}};
        FamilyInstance fi = family(s);
        bool eq = disc_in_T(fi.F) == *fi.expect.disc;
        j["closed_form_grid"].push_back({{"spec", to_string(s)}, {"disc", to_string(*fi.expect.disc, 'T')}, {"match", eq}});
        lines.push_back(to_string(s) + ": closed form " + (eq ? "matches" : "DIFFERS"));
        if (!eq && bad.empty()) bad = to_string(s);
      }
  } else if (table == "char2") {
    for (const char* s : {"a5_c2()", "a6_c2()", "a7_c2()"}) {
      ordered_json row = family_row(s, opt, true, ok);
      push(std::move(row), ok);
    }
  } else {
    fail(Errc::Parse, "unknown table '" + table + "' (expected sn, an, an_p1 or char2)");
  }
  CommandResult r = finish(std::move(j), bad, "reproduce " + table);
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  r.summary = s + r.summary;
  return r;
}

CommandResult cmd_search(const std::string& field, const std::string& target, int n, int m, const std::string& strategy,
                         const RunOptions& opt) {
  FieldPtr K = parse_field(field);
  Target t;
  if (target == "sn") t = Target::SN;
  else if (target == "an") t = Target::AN;
  else fail(Errc::Parse, "target must be sn or an");
  HStrategy hs = parse_hstrategy(strategy);
  SearchBudget b = budget_of(opt);
  TameCover tc = build_tame_cover(K, n, m, t, b);
  HResult h = h_search(tc.disc.prime, n - m, hs, b);
  Eliminated el = eliminate_infinity(tc.F, n - m, h.h);
  CertifyInput in = certify_input(tc.w, t == Target::AN ? "A" : "S", h.h);
  apply(opt, in);
  Certificate cert = certify_realization(in);

  ordered_json j;
  j["command"] = "search";
  j["field"] = K->name();
  j["target"] = target;
  j["n"] = n;
  j["m"] = m;
  j["seed"] = opt.seed;
  j["cover"] = {{"f", to_string(tc.w.f)}, {"c", to_string(tc.w.c)}, {"g", to_string(tc.g)}, {"seed", tc.seed}};
  j["cover_disc"] = {{"disc", to_string(tc.disc.disc, 'T')}, {"prime", to_string(tc.disc.prime, 'T')}, {"r", tc.disc.r}};
  if (t == Target::AN) j["square_class"] = {{"disc_square", tc.disc_square}, {"delta_square", tc.delta_square}};
  j["h"] = {{"h", to_string(h.h, 'T')}, {"strategy", hstrategy_name(h.used)}, {"detail", h.detail}};
  j["eliminated"] = {{"disc_prime", to_string(el.prime, 'T')}, {"r", el.r}, {"unit", el.unit.to_string()}};
  j["certificate"] = cert_json(cert);
  CommandResult r;
  r.status = cert.verdict == Verdict::Failed ? kExitFailed : kExitOk;
  r.json = dump(j);
  r.summary = "f = " + to_string(tc.w.f) + ", c = " + to_string(tc.w.c) + ", h = " + to_string(h.h, 'T') + "\nbranch prime " +
              to_string(el.prime, 'T') + "\n" + verdict_summary(cert) + " G = " + cert.geometric_group;
  return r;
}

CommandResult cmd_twin(const std::string& field, int deg, const std::string& b, const RunOptions& opt) {
  FieldPtr K = parse_field(field);
  FqElem bb = FqElem::parse(K, b);
  Poly h = twin_irreducible_search(K, deg, bb, budget_of(opt));
  bool ok = is_irreducible(monic(h)) && is_irreducible(monic(h - Poly::constant(bb)));
  ordered_json j = {{"command", "twin"}, {"field", K->name()}, {"deg", deg}, {"b", bb.to_string()},
                    {"seed", opt.seed}, {"h", to_string(h, 'T')}, {"verified", ok}};
  CommandResult r;
  r.status = ok ? kExitOk : kExitFailed;
  r.json = dump(j);
  r.summary = "h = " + to_string(h, 'T') + (ok ? "" : " (verification FAILED)");
  return r;
}

CommandResult cmd_hsearch(const std::string& field, const std::string& F, int e, const std::string& strategy, const RunOptions& opt) {
  FieldPtr K = parse_field(field);
  Poly P = parse_poly(K, F, 'T');
  HResult h = h_search(P, e, parse_hstrategy(strategy), budget_of(opt));
  bool ok = h.h.deg() % e == 0 && is_irreducible(monic(compose(P, h.h)));
  ordered_json j = {{"command", "hsearch"}, {"field", K->name()},          {"F", to_string(P, 'T')},
                    {"e", e},               {"requested", strategy},       {"strategy", hstrategy_name(h.used)},
                    {"seed", opt.seed},     {"h", to_string(h.h, 'T')},    {"detail", h.detail},
                    {"verified", ok}};
  CommandResult r;
  r.status = ok ? kExitOk : kExitFailed;
  r.json = dump(j);
  r.summary = "h = " + to_string(h.h, 'T') + " via " + hstrategy_name(h.used);
  return r;
}

CommandResult cmd_morse_count(const std::string& field, int n, const RunOptions& opt) {
  FieldPtr K = parse_field(field);
  MorseCount mc = count_morse_irred_disc(K, n, opt.jobs);
  ordered_json j = {{"command", "morse-count"}, {"field", K->name()},   {"n", n},
                    {"count", mc.count},        {"total", mc.total},    {"derivative_irreducible", mc.derivative_irreducible},
                    {"main_term", mc.main_term}, {"ratio", mc.ratio}};
  CommandResult r;
  r.json = dump(j);
  r.summary = "count " + std::to_string(mc.count) + " of " + std::to_string(mc.total) + ", ratio to q^n/(n-1) = " + std::to_string(mc.ratio);
  return r;
}

CommandResult cmd_frob(const std::string& field, const std::string& F, const RunOptions& opt) {
  FieldPtr K = parse_field(field);
  BiPoly G = parse_bipoly(K, F);
  CycleHistogram h = frobenius_sample(G, opt.max_k, opt.samples, opt.seed, opt.jobs);
  ordered_json hist = ordered_json::array();
  std::string s;
  for (const auto& [t, c] : h.counts) {
    hist.push_back({{"type", t}, {"count", c}});
    std::string ts;
    for (size_t i = 0; i < t.size(); ++i) ts += (i ? "," : "") + std::to_string(t[i]);
    s += ts + ": " + std::to_string(c) + "\n";
  }
  ordered_json by_k = ordered_json::object();
  for (const auto& [k, m] : h.by_k) {
    ordered_json a = ordered_json::array();
    for (const auto& [t, c] : m) a.push_back({{"type", t}, {"count", c}});
    by_k[std::to_string(k)] = a;
  }
  ordered_json j = {{"command", "frob"}, {"field", K->name()}, {"F", to_string(G)}, {"max_k", h.max_k}, {"samples", h.samples},
                    {"seed", opt.seed},  {"histogram", hist},  {"by_k", by_k},       {"retries", h.retries}};
  CommandResult r;
  r.json = dump(j);
  r.summary = s + std::to_string(h.samples) + " samples";
  return r;
}

CommandResult cmd_group(const std::string& gens, u64 p) {
  if (!is_prime(p)) fail(Errc::NotPrime, "p must be prime");
  PermGroup G = parse_group(gens);
  PermGroup N = p_core(G, p);
  AbelianInvariants ab = abelianized_quotient(G, N);
  int rhs = conjecture_rhs(G, p);
  CyclicByPWitness w = verify_gen_by_cyclic_by_p(G, p);
  ordered_json wq = ordered_json::array();
  for (size_t i = 0; i < w.x.size(); ++i) wq.push_back({{"x", to_string(w.x[i])}, {"order", w.Q[i].order()}});
  ordered_json j = {{"command", "group"},
                    {"generators", gens},
                    {"p", p},
                    {"degree", G.degree()},
                    {"order", G.order()},
                    {"transitive", is_transitive(G)},
                    {"primitive", is_transitive(G) && is_primitive(G)},
                    {"p_core_order", N.order()},
                    {"quotient_abelian_invariants", ab.factors},
                    {"rhs", rhs},
                    {"witness", {{"sylow_order", w.sylow.order()}, {"subgroups", wq}}}};
  CommandResult r;
  r.json = dump(j);
  r.summary = "|G| = " + std::to_string(G.order()) + ", |p(G)| = " + std::to_string(N.order()) + ", rhs = " + std::to_string(rhs);
  return r;
}

CommandResult cmd_family(const std::string& spec, const RunOptions& opt) {
  FamilyInstance fi = family(parse_family(spec));
  CertifyInput in = certify_input(fi);
  apply(opt, in);
  Certificate cert = certify_realization(in);
  ordered_json j = {{"command", "family"}, {"spec", to_string(fi.spec)}, {"field", fi.field->name()}, {"F", to_string(fi.F)},
                    {"notes", fi.expect.notes}, {"certificate", cert_json(cert)}};
  CommandResult r;
  r.status = cert.verdict == Verdict::Failed ? kExitFailed : kExitOk;
  r.json = dump(j);
  r.summary = to_string(fi.spec) + ": " + verdict_summary(cert) + " G = " + cert.geometric_group + ", A = " + cert.arithmetic_group;
  for (const auto& f : cert.failures) r.summary += "\n  " + f;
  return r;
}

CommandResult cmd_replay(const std::string& certificate_json) {
  // Accept a bare certificate or a command output that embeds one.
  std::string text = certificate_json;
  ordered_json doc = ordered_json::parse(certificate_json, nullptr, false);
  if (doc.is_object() && doc.contains("certificate")) text = doc["certificate"].dump(2);
  Replay rp = replay_certificate(text);
  ordered_json j = {{"command", "replay"}, {"identical", rp.identical}, {"verdict", verdict_name(rp.cert.verdict)}};
  CommandResult r;
  r.status = rp.identical ? kExitOk : kExitFailed;
  r.json = dump(j);
  r.summary = std::string(rp.identical ? "identical" : "DIFFERS") + ", verdict " + verdict_name(rp.cert.verdict);
  return r;
}

}  // namespace ffgal
