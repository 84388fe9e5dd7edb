#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ffgal.h"

namespace {

struct Common {
  uint64_t q = 0, p = 0;
  unsigned nu = 1;
  uint64_t seed = 1, budget = uint64_t{1} << 20, samples = 1000;
  unsigned jobs = 1;
  int max_k = 4;
  std::string out;
};

// "p^nu" for the field order q, or from --p/--nu.
std::string field_text(const Common& c) {
  if (c.q) {
    uint64_t q = c.q, p = 0;
    for (uint64_t d = 2; d * d <= q && !p; ++d)
      if (q % d == 0) p = d;
    if (!p) p = q;
    unsigned nu = 0;
    while (q % p == 0) {
      q /= p;
      ++nu;
    }
    if (q != 1 || c.q < 2) throw CLI::ValidationError("--q", "must be a prime power");
    return std::to_string(p) + "^" + std::to_string(nu);
  }
  if (!c.p) throw CLI::RequiredError("--q or --p");
  return std::to_string(c.p) + "^" + std::to_string(c.nu);
}

int finish(ffgal_status st, char* json, char* summary, const Common& c) {
  if (summary) std::cout << summary << "\n";
  if (json && !c.out.empty()) {
    if (c.out == "-") {
      std::cout << json << "\n";
    } else {
      std::ofstream f(c.out, std::ios::binary);
      f << json << "\n";
      if (!f) {
        std::cerr << "error: cannot write " << c.out << "\n";
        st = FFGAL_E_USAGE;
      }
    }
  }
  if (!json && st != FFGAL_OK) std::cerr << "error (" << ffgal_last_error_kind() << "): " << ffgal_last_error() << "\n";
  ffgal_string_free(json);
  ffgal_string_free(summary);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois realizations over F_q(T): constructions, certificates and reproduction of table rows"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool field) {
    if (field) {
      s->add_option("--q", c.q, "field order (prime power)");
      s->add_option("--p", c.p, "characteristic");
      s->add_option("--nu", c.nu, "degree over the prime field");
    }
    s->add_option("--seed", c.seed, "RNG seed");
    s->add_option("--budget", c.budget, "candidate cap for searches");
    s->add_option("--samples", c.samples, "Frobenius samples");
    s->add_option("--max-k", c.max_k, "largest extension degree for samples");
    s->add_option("--jobs", c.jobs, "worker threads");
    s->add_option("--out", c.out, "write JSON here ('-' for stdout)");
  };

  std::string table, target, strategy = "auto", b, poly, gens, fam, in_path;
  int n = 0, m = 0, e = 0, deg = 0;

  auto* rep = app.add_subcommand("reproduce", "reproduce a table of computer-verified rows (sn, an, an_p1, char2)");
  rep->add_option("--table", table, "sn, an, an_p1 or char2")->required();
  common(rep, false);

  auto* search = app.add_subcommand("search", "tame cover, h search, elimination of infinity, certificate");
  search->add_option("--target", target, "sn or an")->required();
  search->add_option("--n", n)->required();
  search->add_option("--m", m)->required();
  search->add_option("--strategy", strategy, "h search strategy: auto, case3, case4, case5, brute");
  common(search, true);

  auto* twin = app.add_subcommand("twin", "h of given degree with h and h - b irreducible");
  twin->add_option("--deg", deg)->required();
  twin->add_option("--b", b)->required();
  common(twin, true);

  auto* hs = app.add_subcommand("hsearch", "h with e | deg h and F(h) irreducible");
  hs->add_option("--poly", poly, "irreducible F in T")->required();
  hs->add_option("--e", e)->required();
  hs->add_option("--strategy", strategy);
  common(hs, true);

  auto* morse = app.add_subcommand("morse-count", "count Morse polynomials with irreducible derivative");
  morse->add_option("--n", n)->required();
  common(morse, true);

  auto* frob = app.add_subcommand("frob", "Frobenius cycle-type histogram of F(T, X)");
  frob->add_option("--poly", poly, "F in X and T, monic in X")->required();
  common(frob, true);

  auto* group = app.add_subcommand("group", "p-core, abelian quotient and generation witness of a permutation group");
  group->add_option("--gens", gens, "generators '(1 2);(1 2 3)' or a name like S5")->required();
  group->add_option("--p", c.p)->required();
  group->add_option("--out", c.out);

  auto* family = app.add_subcommand("family", "build and certify a named family, e.g. an_p1(p=7,a=3)");
  family->add_option("--family", fam)->required();
  common(family, false);

  auto* replay = app.add_subcommand("replay", "re-run a certificate JSON and compare");
  replay->add_option("file", in_path)->required()->check(CLI::ExistingFile);
  replay->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 1;
  }

  try {
    ffgal_options o = ffgal_default_options();
    o.seed = c.seed;
    o.budget = c.budget;
    o.jobs = c.jobs;
    o.samples = c.samples;
    o.max_k = c.max_k;
    ffgal_ctx* ctx = nullptr;
    if (ffgal_ctx_new(&o, &ctx) != FFGAL_OK) {
      std::cerr << "error: " << ffgal_last_error() << "\n";
      return 1;
    }
    char* json = nullptr;
    char* summary = nullptr;
    ffgal_status st = FFGAL_E_USAGE;
    if (*rep) st = ffgal_reproduce(ctx, table.c_str(), &json, &summary);
    else if (*search) st = ffgal_search(ctx, field_text(c).c_str(), target.c_str(), n, m, strategy.c_str(), &json, &summary);
    else if (*twin) st = ffgal_twin(ctx, field_text(c).c_str(), deg, b.c_str(), &json, &summary);
    else if (*hs) st = ffgal_hsearch(ctx, field_text(c).c_str(), poly.c_str(), e, strategy.c_str(), &json, &summary);
    else if (*morse) st = ffgal_morse_count(ctx, field_text(c).c_str(), n, &json, &summary);
    else if (*frob) st = ffgal_frob(ctx, field_text(c).c_str(), poly.c_str(), &json, &summary);
    else if (*group) st = ffgal_group(ctx, gens.c_str(), c.p, &json, &summary);
    else if (*family) st = ffgal_family(ctx, fam.c_str(), &json, &summary);
    else if (*replay) {
      std::ifstream f(in_path, std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      std::string text = ss.str();
      st = ffgal_replay(ctx, text.c_str(), &json, &summary);
    }
    ffgal_ctx_free(ctx);
    return finish(st, json, summary, c);
  } catch (const CLI::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
