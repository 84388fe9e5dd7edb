#include "ffgal.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "ffgal/commands.hpp"

struct ffgal_ctx {
  ffgal::RunOptions opt;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_kind;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ffgal_status run(const ffgal_ctx* ctx, char** json, char** summary,
                 const std::function<ffgal::CommandResult(const ffgal::RunOptions&)>& body) {
  g_error.clear();
  g_kind.clear();
  if (json) *json = nullptr;
  if (summary) *summary = nullptr;
  try {
    ffgal::RunOptions opt = ctx ? ctx->opt : ffgal::RunOptions{};
    ffgal::CommandResult r = body(opt);
    if (json) *json = dup(r.json);
    if (summary) *summary = dup(r.summary);
    if (r.status != ffgal::kExitOk) {
      g_error = r.summary;
      g_kind = "VerificationFailed";
    }
    return static_cast<ffgal_status>(r.status);
  } catch (const ffgal::Error& e) {
    g_error = e.what();
    g_kind = ffgal::errc_name(e.code());
    return static_cast<ffgal_status>(ffgal::exit_code_for(e.code()));
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    g_kind = "TooLarge";
    return FFGAL_E_BUDGET;
  } catch (const std::exception& e) {
    g_error = e.what();
    g_kind = "Internal";
    return FFGAL_E_FAILED;
  }
}

std::string str(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

ffgal_options ffgal_default_options(void) {
  ffgal::RunOptions d;
  return ffgal_options{d.seed, d.budget, d.jobs, d.samples, d.max_k};
}

ffgal_status ffgal_ctx_new(const ffgal_options* opts, ffgal_ctx** out) {
  g_error.clear();
  g_kind.clear();
  if (!out) {
    g_error = "null output handle";
    return FFGAL_E_USAGE;
  }
  *out = nullptr;
  ffgal_options o = opts ? *opts : ffgal_default_options();
  if (o.jobs == 0 || o.max_k < 1 || o.samples == 0 || o.budget == 0) {
    g_error = "jobs, max_k, samples and budget must be positive";
    g_kind = "InvalidParams";
    return FFGAL_E_USAGE;
  }
  auto* c = new (std::nothrow) ffgal_ctx;
  if (!c) return FFGAL_E_BUDGET;
  c->opt = ffgal::RunOptions{o.seed, o.budget, o.jobs, o.samples, o.max_k};
  *out = c;
  return FFGAL_OK;
}

void ffgal_ctx_free(ffgal_ctx* ctx) { delete ctx; }

const char* ffgal_last_error(void) { return g_error.c_str(); }
const char* ffgal_last_error_kind(void) { return g_kind.c_str(); }

ffgal_status ffgal_reproduce(const ffgal_ctx* ctx, const char* table, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) { return ffgal::cmd_reproduce(str(table), o); });
}

ffgal_status ffgal_search(const ffgal_ctx* ctx, const char* field, const char* target, int n, int m, const char* strategy,
                          char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) {
    return ffgal::cmd_search(str(field), str(target), n, m, strategy ? strategy : "auto", o);
  });
}

ffgal_status ffgal_twin(const ffgal_ctx* ctx, const char* field, int deg, const char* b, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) { return ffgal::cmd_twin(str(field), deg, str(b), o); });
}

ffgal_status ffgal_hsearch(const ffgal_ctx* ctx, const char* field, const char* poly, int e, const char* strategy, char** json,
                           char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) {
    return ffgal::cmd_hsearch(str(field), str(poly), e, strategy ? strategy : "auto", o);
  });
}

ffgal_status ffgal_morse_count(const ffgal_ctx* ctx, const char* field, int n, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) { return ffgal::cmd_morse_count(str(field), n, o); });
}

ffgal_status ffgal_frob(const ffgal_ctx* ctx, const char* field, const char* poly, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) { return ffgal::cmd_frob(str(field), str(poly), o); });
}

ffgal_status ffgal_group(const ffgal_ctx* ctx, const char* gens, uint64_t p, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions&) { return ffgal::cmd_group(str(gens), p); });
}

ffgal_status ffgal_family(const ffgal_ctx* ctx, const char* spec, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions& o) { return ffgal::cmd_family(str(spec), o); });
}

ffgal_status ffgal_replay(const ffgal_ctx* ctx, const char* certificate_json, char** json, char** summary) {
  return run(ctx, json, summary, [&](const ffgal::RunOptions&) { return ffgal::cmd_replay(str(certificate_json)); });
}

void ffgal_string_free(char* s) { std::free(s); }

}  // extern "C"
