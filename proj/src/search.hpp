#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "ffgal/poly.hpp"

namespace ffgal::detail {

inline Coords random_coords(const Field& F, std::mt19937_64& rng) {
  Coords c(F.nu());
  for (auto& v : c) v = rng() % F.p();
  return c;
}

inline FqElem random_element(const FieldPtr& F, std::mt19937_64& rng) { return FqElem(F, random_coords(*F, rng)); }

inline FqElem random_nonzero(const FieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    FqElem a = random_element(F, rng);
    if (!a.is_zero()) return a;
  }
}

// Uniform polynomial of degree exactly d (monic when asked).
inline Poly random_poly(const FieldPtr& F, int d, std::mt19937_64& rng, bool monic) {
  Poly r(F);
  r.resize_terms(d + 1);
  for (int i = 0; i < d; ++i) r.set_coeff(i, random_coords(*F, rng).data());
  r.set_coeff(d, monic ? FqElem::one(F) : random_nonzero(F, rng));
  r.normalize();
  return r;
}

// Monic degree-d polynomial whose lower coefficients are the base-q digits of k, constant term first.
inline Poly poly_from_index(const FieldPtr& F, int d, u64 k) {
  Poly r(F);
  r.resize_terms(d + 1);
  const u64 q = F->order_u64();
  for (int i = 0; i < d; ++i) {
    r.set_coeff(i, F->element_at(q ? k % q : k).data());
    if (q) k /= q;
  }
  r.set_coeff(d, F->one_coords().data());
  r.normalize();
  return r;
}

// Least index in [0, limit) satisfying pred, evaluated by `jobs` workers over interleaved blocks.
// The answer does not depend on jobs as long as pred is a pure function of the index.
template <class Pred>
std::optional<u64> least_index(u64 limit, unsigned jobs, Pred pred) {
  constexpr u64 kBlock = 16;
  if (jobs <= 1) {
    for (u64 i = 0; i < limit; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<u64> next{0};
  std::atomic<u64> best{std::numeric_limits<u64>::max()};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    try {
      for (;;) {
        u64 start = next.fetch_add(kBlock);
        if (start >= limit || start > best.load()) return;
        u64 end = std::min(limit, start + kBlock);
        for (u64 i = start; i < end && i < best.load(); ++i) {
          if (pred(i)) {
            u64 cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  u64 b = best.load();
  if (b == std::numeric_limits<u64>::max()) return std::nullopt;
  return b;
}

// Runs body(i) for i in [0, n) across jobs workers; body must only touch slot i of shared output.
template <class Body>
void parallel_for(u64 n, unsigned jobs, Body body) {
  if (jobs <= 1 || n < 2) {
    for (u64 i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<u64> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    try {
      for (u64 i; (i = next.fetch_add(1)) < n;) body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::min<u64>(jobs, n); ++j) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ffgal::detail
