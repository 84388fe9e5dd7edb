#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffgal {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

enum class Errc {
  NotPrime,
  FieldMismatch,
  OutOfRange,
  Parse,
  DivisionByZero,
  ZeroPolynomial,
  DerivativeVanishes,
  InseparableInX,
  Precondition,
  NotSquarefree,
  NotCoprime,
  NoSolution,
  NoSquareRoot,
  Unsupported,
  HypothesisViolated,
  BudgetExhausted,
  StrategyInapplicable,
  DegreeNotDivisible,
  DiscNotPrimePower,
  TooLarge,
  InvalidParams,
  SearchFailed,
  VerificationFailed,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// splitmix64: stateless mixing used to derive per-index RNG streams from a seed.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline u64 derive_seed(u64 seed, u64 index) { return mix64(seed ^ mix64(index + 0x5851f42d4c957f2dULL)); }

}  // namespace ffgal
