#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobhh {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Base ring of a computation.  Fp carries its prime.
struct Ring {
  enum Kind { Z, Q, Fp } kind = Z;
  std::int64_t p = 0;

  static Ring z() { return Ring{Z, 0}; }
  static Ring q() { return Ring{Q, 0}; }
  static Ring fp(std::int64_t p) { return Ring{Fp, p}; }

  bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
  std::string str() const {
    switch (kind) {
      case Z: return "Z";
      case Q: return "Q";
      default: return "Fp:" + std::to_string(p);
    }
  }
};

inline Ring parse_ring(const std::string& s) {
  if (s == "Z") return Ring::z();
  if (s == "Q") return Ring::q();
  if (s.rfind("Fp:", 0) == 0) {
    std::int64_t p = std::stoll(s.substr(3));
    if (p < 2) throw std::invalid_argument("bad prime in ring spec: " + s);
    return Ring::fp(p);
  }
  throw std::invalid_argument("bad ring spec: " + s);
}

// Sparse vector with deterministic (ordered) iteration.
using SparseVec = std::map<int, Int>;

inline void sv_add(SparseVec& dst, int idx, const Int& c) {
  if (c == 0) return;
  auto it = dst.find(idx);
  if (it == dst.end()) {
    dst.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

inline void sv_axpy(SparseVec& dst, const Int& c, const SparseVec& src) {
  if (c == 0) return;
  for (const auto& [i, v] : src) sv_add(dst, i, c * v);
}

inline SparseVec sv_scale(const SparseVec& v, const Int& c) {
  SparseVec r;
  if (c == 0) return r;
  for (const auto& [i, x] : v) r.emplace(i, c * x);
  return r;
}

struct ComputeError : std::runtime_error {
  std::string code;
  ComputeError(std::string code_, const std::string& what)
      : std::runtime_error(code_ + ": " + what), code(std::move(code_)) {}
};

#define FROBHH_ERR(code)                                        \
  struct code : ComputeError {                                  \
    explicit code(const std::string& w) : ComputeError(#code, w) {} \
  }

FROBHH_ERR(IllegalType);
FROBHH_ERR(RecurrenceInconsistent);
FROBHH_ERR(NotAComplex);
FROBHH_ERR(NotSaturated);
FROBHH_ERR(HilbertMismatch);
FROBHH_ERR(IrregularWeight);
FROBHH_ERR(DimensionBlowup);
FROBHH_ERR(NotAGroup);
FROBHH_ERR(PairingDegenerate);
FROBHH_ERR(TraceMismatch);
FROBHH_ERR(DegreeUnbounded);
FROBHH_ERR(ExactnessFailed);
FROBHH_ERR(SpliceMismatch);
FROBHH_ERR(WindowTooLarge);
FROBHH_ERR(NotExact);
FROBHH_ERR(LiftFailed);
FROBHH_ERR(SlotUncovered);
FROBHH_ERR(ComparisonMissing);
FROBHH_ERR(NotCY);
FROBHH_ERR(NotInvertible);
FROBHH_ERR(UnknownSuite);
FROBHH_ERR(SpecError);

#undef FROBHH_ERR

}  // namespace frobhh
