#pragma once

// Exact extended rationals: arbitrary-precision rationals plus the two
// sentinels -inf / +inf of the max-plus and min-plus semifields.
// Mixed sums (-inf) + (+inf) are a hard error, never a convention.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambitrop {

using Rat = mpq_class;

enum class Errc {
  dimension_mismatch,
  undefined_sum,
  positive_circuit,
  empty_polyhedron,
  improper_matrix,
  not_deterministic,
  size_blowup,
  empty_input,
  non_convergence,
  pairwise_condition_violated,
  horizon_too_large,
  not_an_eigenvector,
  size_cap,
  not_homogeneous,
  not_a_lattice,
  not_a_fixed_point,
  unsupported_dimension,
  parse_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::undefined_sum: return "UndefinedSum";
    case Errc::positive_circuit: return "PositiveCircuit";
    case Errc::empty_polyhedron: return "EmptyPolyhedron";
    case Errc::improper_matrix: return "ImproperMatrix";
    case Errc::not_deterministic: return "NotDeterministic";
    case Errc::size_blowup: return "SizeBlowup";
    case Errc::empty_input: return "EmptyInput";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::pairwise_condition_violated: return "PairwiseConditionViolated";
    case Errc::horizon_too_large: return "HorizonTooLarge";
    case Errc::not_an_eigenvector: return "NotAnEigenvector";
    case Errc::size_cap: return "SizeCap";
    case Errc::not_homogeneous: return "NotHomogeneous";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::not_a_fixed_point: return "NotAFixedPoint";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class TropError : public std::runtime_error {
 public:
  TropError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  TropError(Errc code, const std::string& what, std::vector<int> witness)
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }
  // Witness payload; for PositiveCircuit the 0-based node cycle c0,...,c{k-1}
  // (arc c_i -> c_{i+1 mod k}).
  const std::vector<int>& witness() const { return witness_; }

 private:
  Errc code_;
  std::vector<int> witness_;
};

class ExtScalar {
  enum class Kind : std::int8_t { neg_inf = -1, finite = 0, pos_inf = 1 };

 public:
  ExtScalar() : q_(0) {}
  ExtScalar(const Rat& q) : q_(q) { q_.canonicalize(); }
  ExtScalar(long v) : q_(v) {}
  ExtScalar(int v) : q_(v) {}
  ExtScalar(long num, long den) : q_(num, den) {
    if (den == 0) throw TropError(Errc::parse_error, "zero denominator");
    q_.canonicalize();
  }

  static ExtScalar neg_inf() { return ExtScalar(Kind::neg_inf); }
  static ExtScalar pos_inf() { return ExtScalar(Kind::pos_inf); }
  static ExtScalar zero() { return ExtScalar(); }

  bool is_finite() const { return k_ == Kind::finite; }
  bool is_neg_inf() const { return k_ == Kind::neg_inf; }
  bool is_pos_inf() const { return k_ == Kind::pos_inf; }

  const Rat& rat() const {
    if (!is_finite()) throw TropError(Errc::undefined_sum, "rat() on infinite scalar");
    return q_;
  }

  friend ExtScalar operator+(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_finite() && b.is_finite()) {
      ExtScalar r;
      r.q_ = a.q_ + b.q_;
      return r;
    }
    if (a.is_neg_inf() && b.is_pos_inf())
      throw TropError(Errc::undefined_sum, "(-inf) + (+inf) is undefined");
    if (a.is_pos_inf() && b.is_neg_inf())
      throw TropError(Errc::undefined_sum, "(+inf) + (-inf) is undefined");
    return a.is_finite() ? b : a;
  }

  friend ExtScalar operator-(const ExtScalar& a) {
    if (a.is_neg_inf()) return pos_inf();
    if (a.is_pos_inf()) return neg_inf();
    ExtScalar r;
    r.q_ = -a.q_;
    return r;
  }

  friend ExtScalar operator-(const ExtScalar& a, const ExtScalar& b) { return a + (-b); }

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    if (a.k_ != b.k_) return false;
    return !a.is_finite() || a.q_ == b.q_;
  }
  friend bool operator!=(const ExtScalar& a, const ExtScalar& b) { return !(a == b); }
  friend bool operator<(const ExtScalar& a, const ExtScalar& b) {
    if (a.k_ != b.k_) return static_cast<int>(a.k_) < static_cast<int>(b.k_);
    return a.is_finite() && a.q_ < b.q_;
  }
  friend bool operator<=(const ExtScalar& a, const ExtScalar& b) { return a < b || a == b; }
  friend bool operator>(const ExtScalar& a, const ExtScalar& b) { return b < a; }
  friend bool operator>=(const ExtScalar& a, const ExtScalar& b) { return b <= a; }

  std::string str() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "+inf";
    return q_.get_str();
  }

 private:
  explicit ExtScalar(Kind k) : k_(k), q_(0) {}
  Kind k_ = Kind::finite;
  Rat q_;
};

inline ExtScalar trop_max(const ExtScalar& a, const ExtScalar& b) { return a < b ? b : a; }
inline ExtScalar trop_min(const ExtScalar& a, const ExtScalar& b) { return b < a ? b : a; }

inline Rat rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

// Parses "p/q", "p", decimal strings like "-1.25", and the sentinels.
inline ExtScalar parse_scalar(const std::string& s) {
  if (s == "-inf") return ExtScalar::neg_inf();
  if (s == "+inf" || s == "inf") return ExtScalar::pos_inf();
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
      throw TropError(Errc::parse_error, "bad decimal literal: " + s);
    try {
      Rat num(digits, 10);
      Rat den(1);
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      Rat q = num / den;
      q.canonicalize();
      return ExtScalar(q);
    } catch (const std::invalid_argument&) {
      throw TropError(Errc::parse_error, "bad decimal literal: " + s);
    }
  }
  try {
    Rat q(s, 10);
    if (sgn(q.get_den()) == 0)
      throw TropError(Errc::parse_error, "zero denominator: " + s);
    q.canonicalize();
    return ExtScalar(q);
  } catch (const std::invalid_argument&) {
    throw TropError(Errc::parse_error, "bad rational literal: " + s);
  }
}

}  // namespace ambitrop
