#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace covertree {

using NodeId = std::int32_t;
using Value = std::int64_t;

/// Exact scalar extended with symbolic infinities.
///
/// Arc costs and distances are either finite integers or -inf (an arc that
/// makes every node behind it "always covered").  +inf appears only as a
/// derived sort key (rho - d with d = -inf).  The infinities are sentinels,
/// never large constants, so offset arithmetic cannot overflow through them.
class ExtScalar {
 public:
  constexpr ExtScalar() : kind_(Kind::Finite), value_(0) {}

  static constexpr ExtScalar finite(Value v) { return ExtScalar(Kind::Finite, v); }
  static constexpr ExtScalar neg_inf() { return ExtScalar(Kind::NegInf, 0); }
  static constexpr ExtScalar pos_inf() { return ExtScalar(Kind::PosInf, 0); }

  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  constexpr Value finite_value() const {
    if (!is_finite()) throw std::logic_error("ExtScalar: finite_value() on an infinity");
    return value_;
  }

  ExtScalar operator+(ExtScalar o) const {
    if (is_finite() && o.is_finite()) {
      Value sum;
      if (__builtin_add_overflow(value_, o.value_, &sum))
        throw std::overflow_error("ExtScalar: finite addition overflow");
      return finite(sum);
    }
    if ((is_neg_inf() && o.is_pos_inf()) || (is_pos_inf() && o.is_neg_inf()))
      throw std::logic_error("ExtScalar: -inf + +inf is undefined");
    return is_finite() ? o : *this;
  }

  ExtScalar operator-() const {
    switch (kind_) {
      case Kind::NegInf: return pos_inf();
      case Kind::PosInf: return neg_inf();
      default: return finite(-value_);
    }
  }

  ExtScalar operator-(ExtScalar o) const { return *this + (-o); }

  // Total order: -inf < any finite < +inf.
  friend constexpr std::strong_ordering operator<=>(ExtScalar a, ExtScalar b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(ExtScalar a, ExtScalar b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  enum class Kind : std::int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
  constexpr ExtScalar(Kind k, Value v) : kind_(k), value_(v) {}

  Kind kind_;
  Value value_;
};

}  // namespace covertree
