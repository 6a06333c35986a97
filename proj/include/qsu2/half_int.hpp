#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qsu2 {

/// A half-integer stored as twice its value. Used for levels l and weight
/// indices i, j in {-l, ..., l}.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int value) : twice_(2 * value) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Parses "3/2", "1", "-1/2", "0.5".
  static HalfInt parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        int num = std::stoi(s.substr(0, slash));
        int den = std::stoi(s.substr(slash + 1));
        if (den == 1) return HalfInt(num);
        if (den == 2) return from_twice(num);
        throw std::invalid_argument("not a half-integer: " + s);
      }
      if (s.find('.') != std::string::npos) {
        double v = std::stod(s);
        double tw = 2.0 * v;
        int t = static_cast<int>(tw >= 0 ? tw + 0.5 : tw - 0.5);
        if (std::abs(tw - t) > 1e-9) throw std::invalid_argument("not a half-integer: " + s);
        return from_twice(t);
      }
      return HalfInt(std::stoi(s));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("not a half-integer: " + s);
    }
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return twice_ / 2.0; }

  /// Only valid for integral values.
  constexpr int as_int() const { return twice_ / 2; }

  /// 2l + 1, the dimension of the level-l block.
  constexpr int dim() const { return twice_ + 1; }

  std::string str() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

/// Position of weight index j inside a level-l block (0 .. 2l).
constexpr int slot(HalfInt l, HalfInt j) { return (j.twice() + l.twice()) / 2; }

/// Weight index of block position k at level l.
constexpr HalfInt weight(HalfInt l, int k) { return HalfInt::from_twice(2 * k - l.twice()); }

constexpr bool in_range(HalfInt l, HalfInt j) {
  return j.twice() >= -l.twice() && j.twice() <= l.twice() && (j.twice() + l.twice()) % 2 == 0;
}

}  // namespace qsu2
