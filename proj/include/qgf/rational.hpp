#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgf {

// Exact rational arithmetic for gate-count bookkeeping. All quantities in this
// project are polynomial in the register width, so int64 components with eager
// reduction never come close to overflow.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) { reduce(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "5", "13/2". Components are always reduced, denominator positive.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // "5/1", "13/2"; fixed shape for CSV cells.
  std::string str_num_den() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend Rat operator-(Rat a) { return Rat(-a.num_, a.den_); }

  Rat& operator+=(Rat b) { return *this = *this + b; }
  Rat& operator-=(Rat b) { return *this = *this - b; }
  Rat& operator*=(Rat b) { return *this = *this * b; }
  Rat& operator/=(Rat b) { return *this = *this / b; }

  friend bool operator==(Rat a, Rat b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }
  friend bool operator<(Rat a, Rat b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(Rat a, Rat b) { return a.num_ * b.den_ <= b.num_ * a.den_; }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator>=(Rat a, Rat b) { return b <= a; }

  static Rat abs(Rat a) { return a.num_ < 0 ? -a : a; }

 private:
  void reduce() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace qgf
