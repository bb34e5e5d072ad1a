#pragma once
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sug {

// Exact rational over int64 with __int128 intermediates. Throws on overflow
// rather than silently losing exactness; the quantities handled here (edge
// weights, stationary measures, satisfied fractions) stay far below the bound.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t n) : num_(n), den_(1) {}
  Rational(int64_t n, int64_t d) { assign(n, d); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational: overflow");
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }

  Rational operator+(const Rational& o) const {
    return from_i128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return from_i128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return from_i128(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational: divide by zero");
    return from_i128(i128(num_) * o.den_, i128(den_) * o.num_);
  }
  Rational operator-() const { return from_i128(-i128(num_), den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
  bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
  }

  // Exact decimal when the denominator is 2^a 5^b, "p/q" otherwise.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int digits = twos > fives ? twos : fives;
    __int128 scaled = i128(num_);
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= den_;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string frac;
    for (int i = 0; i < digits; ++i) {
      frac.push_back(static_cast<char>('0' + static_cast<int>(scaled % 10)));
      scaled /= 10;
    }
    std::string whole;
    if (scaled == 0) whole = "0";
    while (scaled > 0) {
      whole.push_back(static_cast<char>('0' + static_cast<int>(scaled % 10)));
      scaled /= 10;
    }
    std::string out = neg ? "-" : "";
    for (auto it = whole.rbegin(); it != whole.rend(); ++it) out.push_back(*it);
    out.push_back('.');
    for (auto it = frac.rbegin(); it != frac.rend(); ++it) out.push_back(*it);
    return out;
  }

  // Accepts integers, exact decimals ("0.75") and fractions ("3/4").
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty token");
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
      int64_t n = parse_int(s.substr(0, slash));
      int64_t d = parse_int(s.substr(slash + 1));
      return Rational(n, d);
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s));
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    __int128 n = 0, d = 1;
    for (char c : whole + frac) {
      if (c < '0' || c > '9') throw std::invalid_argument("rational: bad token " + s);
      n = n * 10 + (c - '0');
      if (n > i128(INT64_MAX) * 1000000) throw std::overflow_error("rational: parse overflow");
    }
    for (size_t i = 0; i < frac.size(); ++i) d *= 10;
    return from_i128(neg ? -n : n, d);
  }

 private:
  using i128 = __int128;
  int64_t num_, den_;

  void assign(int64_t n, int64_t d) {
    Rational r = from_i128(n, d);
    num_ = r.num_;
    den_ = r.den_;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  static int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty integer");
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("rational: bad integer " + s);
    return v;
  }
};

}  // namespace sug
